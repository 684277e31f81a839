#include "progcover/cover.hpp"

#include "progcover/errors.hpp"
#include "progcover/factor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace progcover {

const char* to_string(CoverMode mode) { return mode == CoverMode::ap ? "ap" : "gp"; }

namespace {

using Mask = std::uint64_t;

Mask bit(std::size_t i) { return Mask{1} << i; }

std::vector<std::size_t> members_of(Mask mask) {
    std::vector<std::size_t> out;
    for (; mask; mask &= mask - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    return out;
}

void require_gp_element(const FieldElement& x) {
    const auto value = x.as_rational();
    if (!value) {
        throw domain_error("GP covers are supported only for rational elements, got " + to_string(x));
    }
    if (*value == 0) {
        throw domain_error("0 lies in no geometric progression");
    }
    if (*value < 0) {
        throw domain_error("geometric progressions contain only positive numbers, got " + to_string(*value));
    }
}

} // namespace

// ---------------------------------------------------------------- instance

CoverInstance::CoverInstance(RootDescriptor descriptor, CoverMode mode, std::vector<FieldElement> elements)
    : descriptor_(std::move(descriptor)), mode_(mode) {
    elements_.reserve(elements.size());
    for (auto& x : elements) {
        elements_.push_back(lift(x, descriptor_));
    }
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (mode_ == CoverMode::ap && sign(elements_[i]) < 0) {
            throw domain_error("AP-mode elements must be nonnegative, got " + to_string(elements_[i]));
        }
        if (mode_ == CoverMode::gp) require_gp_element(elements_[i]);
        for (std::size_t j = 0; j < i; ++j) {
            if (elements_[i] == elements_[j]) {
                throw usage_error("duplicate element " + to_string(elements_[i]) + " at positions " +
                                  std::to_string(j) + " and " + std::to_string(i));
            }
        }
    }
}

CoverInstance CoverInstance::of_rationals(CoverMode mode, std::span<const Rational> elements) {
    const RootDescriptor q = RootDescriptor::rationals();
    std::vector<FieldElement> lifted;
    for (const auto& x : elements) lifted.push_back(FieldElement::from_rational(q, x));
    return CoverInstance(q, mode, std::move(lifted));
}

// ---------------------------------------------------------------- coverability

std::optional<ArithmeticProgression> ap_coverable(std::span<const FieldElement> elements) {
    if (elements.empty()) {
        throw usage_error("ap_coverable: empty element list");
    }
    RootDescriptor field = elements.front().descriptor();
    for (const auto& x : elements) field = common_field(field, x.descriptor());
    std::vector<FieldElement> xs;
    for (const auto& x : elements) {
        xs.push_back(lift(x, field));
        if (sign(xs.back()) < 0) {
            throw domain_error("ap_coverable: negative element " + to_string(x));
        }
    }
    std::sort(xs.begin(), xs.end(), [](const FieldElement& a, const FieldElement& b) { return compare(a, b) < 0; });
    const FieldElement& v = xs.front();
    if (xs.size() == 1) {
        return ArithmeticProgression(v, FieldElement::from_rational(field, 1));
    }
    const FieldElement reference = xs[1] - v;
    const FieldElement inv_reference = reference.inverse();
    Rational g = 0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const auto ratio = ((xs[i] - v) * inv_reference).as_rational();
        if (!ratio) return std::nullopt;
        g = rational_gcd(g, *ratio);
    }
    return ArithmeticProgression(v, reference * g);
}

std::optional<GeometricProgression> gp_coverable(std::span<const Rational> elements) {
    if (elements.empty()) {
        throw usage_error("gp_coverable: empty element list");
    }
    for (const auto& x : elements) {
        if (x == 0) throw domain_error("0 lies in no geometric progression");
        if (x < 0) throw domain_error("gp_coverable: negative element " + to_string(x));
    }
    const Rational base = *std::min_element(elements.begin(), elements.end());
    const RootDescriptor q = RootDescriptor::rationals();
    auto as_gp = [&](const Rational& ratio) {
        return GeometricProgression(FieldElement::from_rational(q, base), FieldElement::from_rational(q, ratio));
    };

    std::vector<FactorMap> vectors;
    for (const auto& x : elements) {
        if (x != base) vectors.push_back(factorize(x / base));
    }
    if (vectors.empty()) {
        return as_gp(Rational(2));
    }
    // primitive direction of the first vector, oriented so its value exceeds 1
    const FactorMap& first = vectors.front();
    const long g = std::abs(first.exponent_gcd());
    FactorMap primitive;
    for (const auto& [p, e] : first.entries()) primitive += FactorMap({{p, e / g}});
    if (primitive.value() < 1) primitive = primitive.scaled(-1);

    // every v must be an integer multiple of the primitive vector
    const auto& [p0, e0] = *primitive.entries().begin();
    for (const auto& v : vectors) {
        const long num = v.exponent(p0);
        if (num % e0 != 0) return std::nullopt;
        if (!(primitive.scaled(num / e0) == v)) return std::nullopt;
    }
    return as_gp(primitive.value());
}

std::optional<GeometricProgression> gp_coverable(std::span<const FieldElement> elements) {
    std::vector<Rational> values;
    for (const auto& x : elements) {
        require_gp_element(x);
        values.push_back(*x.as_rational());
    }
    return gp_coverable(std::span<const Rational>(values));
}

// ---------------------------------------------------------------- lines

namespace {

// All maximal lines through >= 2 points, as index masks.
std::vector<Mask> ap_lines(const std::vector<FieldElement>& xs) {
    const std::size_t n = xs.size();
    std::vector<Mask> lines;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Mask pair = bit(i) | bit(j);
            if (std::any_of(lines.begin(), lines.end(), [&](Mask l) { return (l & pair) == pair; })) continue;
            const FieldElement inv = (xs[j] - xs[i]).inverse();
            Mask line = pair;
            for (std::size_t k = j + 1; k < n; ++k) {
                if (((xs[k] - xs[i]) * inv).is_rational()) line |= bit(k);
            }
            lines.push_back(line);
        }
    }
    return lines;
}

std::vector<Mask> gp_lines(const std::vector<FieldElement>& xs) {
    const std::size_t n = xs.size();
    std::vector<Rational> values;
    for (const auto& x : xs) values.push_back(*x.as_rational());

    // exponent vectors of x / x0 over the union of prime supports
    std::vector<FactorMap> maps;
    std::vector<std::uint64_t> primes;
    for (const auto& v : values) {
        maps.push_back(factorize(v / values.front()));
        for (const auto& [p, e] : maps.back().entries()) primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    std::vector<std::vector<long>> vec(n, std::vector<long>(primes.size()));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < primes.size(); ++c) vec[i][c] = maps[i].exponent(primes[c]);
    }

    auto parallel = [&](std::size_t i, std::size_t j, std::size_t k) {
        for (std::size_t a = 0; a < primes.size(); ++a) {
            const __int128 da = vec[j][a] - vec[i][a];
            const __int128 ea = vec[k][a] - vec[i][a];
            for (std::size_t b = a + 1; b < primes.size(); ++b) {
                const __int128 db = vec[j][b] - vec[i][b];
                const __int128 eb = vec[k][b] - vec[i][b];
                if (da * eb != db * ea) return false;
            }
        }
        return true;
    };

    std::vector<Mask> lines;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Mask pair = bit(i) | bit(j);
            if (std::any_of(lines.begin(), lines.end(), [&](Mask l) { return (l & pair) == pair; })) continue;
            Mask line = pair;
            for (std::size_t k = j + 1; k < n; ++k) {
                if (parallel(i, j, k)) line |= bit(k);
            }
            lines.push_back(line);
        }
    }
    return lines;
}

bool rich(Mask line) { return std::popcount(line) >= 3; }

std::vector<Mask> class_masks(std::size_t n, const std::vector<Mask>& lines) {
    Mask unassigned = n == 64 ? ~Mask{0} : bit(n) - 1;
    std::vector<Mask> classes;
    for (;;) {
        Mask best = 0;
        for (Mask l : lines) {
            const Mask part = l & unassigned;
            if (!rich(part)) continue;
            const int pc = std::popcount(part), pb = std::popcount(best);
            if (pc > pb || (pc == pb && part < best)) best = part;
        }
        if (!best) break;
        classes.push_back(best);
        unassigned &= ~best;
    }
    // the rest pairs up in index order: no three unassigned points are collinear
    const auto rest = members_of(unassigned);
    for (std::size_t i = 0; i < rest.size(); i += 2) {
        Mask c = bit(rest[i]);
        if (i + 1 < rest.size()) c |= bit(rest[i + 1]);
        classes.push_back(c);
    }
    std::sort(classes.begin(), classes.end(),
              [](Mask a, Mask b) { return std::countr_zero(a) < std::countr_zero(b); });
    return classes;
}

// Exact minimum line cover by depth-first branch and bound.
class LineCoverSearch {
public:
    LineCoverSearch(std::size_t n, const std::vector<Mask>& lines) : n_(n), lines_(lines), through_(n) {
        for (std::size_t l = 0; l < lines_.size(); ++l) {
            for (std::size_t e : members_of(lines_[l])) through_[e].push_back(l);
        }
    }

    std::vector<Mask> solve() {
        best_count_ = n_ + 1;
        const Mask all = n_ == 64 ? ~Mask{0} : bit(n_) - 1;
        dfs(all, 0);
        return best_;
    }

private:
    // Every block covers at most maxcov(e) of the uncovered points it hits,
    // so sum over e of 1/maxcov(e) bounds the number of blocks from below.
    std::size_t lower_bound(Mask uncovered) const {
        double total = 0;
        for (Mask m = uncovered; m; m &= m - 1) {
            const auto e = static_cast<std::size_t>(std::countr_zero(m));
            int cover = 1;
            for (std::size_t l : through_[e]) cover = std::max(cover, std::popcount(lines_[l] & uncovered));
            total += 1.0 / cover;
        }
        return static_cast<std::size_t>(std::ceil(total - 1e-9));
    }

    void dfs(Mask uncovered, std::size_t depth) {
        if (!uncovered) {
            if (depth < best_count_) {
                best_count_ = depth;
                best_ = current_;
            }
            return;
        }
        if (depth + lower_bound(uncovered) >= best_count_) return;
        const auto seen = seen_.find(uncovered);
        if (seen != seen_.end() && seen->second <= depth) return;
        seen_[uncovered] = depth;

        const auto e = static_cast<std::size_t>(std::countr_zero(uncovered));
        std::vector<Mask> options;
        for (std::size_t l : through_[e]) {
            const Mask part = lines_[l] & uncovered;
            if (std::popcount(part) >= 2) options.push_back(part);
        }
        std::sort(options.begin(), options.end());
        options.erase(std::unique(options.begin(), options.end()), options.end());
        std::erase_if(options, [&](Mask a) {
            return std::any_of(options.begin(), options.end(), [&](Mask b) { return b != a && (a & b) == a; });
        });
        if (options.empty()) options.push_back(bit(e));
        std::sort(options.begin(), options.end(), [](Mask a, Mask b) {
            const int pa = std::popcount(a), pb = std::popcount(b);
            return pa != pb ? pa > pb : a < b;
        });
        for (Mask option : options) {
            current_.push_back(option);
            dfs(uncovered & ~option, depth + 1);
            current_.pop_back();
        }
    }

    std::size_t n_;
    const std::vector<Mask>& lines_;
    std::vector<std::vector<std::size_t>> through_;
    std::size_t best_count_ = 0;
    std::vector<Mask> best_;
    std::vector<Mask> current_;
    std::unordered_map<Mask, std::size_t> seen_;
};

Witness witness_for(const CoverInstance& instance, const std::vector<std::size_t>& members) {
    std::vector<FieldElement> xs;
    for (std::size_t i : members) xs.push_back(instance.elements()[i]);
    if (instance.mode() == CoverMode::ap) {
        if (auto w = ap_coverable(xs)) return *w;
    } else {
        if (auto w = gp_coverable(std::span<const FieldElement>(xs))) return *w;
    }
    throw invariant_violation("cover block has no witness progression");
}

bool witness_contains(const Witness& w, const FieldElement& x) {
    if (const auto* ap = std::get_if<ArithmeticProgression>(&w)) return ap_index_of(*ap, x).has_value();
    return gp_index_of(std::get<GeometricProgression>(w), x).has_value();
}

CoverSolution assemble(const CoverInstance& instance, const std::vector<Mask>& blocks, std::string method) {
    CoverSolution out;
    out.method = std::move(method);
    Mask covered = 0;
    for (Mask m : blocks) {
        auto members = members_of(m);
        Witness w = witness_for(instance, members);
        for (std::size_t i : members) {
            if (!witness_contains(w, instance.elements()[i])) {
                throw invariant_violation("cover witness misses element " + std::to_string(i));
            }
        }
        covered |= m;
        out.blocks.push_back({std::move(members), std::move(w)});
    }
    out.count = out.blocks.size();
    const std::size_t n = instance.size();
    if (std::popcount(covered) != static_cast<int>(n)) {
        throw invariant_violation("cover blocks do not cover every element");
    }
    if (n >= 2 && out.count > (n + 1) / 2) {
        throw invariant_violation("cover exceeds the pair bound ceil(|S|/2)");
    }
    return out;
}

void require_mode(const CoverInstance& instance, CoverMode mode, const char* who) {
    if (instance.mode() != mode) {
        throw domain_error(std::string(who) + ": instance is in " + to_string(instance.mode()) + " mode");
    }
    if (instance.size() > kMaxExactSize) {
        throw cost_guard_error(std::string(who) + ": at most " + std::to_string(kMaxExactSize) + " elements");
    }
}

CoverSolution solve_small(const CoverInstance& instance) {
    CoverSolution out;
    out.method = "trivial";
    if (instance.size() == 1) {
        return assemble(instance, {Mask{1}}, "trivial");
    }
    return out;
}

} // namespace

std::vector<std::vector<std::size_t>> commensurability_classes(const CoverInstance& instance) {
    require_mode(instance, CoverMode::ap, "commensurability_classes");
    std::vector<std::vector<std::size_t>> out;
    for (Mask c : class_masks(instance.size(), ap_lines(instance.elements()))) out.push_back(members_of(c));
    return out;
}

CoverSolution min_ap_cover(const CoverInstance& instance) {
    require_mode(instance, CoverMode::ap, "min_ap_cover");
    if (instance.size() <= 1) return solve_small(instance);
    const auto lines = ap_lines(instance.elements());
    std::vector<Mask> rich_lines;
    std::copy_if(lines.begin(), lines.end(), std::back_inserter(rich_lines), rich);
    Mask seen = 0;
    bool disjoint = true;
    for (Mask l : rich_lines) {
        disjoint = disjoint && (seen & l) == 0;
        seen |= l;
    }
    if (disjoint) {
        return assemble(instance, class_masks(instance.size(), lines), "class-reduction");
    }
    return assemble(instance, LineCoverSearch(instance.size(), lines).solve(), "branch-and-bound");
}

CoverSolution min_gp_cover(const CoverInstance& instance) {
    require_mode(instance, CoverMode::gp, "min_gp_cover");
    if (instance.size() <= 1) return solve_small(instance);
    const auto lines = gp_lines(instance.elements());
    return assemble(instance, LineCoverSearch(instance.size(), lines).solve(), "branch-and-bound");
}

std::size_t brute_force_min_cover(const CoverInstance& instance, CoverMode mode) {
    const std::size_t n = instance.size();
    if (n > kMaxBruteForceSize) {
        throw cost_guard_error("brute_force_min_cover: at most " + std::to_string(kMaxBruteForceSize) +
                               " elements, got " + std::to_string(n));
    }
    if (n == 0) return 0;
    const std::size_t full = (std::size_t{1} << n) - 1;
    std::vector<char> good(full + 1, 0);
    std::vector<FieldElement> subset;
    for (std::size_t mask = 1; mask <= full; ++mask) {
        subset.clear();
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1) subset.push_back(instance.elements()[i]);
        }
        good[mask] = mode == CoverMode::ap ? ap_coverable(subset).has_value()
                                           : gp_coverable(std::span<const FieldElement>(subset)).has_value();
    }
    std::vector<std::size_t> best(full + 1, n);
    best[0] = 0;
    for (std::size_t mask = 1; mask <= full; ++mask) {
        const std::size_t low = mask & (~mask + 1);
        const std::size_t rest = mask ^ low;
        for (std::size_t sub = rest;; sub = (sub - 1) & rest) {
            const std::size_t block = sub | low;
            if (good[block]) best[mask] = std::min(best[mask], 1 + best[mask & ~block]);
            if (sub == 0) break;
        }
    }
    return best[full];
}

} // namespace progcover
