#include "progcover/bounds.hpp"

#include "progcover/errors.hpp"
#include "progcover/factor.hpp"

#include <mpfr.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace progcover {

namespace {

constexpr const char* kPiDigits = "3.1415926535897932384626433832795028841971";

class Mpfr {
public:
    Mpfr() { mpfr_init2(value_, 256); }
    ~Mpfr() { mpfr_clear(value_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return value_; }

    std::string fixed(int digits) {
        char* text = nullptr;
        mpfr_asprintf(&text, "%.*Rf", digits, value_);
        std::string out(text);
        mpfr_free_str(text);
        return out;
    }

private:
    mpfr_t value_;
};

// 6/pi^2 prod_{p | b} p^2 / (p^2 - 1)
void density_constant(Mpfr& out, std::uint64_t b) {
    Mpfr pi;
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    mpfr_sqr(pi.get(), pi.get(), MPFR_RNDN);
    mpfr_ui_div(out.get(), 6, pi.get(), MPFR_RNDN);
    if (b > 1) {
        for (const auto& [p, e] : factorize(Rational(Integer(static_cast<unsigned long>(b)))).entries()) {
            Mpfr p2;
            mpfr_set_ui(p2.get(), p, MPFR_RNDN);
            mpfr_sqr(p2.get(), p2.get(), MPFR_RNDN);
            mpfr_mul(out.get(), out.get(), p2.get(), MPFR_RNDN);
            mpfr_sub_ui(p2.get(), p2.get(), 1, MPFR_RNDN);
            mpfr_div(out.get(), out.get(), p2.get(), MPFR_RNDN);
        }
    }
}

long long elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
}

void finish(BoundReport& report, bool lower_is_asymptotic) {
    bool first = true;
    for (const auto& row : report.rows) {
        const Rational ratio = make_rational(Integer(static_cast<unsigned long>(row.measured)), Integer(row.n));
        if (first || ratio < report.min_ratio) report.min_ratio = ratio;
        first = false;
    }
    if (lower_is_asymptotic) {
        // the lower bound is only claimed for large n: record where it starts holding
        std::optional<unsigned long> threshold;
        for (auto it = report.rows.rbegin(); it != report.rows.rend(); ++it) {
            if (!it->holds) break;
            threshold = it->n;
        }
        report.threshold = threshold;
    }
}

} // namespace

RationalInterval pi_squared_enclosure() {
    const std::string digits(kPiDigits);
    const std::string mantissa = digits.substr(0, 1) + digits.substr(2);
    const Integer scale = pow(Integer(10), static_cast<unsigned long>(digits.size() - 2));
    const Integer lo(mantissa);
    Rational pi_lo(lo, scale);
    Rational pi_hi(Integer(lo + 1), scale);
    pi_lo.canonicalize();
    pi_hi.canonicalize();
    return {pi_lo * pi_lo, pi_hi * pi_hi};
}

bool at_least_n_over_pi_squared(std::size_t measured, unsigned long n) {
    static const RationalInterval pi2 = pi_squared_enclosure();
    const Rational m(Integer(static_cast<unsigned long>(measured)));
    const Rational target(Integer(static_cast<unsigned long>(n)));
    if (m * pi2.lo >= target) return true;
    if (m * pi2.hi < target) return false;
    throw invariant_violation("pi^2 enclosure too coarse to decide measured >= n/pi^2");
}

bool BoundReport::all_hold() const {
    return std::all_of(rows.begin(), rows.end(), [](const BoundRow& r) { return r.holds; });
}

BoundReport g_lower_bound_audit(const ArithmeticProgression& ap, unsigned long n_max) {
    if (n_max > kMaxGAuditTerms) {
        throw cost_guard_error("g_lower_bound_audit: n_max must be at most " + std::to_string(kMaxGAuditTerms));
    }
    if (n_max < 2) {
        throw usage_error("g_lower_bound_audit: n_max must be at least 2");
    }
    const auto v = ap.start().as_rational();
    const auto d = ap.step().as_rational();
    if (!v || !d) {
        throw domain_error("g_lower_bound_audit: v and d must be rational");
    }
    BoundReport report;
    report.audit = "g-lower";
    report.regime = "rational-ap";
    if (*v == 0) {
        report.notes.push_back("term 0 excluded: it lies in no geometric progression");
    }
    std::vector<Rational> terms;
    for (unsigned long n = 1; n <= n_max; ++n) {
        const Rational next = *v + *d * Rational(Integer(static_cast<unsigned long>(n - 1)));
        if (next != 0) terms.push_back(next);
        if (n < 2) continue;
        const auto start = std::chrono::steady_clock::now();
        const CoverSolution sol = min_gp_cover(CoverInstance::of_rationals(CoverMode::gp, terms));
        BoundRow row;
        row.n = n;
        row.size = terms.size();
        row.measured = sol.count;
        Mpfr pi2;
        mpfr_const_pi(pi2.get(), MPFR_RNDN);
        mpfr_sqr(pi2.get(), pi2.get(), MPFR_RNDN);
        mpfr_ui_div(pi2.get(), n, pi2.get(), MPFR_RNDN);
        row.lower = pi2.fixed(20);
        row.pair_bound = (row.size + 1) / 2;
        row.upper = row.pair_bound;
        row.holds = at_least_n_over_pi_squared(row.measured, n) && row.measured <= row.pair_bound;
        row.runtime_ms = elapsed_ms(start);
        report.rows.push_back(std::move(row));
    }
    finish(report, true);
    return report;
}

BoundReport a_bound_audit(const GeometricProgression& gp, unsigned long n_max) {
    if (n_max < 1) {
        throw usage_error("a_bound_audit: n_max must be positive");
    }
    if (n_max > kMaxExactSize) {
        throw cost_guard_error("a_bound_audit: n_max must be at most " + std::to_string(kMaxExactSize));
    }
    BoundReport report;
    report.audit = "a-bound";
    report.root_order = rational_power_order(gp.ratio());
    report.regime = report.root_order ? "root" : "non-root";

    std::vector<FieldElement> terms;
    FieldElement term = gp.start();
    for (unsigned long n = 1; n <= n_max; ++n) {
        terms.push_back(term);
        term *= gp.ratio();
        const auto start = std::chrono::steady_clock::now();
        const CoverSolution sol = min_ap_cover(CoverInstance(gp.descriptor(), CoverMode::ap, terms));
        BoundRow row;
        row.n = n;
        row.size = n;
        row.measured = sol.count;
        row.pair_bound = (n + 1) / 2;
        if (report.root_order) {
            const std::size_t m = *report.root_order;
            row.upper = m;
            row.holds = row.measured <= m;
            if (n >= 2 * m) {
                row.lower = std::to_string(m);
                row.holds = row.holds && row.measured == m;
            }
        } else {
            row.lower = to_string(make_rational(Integer(n), Integer(6)));
            row.holds = 6 * row.measured >= n;
        }
        row.runtime_ms = elapsed_ms(start);
        report.rows.push_back(std::move(row));
    }
    finish(report, false);
    return report;
}

// ---------------------------------------------------------------- squarefree

namespace {

std::uint64_t isqrt(std::uint64_t v) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

// inverse of b modulo mod (gcd(b, mod) = 1)
std::uint64_t inverse_mod(std::uint64_t b, std::uint64_t mod) {
    __int128 t = 0, new_t = 1, r = mod, new_r = b % mod;
    while (new_r != 0) {
        const __int128 q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (t < 0) t += mod;
    return static_cast<std::uint64_t>(t);
}

} // namespace

std::string squarefree_density_constant(std::uint64_t b, int digits) {
    Mpfr c;
    density_constant(c, b);
    return c.fixed(digits);
}

DensityReport squarefree_density(std::uint64_t a, std::uint64_t b, std::uint64_t x) {
    if (b < 1) {
        throw domain_error("squarefree_density: b must be at least 1");
    }
    if (std::gcd(a, b) != 1) {
        throw domain_error("squarefree_density: gcd(a, b) must be 1");
    }
    if (x > kMaxDensityRange) {
        throw cost_guard_error("squarefree_density: x must be at most 10^8");
    }
    const unsigned __int128 top = static_cast<unsigned __int128>(b) * x + a;
    if (top > static_cast<unsigned __int128>(10'000'000'000'000'000ULL)) {
        throw cost_guard_error("squarefree_density: a + b x must be at most 10^16");
    }
    const auto primes = primes_up_to(isqrt(static_cast<std::uint64_t>(top)));

    constexpr std::uint64_t kSegment = 1u << 18;
    std::uint64_t count = 0;
    std::vector<char> bad(kSegment);
    for (std::uint64_t lo = 0; lo <= x; lo += kSegment) {
        const std::uint64_t hi = std::min(x, lo + kSegment - 1);
        std::fill(bad.begin(), bad.end(), 0);
        if (lo == 0 && a == 0) bad[0] = 1; // the value 0
        for (std::uint64_t p : primes) {
            if (b % p == 0) continue; // p does not divide a, hence no a + b k
            const std::uint64_t p2 = p * p;
            // a + b k = 0 (mod p^2)  <=>  k = -a / b (mod p^2)
            const std::uint64_t neg_a = (p2 - a % p2) % p2;
            const auto root = static_cast<std::uint64_t>(
                static_cast<unsigned __int128>(neg_a) * inverse_mod(b % p2, p2) % p2);
            std::uint64_t k = root >= lo ? root : root + (lo - root + p2 - 1) / p2 * p2;
            for (; k <= hi; k += p2) bad[k - lo] = 1;
        }
        for (std::uint64_t k = lo; k <= hi; ++k) count += bad[k - lo] == 0;
    }

    DensityReport out;
    out.a = a;
    out.b = b;
    out.x = x;
    out.count = count;
    const Rational ratio = make_rational(Integer(static_cast<unsigned long>(count)), Integer(static_cast<unsigned long>(x + 1)));
    Mpfr predicted, measured, error;
    density_constant(predicted, b);
    mpfr_set_q(measured.get(), ratio.get_mpq_t(), MPFR_RNDN);
    mpfr_sub(error.get(), measured.get(), predicted.get(), MPFR_RNDN);
    mpfr_abs(error.get(), error.get(), MPFR_RNDN);
    out.ratio = measured.fixed(25);
    out.predicted = predicted.fixed(25);
    out.abs_error = error.fixed(25);
    out.ratio_value = mpfr_get_d(measured.get(), MPFR_RNDN);
    out.predicted_value = mpfr_get_d(predicted.get(), MPFR_RNDN);
    out.abs_error_value = mpfr_get_d(error.get(), MPFR_RNDN);
    return out;
}

FilterResult squarefree_filter(const ArithmeticProgression& ap, unsigned long n) {
    const auto t = (ap.start() / ap.step()).as_rational();
    if (!t) {
        throw domain_error("squarefree_filter: v/d must be rational");
    }
    FilterResult out;
    out.t = *t;
    out.a = t->get_num();
    out.b = t->get_den();
    out.n = n;
    for (unsigned long h = 0; h < n; ++h) {
        const Integer hz(h);
        if (is_squarefree_integer(Rational(Integer(out.a + out.b * hz)))) {
            out.indices.push_back(hz);
            out.elements.push_back(ap.term(hz));
        }
    }
    return out;
}

std::vector<long> squarefree_exponent_scan(const Rational& s, const Rational& r, const Integer& b, long j_max) {
    if (s <= 0) throw domain_error("squarefree_exponent_scan: s must be positive");
    if (r <= 1) throw domain_error("squarefree_exponent_scan: r must exceed 1");
    if (b < 1) throw domain_error("squarefree_exponent_scan: b must be at least 1");
    if (j_max < 0) throw usage_error("squarefree_exponent_scan: j_max must be nonnegative");
    if (j_max > kMaxScanExponent) {
        throw cost_guard_error("squarefree_exponent_scan: j_max must be at most 10^6");
    }
    // v_p(b s r^j) = v_p(b s) + j v_p(r): squarefree integer iff every exponent is 1
    const FactorMap base = factorize(Rational(b) * s);
    const FactorMap step = factorize(r);
    std::vector<long> hits;
    FactorMap current = base;
    for (long j = 0; j <= j_max; ++j) {
        const bool squarefree = std::all_of(current.entries().begin(), current.entries().end(),
                                            [](const auto& entry) { return entry.second == 1; });
        if (squarefree) hits.push_back(j);
        current += step;
    }
    if (hits.size() > 2) {
        throw invariant_violation("squarefree_exponent_scan: more than two squarefree exponents");
    }
    return hits;
}

} // namespace progcover
