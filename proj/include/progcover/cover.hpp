#pragma once

// Exact minimal covers of finite sets by arithmetic (a(S)) and geometric
// (g(S)) progressions.
//
// Both problems are line covers. In AP mode the elements of Q(q) are points of
// the Q-vector space Q^m and a subset lies in one AP iff it lies on one affine
// Q-line (all difference ratios rational). In GP mode a set of positive
// rationals lies in one GP iff the prime-exponent vectors of x / x0 are
// collinear; the witness ratio is the rational whose exponent vector is the
// primitive direction of that line.
//
// Any two points are a block, so only lines with >= 3 points ("rich" lines)
// matter. When the rich lines are pairwise disjoint (the case for every
// G^(n) over a root field: the lines are the residue classes of k mod m) the
// optimum takes every rich line and pairs the rest, so a(S) equals the number
// of commensurability classes. Otherwise an exact branch and bound over line
// masks is used. brute_force_min_cover is an independent exhaustive oracle.

#include "progcover/progressions.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace progcover {

enum class CoverMode { ap, gp };

const char* to_string(CoverMode mode);

class CoverInstance {
public:
    // Elements are lifted into descriptor's field. Throws usage_error for
    // duplicates, domain_error for negative elements (AP) or nonpositive /
    // irrational elements (GP).
    CoverInstance(RootDescriptor descriptor, CoverMode mode, std::vector<FieldElement> elements);

    static CoverInstance of_rationals(CoverMode mode, std::span<const Rational> elements);

    const RootDescriptor& descriptor() const noexcept { return descriptor_; }
    CoverMode mode() const noexcept { return mode_; }
    const std::vector<FieldElement>& elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }

private:
    RootDescriptor descriptor_;
    CoverMode mode_;
    std::vector<FieldElement> elements_;
};

using Witness = std::variant<ArithmeticProgression, GeometricProgression>;

struct Block {
    std::vector<std::size_t> members; // ascending element indices
    Witness witness;
};

struct CoverSolution {
    std::size_t count = 0;
    std::vector<Block> blocks;
    bool exact = true;
    std::string method; // "class-reduction", "branch-and-bound", "trivial"
};

// Largest instance the exact solvers accept (element sets are bitmasks).
inline constexpr std::size_t kMaxExactSize = 64;
inline constexpr std::size_t kMaxBruteForceSize = 15;

// Witness A(min T, d) with d the rational gcd of the differences measured
// against the smallest difference, or nullopt when some difference ratio is
// irrational. Any one or two points succeed (one point uses d = 1). Throws
// domain_error for a negative element, usage_error for an empty list.
std::optional<ArithmeticProgression> ap_coverable(std::span<const FieldElement> elements);

// Witness G(min T, rho) with rho > 1 the primitive direction of the exponent
// line, or nullopt when the exponent vectors are not collinear. A single
// point uses rho = 2. Throws domain_error for a nonpositive element.
std::optional<GeometricProgression> gp_coverable(std::span<const Rational> elements);
// Same, for rational field elements; irrational ones are a domain_error.
std::optional<GeometricProgression> gp_coverable(std::span<const FieldElement> elements);

// Partition of an AP-mode instance into lines: rich lines first (largest,
// then smallest index mask, restricted to still-unassigned points), then the
// remaining points in index order, each joining the first class that is a
// singleton or whose line contains it. Each class is ascending; classes are
// ordered by their smallest member.
std::vector<std::vector<std::size_t>> commensurability_classes(const CoverInstance& instance);

CoverSolution min_ap_cover(const CoverInstance& instance);
CoverSolution min_gp_cover(const CoverInstance& instance);

// Exhaustive set cover over every coverable subset (tested with ap_coverable /
// gp_coverable), memoized over bitmasks. Throws cost_guard_error above
// kMaxBruteForceSize elements.
std::size_t brute_force_min_cover(const CoverInstance& instance, CoverMode mode);

} // namespace progcover
