#pragma once

#include "progcover/cover.hpp"
#include "progcover/progressions.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace progcover {

// Certified rational enclosure of pi^2 built from 40 correct decimal digits
// of pi.
RationalInterval pi_squared_enclosure();

// measured >= n / pi^2, decided by cross-multiplication against
// pi_squared_enclosure().
bool at_least_n_over_pi_squared(std::size_t measured, unsigned long n);

struct BoundRow {
    unsigned long n = 0;       // prefix length
    std::size_t size = 0;      // elements actually covered
    std::size_t measured = 0;  // exact cover number
    std::optional<std::string> lower; // lower bound, decimal or exact rational text
    std::optional<std::size_t> upper; // upper bound when one applies
    std::size_t pair_bound = 0;       // ceil(size / 2)
    bool holds = false;
    long long runtime_ms = 0;
};

struct BoundReport {
    std::string audit;     // "g-lower" or "a-bound"
    std::string regime;    // "root" or "non-root" for a-bound, "rational-ap" for g-lower
    std::optional<unsigned> root_order; // m with ratio^m rational, root regime only
    std::vector<BoundRow> rows;
    std::vector<std::string> notes;
    Rational min_ratio;    // min over rows of measured / n
    // least n0 such that every row with n >= n0 meets the lower bound
    std::optional<unsigned long> threshold;

    bool all_hold() const;
};

inline constexpr unsigned long kMaxGAuditTerms = 25;

// g(A^(n)) for n = 2..n_max against n / pi^2 (lower) and ceil(|S|/2) (upper).
// v and d must be rational; a zero term is dropped and noted. Throws
// cost_guard_error when n_max > 25.
BoundReport g_lower_bound_audit(const ArithmeticProgression& ap, unsigned long n_max);

// a(G^(n)) for n = 1..n_max. Root ratios (ratio^m rational, m least) are
// checked against a <= m with equality from n = 2m on; other ratios against
// a >= n / 6.
BoundReport a_bound_audit(const GeometricProgression& gp, unsigned long n_max);

struct DensityReport {
    std::uint64_t a = 0;
    std::uint64_t b = 1;
    std::uint64_t x = 0;
    std::uint64_t count = 0;
    std::string ratio;     // count / (x + 1), decimal
    std::string predicted; // 6/pi^2 prod_{p | b} (1 - p^-2)^-1, decimal
    std::string abs_error;
    double ratio_value = 0;
    double predicted_value = 0;
    double abs_error_value = 0;
};

inline constexpr std::uint64_t kMaxDensityRange = 100'000'000;

// Squarefree values a + b k, 0 <= k <= x, counted by a segmented sieve.
// 0 is not squarefree. Throws domain_error when gcd(a, b) != 1 and
// cost_guard_error when x > 10^8.
DensityReport squarefree_density(std::uint64_t a, std::uint64_t b, std::uint64_t x);

// Decimal value of 6/pi^2 prod_{p | b} (1 - p^-2)^-1 to `digits` places.
std::string squarefree_density_constant(std::uint64_t b, int digits = 25);

struct FilterResult {
    Rational t;  // v / d
    Integer a;   // t = a / b in lowest terms
    Integer b;
    unsigned long n = 0;
    std::vector<Integer> indices;        // kept h
    std::vector<FieldElement> elements;  // kept v + d h
};

// {v + d h : h < n, a + b h squarefree} where v / d = a / b. Throws
// domain_error when v / d is irrational.
FilterResult squarefree_filter(const ArithmeticProgression& ap, unsigned long n);

inline constexpr long kMaxScanExponent = 1'000'000;

// All j in [0, j_max] with b s r^j a squarefree integer. At most two exist
// (some prime has v_p(r) != 0, so v_p(b s r^j) is strictly monotone in j);
// more is an invariant_violation. Throws domain_error unless s > 0, r > 1,
// b >= 1.
std::vector<long> squarefree_exponent_scan(const Rational& s, const Rational& r, const Integer& b, long j_max);

} // namespace progcover
