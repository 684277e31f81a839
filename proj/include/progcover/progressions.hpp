#pragma once

#include "progcover/field.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace progcover {

// A(v, d) = {v, v + d, v + 2d, ...} with v >= 0 and d > 0.
class ArithmeticProgression {
public:
    // Throws domain_error when v < 0 or d <= 0, usage_error when v and d live
    // in different fields (rational operands are lifted first).
    ArithmeticProgression(FieldElement v, FieldElement d);

    const FieldElement& start() const noexcept { return v_; }
    const FieldElement& step() const noexcept { return d_; }
    const RootDescriptor& descriptor() const noexcept { return v_.descriptor(); }

    FieldElement term(const Integer& h) const;

private:
    FieldElement v_;
    FieldElement d_;
};

// G(u, q) = {u, uq, uq^2, ...} with u > 0 and q > 1.
class GeometricProgression {
public:
    GeometricProgression(FieldElement u, FieldElement ratio);

    const FieldElement& start() const noexcept { return u_; }
    const FieldElement& ratio() const noexcept { return ratio_; }
    const RootDescriptor& descriptor() const noexcept { return u_.descriptor(); }

    FieldElement term(unsigned long k) const;

private:
    FieldElement u_;
    FieldElement ratio_;
};

struct IntersectionPoint {
    unsigned long k; // GP exponent
    Integer h;       // AP index
    FieldElement value;
};

// h with x = v + d*h, if (x - v)/d is a nonnegative integer.
std::optional<Integer> ap_index_of(const ArithmeticProgression& ap, const FieldElement& x);

// k with x = u * ratio^k. Candidate exponents come from an outward-rounded
// interval logarithm; each candidate is then checked exactly.
std::optional<unsigned long> gp_index_of(const GeometricProgression& gp, const FieldElement& x);

// A ∩ G^(N), ascending in k. Rational progressions are lifted into the other
// operand's field; two distinct irrational fields are a usage_error.
std::vector<IntersectionPoint> intersect_prefix(const ArithmeticProgression& ap,
                                                const GeometricProgression& gp, unsigned long count);

enum class Lemma1Status {
    ok,           // >= 3 points, decomposition found
    inconclusive, // fewer than 3 points; the structure claim does not apply
};

// Structure of A(v,d) ∩ G(u,q) for q = r^(1/m) normalized: with at least three
// common terms, t = v/d is rational, u/d = s q^(-ell) with s rational and
// 0 <= ell < m, and every common exponent k is congruent to ell mod m.
struct Lemma1Report {
    Lemma1Status status = Lemma1Status::inconclusive;
    std::optional<Rational> t;
    std::optional<Rational> s;
    std::optional<unsigned> ell;
    bool residues_ok = false;
    std::vector<IntersectionPoint> points;
};

// Requires the GP ratio to be the generator q of its (normalized) field, or a
// rational > 1 when m = 1. Throws invariant_violation when >= 3 points exist
// but t is irrational or u/d has no s q^(-ell) form.
Lemma1Report lemma1_analyze(const ArithmeticProgression& ap, const GeometricProgression& gp,
                            unsigned long count);

struct CoveredTerm {
    unsigned long k;
    unsigned residue; // index i of the progression A(0, u q^i / r2^n)
    Integer h;
};

struct Theorem2Cover {
    std::vector<ArithmeticProgression> progressions;
    std::vector<CoveredTerm> terms;
};

// The m progressions A(0, u q^i / r2^n), i < m, for ratio q = (r1/r2)^(1/m),
// with every term u q^k (k < n) checked to sit in progression k mod m at index
// r1^floor(k/m) * r2^(n - floor(k/m)). Throws invariant_violation if any term
// fails and usage_error if the ratio is not the field generator.
Theorem2Cover theorem2_cover(const GeometricProgression& gp, unsigned long n);

struct IntersectionBoundCheck {
    std::size_t count;
    bool ok; // count <= 6
};

inline constexpr std::size_t kIntersectionBound = 6;

// |A ∩ G^(N)| against the bound 6 for ratios that are not roots of rationals.
// Throws precondition_error (witness = j) when ratio^j is rational for some j.
IntersectionBoundCheck assert_dj_bound(const ArithmeticProgression& ap, const GeometricProgression& gp,
                                       unsigned long count);

// Common field for two descriptors: the irrational one if exactly one is
// irrational. Throws usage_error for two different irrational fields.
RootDescriptor common_field(const RootDescriptor& a, const RootDescriptor& b);

} // namespace progcover
