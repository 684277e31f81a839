#pragma once

// Arithmetic in pure root extensions Q(q), q = r^(1/m) the positive real m-th
// root of a rational r > 1.
//
// Elements are stored in the power basis 1, q, ..., q^(m-1) with products
// reduced eagerly by q^m = r. A RootDescriptor is always normalized: no
// q^j with 0 < j < m is rational, which makes x^m - r the minimal polynomial
// of q (Capelli: x^m - r is reducible over Q only if r is an l-th power for
// some prime l | m, and r > 0 rules out the -4c^4 case). The power basis is
// then a Q-basis and coordinates are a unique normal form: equality and
// "is rational" are coordinate tests.
//
// Signs are exact. Zero is detected from coordinates; otherwise q is enclosed
// in a dyadic interval [a/2^p, (a+1)/2^p] with a = floor(2^p q) computed by an
// integer root, the element is evaluated over that interval with exact
// rational endpoints, and p doubles (starting at 64) until the enclosure
// excludes zero. A nonzero element is a fixed nonzero real, so this stops.

#include "progcover/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace progcover {

inline constexpr unsigned kMaxDegree = 64;

class RootDescriptor {
public:
    // The descriptor (r, m) itself; throws usage_error unless r > 1,
    // 1 <= m <= kMaxDegree and (r, m) is normalized. See normalize_root.
    RootDescriptor(Rational r, unsigned m);

    // Q itself, written (2, 1).
    static RootDescriptor rationals();

    const Rational& r() const noexcept { return r_; }
    unsigned m() const noexcept { return m_; }

    // Same field: equal m, and equal r unless m == 1 (every m == 1
    // descriptor denotes Q).
    bool same_field(const RootDescriptor& other) const;

    friend bool operator==(const RootDescriptor&, const RootDescriptor&) = default;

private:
    Rational r_;
    unsigned m_;
};

// (r', m') with r'^(1/m') = r^(1/m) and m' = m / gcd(m, g), g the gcd of the
// prime exponents of r. Idempotent. Throws domain_error when r <= 1 and
// usage_error when m is 0 or above kMaxDegree.
RootDescriptor normalize_root(const Rational& r, unsigned m);

struct RationalInterval {
    Rational lo;
    Rational hi;
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

class FieldElement {
public:
    // coords[i] is the coefficient of q^i; size must equal descriptor.m().
    FieldElement(RootDescriptor descriptor, std::vector<Rational> coords);

    static FieldElement zero(const RootDescriptor& d);
    static FieldElement from_rational(const RootDescriptor& d, const Rational& x);
    // q itself (for m == 1 this is the rational r).
    static FieldElement generator(const RootDescriptor& d);

    const RootDescriptor& descriptor() const noexcept { return descriptor_; }
    const std::vector<Rational>& coords() const noexcept { return coords_; }

    bool is_zero() const;
    bool is_rational() const;
    // Constant coordinate when the element is rational.
    std::optional<Rational> as_rational() const;
    // Index of the single nonzero coordinate, if exactly one is nonzero.
    std::optional<unsigned> monomial_index() const;

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& y);
    FieldElement& operator-=(const FieldElement& y);
    FieldElement& operator*=(const FieldElement& y);
    FieldElement& operator/=(const FieldElement& y);
    FieldElement& operator*=(const Rational& c);

    friend FieldElement operator+(FieldElement x, const FieldElement& y) { return x += y; }
    friend FieldElement operator-(FieldElement x, const FieldElement& y) { return x -= y; }
    friend FieldElement operator*(FieldElement x, const FieldElement& y) { return x *= y; }
    friend FieldElement operator/(FieldElement x, const FieldElement& y) { return x /= y; }
    friend FieldElement operator*(FieldElement x, const Rational& c) { return x *= c; }
    friend FieldElement operator*(const Rational& c, FieldElement x) { return x *= c; }

    // Throws domain_error for zero.
    FieldElement inverse() const;
    // Negative exponents go through inverse().
    FieldElement pow(long exponent) const;

    friend bool operator==(const FieldElement& x, const FieldElement& y);

private:
    void require_same_field(const FieldElement& y, const char* op) const;

    RootDescriptor descriptor_;
    std::vector<Rational> coords_;
};

// Rational element re-expressed over another field (e.g. lifting an element
// of Q into Q(q)). Throws usage_error unless x is rational or already lives in
// the target field.
FieldElement lift(const FieldElement& x, const RootDescriptor& target);

// Enclosure of q with width 2^-bits (exact value for m == 1).
RationalInterval enclose_root(const RootDescriptor& d, unsigned bits);
// Enclosure of the real value of x, evaluated over enclose_root(bits).
RationalInterval enclose(const FieldElement& x, unsigned bits);

// -1, 0 or +1: the exact sign of x under q = positive real root.
int sign(const FieldElement& x);
// sign(x - y)
int compare(const FieldElement& x, const FieldElement& y);

// Least j in [1, m] with x^j rational, or nullopt when there is none, which
// certifies x is not r'^(1/j) for any rational r' and integer j.
//
// The bound j <= m suffices. Suppose x > 0 and j0 is least with x^j0 = c
// rational. X^j0 - c is irreducible: otherwise c = b^l for a prime l | j0,
// and taking b > 0 the positive real x^(j0/l) would equal b, contradicting
// minimality. So [Q(x) : Q] = j0, and Q(x) is a subfield of Q(q), giving
// j0 <= m (indeed j0 | m).
//
// Throws domain_error unless x > 0.
std::optional<unsigned> rational_power_order(const FieldElement& x);

// Human-readable form such as "3 - 2*q" or "1/2*q^2".
std::string to_string(const FieldElement& x);

} // namespace progcover
