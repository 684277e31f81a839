#include "progcover/field.hpp"

#include "progcover/errors.hpp"
#include "progcover/factor.hpp"

#include <numeric>
#include <sstream>
#include <utility>

namespace progcover {

// ---------------------------------------------------------------- descriptor

RootDescriptor::RootDescriptor(Rational r, unsigned m) : r_(std::move(r)), m_(m) {
    if (r_ <= 1) {
        throw usage_error("root descriptor needs r > 1, got " + to_string(r_));
    }
    if (m_ == 0 || m_ > kMaxDegree) {
        throw usage_error("root descriptor degree must be in [1, " + std::to_string(kMaxDegree) +
                          "], got " + std::to_string(m_));
    }
    if (m_ > 1 && std::gcd(static_cast<long>(m_), factorize(r_).exponent_gcd()) != 1) {
        throw usage_error("root descriptor (" + to_string(r_) + ", " + std::to_string(m_) +
                          ") is not normalized");
    }
}

RootDescriptor RootDescriptor::rationals() { return RootDescriptor(Rational(2), 1); }

bool RootDescriptor::same_field(const RootDescriptor& other) const {
    return m_ == other.m_ && (m_ == 1 || r_ == other.r_);
}

RootDescriptor normalize_root(const Rational& r, unsigned m) {
    if (r <= 1) {
        throw domain_error("normalize_root: r must exceed 1, got " + to_string(r));
    }
    if (m == 0 || m > kMaxDegree) {
        throw usage_error("normalize_root: m must be in [1, " + std::to_string(kMaxDegree) + "]");
    }
    const FactorMap f = factorize(r);
    const long g = std::gcd(static_cast<long>(m), f.exponent_gcd());
    FactorMap reduced;
    for (const auto& [p, e] : f.entries()) {
        reduced += FactorMap({{p, e / g}});
    }
    return RootDescriptor(reduced.value(), m / static_cast<unsigned>(g));
}

// ---------------------------------------------------------------- elements

FieldElement::FieldElement(RootDescriptor descriptor, std::vector<Rational> coords)
    : descriptor_(std::move(descriptor)), coords_(std::move(coords)) {
    if (coords_.size() != descriptor_.m()) {
        throw usage_error("field element needs " + std::to_string(descriptor_.m()) +
                          " coordinates, got " + std::to_string(coords_.size()));
    }
}

FieldElement FieldElement::zero(const RootDescriptor& d) {
    return FieldElement(d, std::vector<Rational>(d.m()));
}

FieldElement FieldElement::from_rational(const RootDescriptor& d, const Rational& x) {
    FieldElement out = zero(d);
    out.coords_[0] = x;
    return out;
}

FieldElement FieldElement::generator(const RootDescriptor& d) {
    if (d.m() == 1) {
        return from_rational(d, d.r());
    }
    FieldElement out = zero(d);
    out.coords_[1] = 1;
    return out;
}

bool FieldElement::is_zero() const {
    for (const auto& c : coords_) {
        if (c != 0) return false;
    }
    return true;
}

bool FieldElement::is_rational() const {
    for (std::size_t i = 1; i < coords_.size(); ++i) {
        if (coords_[i] != 0) return false;
    }
    return true;
}

std::optional<Rational> FieldElement::as_rational() const {
    if (!is_rational()) return std::nullopt;
    return coords_[0];
}

std::optional<unsigned> FieldElement::monomial_index() const {
    std::optional<unsigned> found;
    for (unsigned i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == 0) continue;
        if (found) return std::nullopt;
        found = i;
    }
    return found;
}

void FieldElement::require_same_field(const FieldElement& y, const char* op) const {
    if (!descriptor_.same_field(y.descriptor_)) {
        throw usage_error(std::string("field element ") + op + ": descriptor mismatch (" +
                          to_string(descriptor_.r()) + ", " + std::to_string(descriptor_.m()) + ") vs (" +
                          to_string(y.descriptor_.r()) + ", " + std::to_string(y.descriptor_.m()) + ")");
    }
}

FieldElement FieldElement::operator-() const {
    FieldElement out = *this;
    for (auto& c : out.coords_) c = -c;
    return out;
}

FieldElement& FieldElement::operator+=(const FieldElement& y) {
    require_same_field(y, "add");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += y.coords_[i];
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& y) {
    require_same_field(y, "sub");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= y.coords_[i];
    return *this;
}

FieldElement& FieldElement::operator*=(const Rational& c) {
    for (auto& x : coords_) x *= c;
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& y) {
    require_same_field(y, "mul");
    const std::size_t m = coords_.size();
    if (m == 1) {
        coords_[0] *= y.coords_[0];
        return *this;
    }
    std::vector<Rational> low(m);
    std::vector<Rational> high(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (coords_[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j) {
            if (y.coords_[j] == 0) continue;
            if (i + j < m) low[i + j] += coords_[i] * y.coords_[j];
            else high[i + j - m] += coords_[i] * y.coords_[j];
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (high[i] != 0) low[i] += high[i] * descriptor_.r();
    }
    coords_ = std::move(low);
    return *this;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) {
        throw domain_error("division by zero in field arithmetic");
    }
    const std::size_t m = coords_.size();
    if (m == 1) {
        return from_rational(descriptor_, 1 / coords_[0]);
    }
    // Solve M y = e0 where column j of M holds the coordinates of x * q^j.
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1));
    FieldElement col = *this;
    const FieldElement q = generator(descriptor_);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < m; ++i) a[i][j] = col.coords_[i];
        col *= q;
    }
    a[0][m] = 1;
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t pivot = c;
        while (a[pivot][c] == 0) ++pivot; // nonsingular: x != 0 in a field
        std::swap(a[pivot], a[c]);
        const Rational inv = 1 / a[c][c];
        for (std::size_t k = c; k <= m; ++k) a[c][k] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == c || a[i][c] == 0) continue;
            const Rational f = a[i][c];
            for (std::size_t k = c; k <= m; ++k) a[i][k] -= f * a[c][k];
        }
    }
    FieldElement out = zero(descriptor_);
    for (std::size_t i = 0; i < m; ++i) out.coords_[i] = a[i][m];
    return out;
}

FieldElement& FieldElement::operator/=(const FieldElement& y) {
    require_same_field(y, "div");
    return *this *= y.inverse();
}

FieldElement FieldElement::pow(long exponent) const {
    if (exponent < 0) {
        return inverse().pow(-exponent);
    }
    FieldElement result = from_rational(descriptor_, 1);
    FieldElement base = *this;
    auto e = static_cast<unsigned long>(exponent);
    while (e) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

bool operator==(const FieldElement& x, const FieldElement& y) {
    return x.descriptor_.same_field(y.descriptor_) && x.coords_ == y.coords_;
}

FieldElement lift(const FieldElement& x, const RootDescriptor& target) {
    if (x.descriptor().same_field(target)) {
        return FieldElement(target, x.coords());
    }
    if (const auto c = x.as_rational()) {
        return FieldElement::from_rational(target, *c);
    }
    throw usage_error("cannot lift an irrational element into a different field");
}

// ---------------------------------------------------------------- signs

RationalInterval enclose_root(const RootDescriptor& d, unsigned bits) {
    if (d.m() == 1) {
        return {d.r(), d.r()};
    }
    // a = floor((r * 2^(bits*m))^(1/m)) gives a^m <= r 2^(bits m) < (a+1)^m.
    Integer scaled = d.r().get_num();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(bits) * d.m());
    mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), d.r().get_den_mpz_t());
    Integer a;
    mpz_root(a.get_mpz_t(), scaled.get_mpz_t(), d.m());
    Integer denom = 1;
    mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), bits);
    RationalInterval out{Rational(a, denom), Rational(Integer(a + 1), denom)};
    out.lo.canonicalize();
    out.hi.canonicalize();
    return out;
}

RationalInterval enclose(const FieldElement& x, unsigned bits) {
    const auto& c = x.coords();
    if (x.is_rational()) {
        return {c[0], c[0]};
    }
    const RationalInterval q = enclose_root(x.descriptor(), bits);
    RationalInterval out{c[0], c[0]};
    Rational lo_pow = 1;
    Rational hi_pow = 1;
    for (std::size_t i = 1; i < c.size(); ++i) {
        lo_pow *= q.lo;
        hi_pow *= q.hi;
        if (c[i] == 0) continue;
        // 1 <= q.lo, so powers are increasing in the root
        if (c[i] > 0) {
            out.lo += c[i] * lo_pow;
            out.hi += c[i] * hi_pow;
        } else {
            out.lo += c[i] * hi_pow;
            out.hi += c[i] * lo_pow;
        }
    }
    return out;
}

int sign(const FieldElement& x) {
    if (x.is_zero()) return 0;
    if (x.is_rational()) return sgn(x.coords()[0]);
    for (unsigned bits = 64;; bits *= 2) {
        const RationalInterval e = enclose(x, bits);
        if (e.lo > 0) return 1;
        if (e.hi < 0) return -1;
    }
}

int compare(const FieldElement& x, const FieldElement& y) { return sign(x - y); }

std::optional<unsigned> rational_power_order(const FieldElement& x) {
    if (sign(x) <= 0) {
        throw domain_error("rational_power_order: argument must be positive");
    }
    FieldElement power = x;
    for (unsigned j = 1; j <= x.descriptor().m(); ++j) {
        if (power.is_rational()) return j;
        power *= x;
    }
    return std::nullopt;
}

std::string to_string(const FieldElement& x) {
    std::ostringstream out;
    bool first = true;
    const auto& c = x.coords();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        Rational mag = abs(c[i]);
        if (first) {
            if (c[i] < 0) out << '-';
        } else {
            out << (c[i] < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            out << to_string(mag);
            continue;
        }
        if (mag != 1) out << to_string(mag) << '*';
        out << 'q';
        if (i > 1) out << '^' << i;
    }
    if (first) out << '0';
    return out.str();
}

} // namespace progcover
