#pragma once

#include "progcover/rational.hpp"

#include <cstdint>
#include <map>
#include <utility>

namespace progcover {

// Prime factorisation of a positive rational: prime -> nonzero exponent,
// ascending by prime. The empty map is 1.
class FactorMap {
public:
    using Entries = std::map<std::uint64_t, long>;

    FactorMap() = default;
    explicit FactorMap(Entries entries);

    const Entries& entries() const& noexcept { return entries_; }
    Entries entries() && { return std::move(entries_); }
    bool empty() const noexcept { return entries_.empty(); }
    long exponent(std::uint64_t p) const;

    // Entrywise sum, i.e. the factorisation of the product.
    FactorMap& operator+=(const FactorMap& other);
    friend FactorMap operator+(FactorMap a, const FactorMap& b) { return a += b; }
    // Every exponent multiplied by k.
    FactorMap scaled(long k) const;

    // gcd of all exponents (0 for the empty map).
    long exponent_gcd() const;

    Rational value() const;

    friend bool operator==(const FactorMap&, const FactorMap&) = default;

private:
    void add(std::uint64_t p, long e);
    Entries entries_;
};

bool is_prime(std::uint64_t n);

// Throws domain_error when x <= 0, or when a cofactor left after trial
// division does not fit in 64 bits.
FactorMap factorize(const Rational& x);

// p-adic valuation of a nonzero rational. Throws domain_error when x == 0 or
// p is not prime.
long valuation(std::uint64_t p, const Rational& x);

// True iff x is a positive integer with no repeated prime factor. 1 is
// squarefree; 0, negatives and non-integers are not.
bool is_squarefree_integer(const Rational& x);

} // namespace progcover
