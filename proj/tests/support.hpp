#pragma once
// Shared fixtures and hand-rolled generators for the test binaries.
#include "progcover/field.hpp"
#include "progcover/progressions.hpp"
#include "progcover/rational.hpp"

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

namespace progcover::testing {

inline Rational Q(const std::string& text) { return parse_rational(text); }

inline RootDescriptor root(const std::string& r, unsigned m) { return RootDescriptor(Q(r), m); }

inline RootDescriptor sqrt2() { return root("2", 2); }

inline FieldElement elem(const RootDescriptor& d, std::initializer_list<const char*> coords) {
    std::vector<Rational> c;
    for (const char* s : coords) c.push_back(Q(s));
    return FieldElement(d, c);
}

inline FieldElement rat(const std::string& x) {
    return FieldElement::from_rational(RootDescriptor::rationals(), Q(x));
}

inline FieldElement rat_in(const RootDescriptor& d, const std::string& x) {
    return FieldElement::from_rational(d, Q(x));
}

// Deterministic draws for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
    bool coin() { return range(0, 1) == 1; }

    // num/den with |num| <= bound and 1 <= den <= bound.
    Rational rational(long bound) { return make_rational(Integer(range(-bound, bound)), Integer(range(1, bound))); }
    Rational nonzero_rational(long bound) {
        for (;;) {
            Rational x = rational(bound);
            if (x != 0) return x;
        }
    }
    Rational positive_rational(long bound) {
        return make_rational(Integer(range(1, bound)), Integer(range(1, bound)));
    }

    FieldElement element(const RootDescriptor& d, long bound) {
        std::vector<Rational> c;
        for (unsigned i = 0; i < d.m(); ++i) c.push_back(rational(bound));
        return FieldElement(d, c);
    }
    FieldElement nonzero_element(const RootDescriptor& d, long bound) {
        for (;;) {
            FieldElement x = element(d, bound);
            if (!x.is_zero()) return x;
        }
    }
    FieldElement positive_element(const RootDescriptor& d, long bound) {
        for (;;) {
            FieldElement x = nonzero_element(d, bound);
            if (sign(x) > 0) return x;
        }
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

} // namespace progcover::testing
