#include "progcover/errors.hpp"
#include "progcover/factor.hpp"
#include "progcover/field.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace progcover;
using namespace progcover::testing;

namespace {

FactorMap fm(std::initializer_list<std::pair<const std::uint64_t, long>> e) { return FactorMap(FactorMap::Entries(e)); }

} // namespace

TEST_SUITE("rational") {
    TEST_CASE("parse literal forms") {
        CHECK(Q("3/6") == Rational(1, 2));
        CHECK(Q("-4/2") == -2);
        CHECK(Q("+7") == 7);
        CHECK(Q("0/5") == 0);
        CHECK(to_string(Q("0/5")) == "0");
        CHECK_THROWS_AS(Q("6/-4"), usage_error);
        CHECK(to_string(Q("-6/4")) == "-3/2");
        CHECK_THROWS_AS(Q("1/0"), usage_error);
        CHECK_THROWS_AS(Q("1.5"), usage_error);
        CHECK_THROWS_AS(Q(" 1"), usage_error);
        CHECK_THROWS_AS(Q(""), usage_error);
        CHECK_THROWS_AS(Q("1/"), usage_error);
    }

    TEST_CASE("canonical construction") {
        Rational x = make_rational(28, 6);
        CHECK(x.get_num() == 14);
        CHECK(x.get_den() == 3);
        CHECK(to_string(make_rational(-5, -10)) == "1/2");
        CHECK(to_string(make_rational(0, -3)) == "0");
    }

    TEST_CASE("rational gcd") {
        CHECK(rational_gcd(Q("1/2"), Q("1/3")) == Q("1/6"));
        CHECK(rational_gcd(Q("3/2"), Q("9/4")) == Q("3/4"));
        CHECK(rational_gcd(0, Q("-5/7")) == Q("5/7"));
        CHECK(rational_gcd(0, 0) == 0);
    }

    TEST_CASE("property: rational gcd divides both arguments") {
        Gen g(11);
        for (int i = 0; i < 300; ++i) {
            Rational x = g.rational(60), y = g.nonzero_rational(60);
            Rational c = rational_gcd(x, y);
            REQUIRE(c > 0);
            CHECK(is_integer(x / c));
            CHECK(is_integer(y / c));
        }
    }
}

TEST_SUITE("factor") {
    TEST_CASE("factorize examples") {
        CHECK(factorize(Q("8/3")) == fm({{2, 3}, {3, -1}}));
        CHECK(factorize(Q("1")).empty());
        CHECK(factorize(Q("360")) == fm({{2, 3}, {3, 2}, {5, 1}}));
        CHECK_THROWS_AS(factorize(0), domain_error);
        CHECK_THROWS_AS(factorize(Q("-2")), domain_error);
    }

    TEST_CASE("large cofactors") {
        // 2^61 - 1 is prime; (2^31 - 1)(2^32 + 15) needs rho to split.
        Integer mersenne = (Integer(1) << 61) - 1;
        CHECK(factorize(Rational(mersenne)) == fm({{2305843009213693951ULL, 1}}));
        Integer a = 2147483647, b = Integer("4294967311");
        CHECK(factorize(Rational(a * b * 4)) == fm({{2, 2}, {2147483647ULL, 1}, {4294967311ULL, 1}}));
        CHECK_THROWS_AS(factorize(Rational(a * b * a)), domain_error);
        Integer huge = Integer(1) << 70;
        huge += 1;
        CHECK(factorize(Rational(huge)) == fm({{5, 2}, {29, 1}, {41, 1}, {113, 1}, {7416361, 1}, {47392381, 1}}));
        Integer p61 = mersenne;
        CHECK_THROWS_AS(factorize(Rational(p61 * p61 * 3)), domain_error);
    }

    TEST_CASE("is_prime small and 64-bit") {
        CHECK_FALSE(is_prime(0));
        CHECK_FALSE(is_prime(1));
        CHECK(is_prime(2));
        CHECK(is_prime(65537));
        CHECK_FALSE(is_prime(3215031751ULL)); // strong pseudoprime to 2, 3, 5, 7
        CHECK(is_prime(18446744073709551557ULL));
        CHECK_FALSE(is_prime(18446744073709551615ULL));
    }

    TEST_CASE("valuation examples") {
        CHECK(valuation(2, Q("8/3")) == 3);
        CHECK(valuation(3, Q("8/3")) == -1);
        CHECK(valuation(5, Q("8/3")) == 0);
        CHECK(valuation(7, Q("-49/5")) == 2);
        CHECK_THROWS_AS(valuation(2, 0), domain_error);
        CHECK_THROWS_AS(valuation(4, 8), domain_error);
    }

    TEST_CASE("is_squarefree_integer") {
        CHECK(is_squarefree_integer(10));
        CHECK_FALSE(is_squarefree_integer(12));
        CHECK_FALSE(is_squarefree_integer(Q("8/3")));
        CHECK(is_squarefree_integer(1));
        CHECK_FALSE(is_squarefree_integer(0));
        CHECK_FALSE(is_squarefree_integer(-6));
        CHECK(is_squarefree_integer(2 * 3 * 5 * 7 * 11 * 13));
    }

    TEST_CASE("property: factorize is a homomorphism") {
        Gen g(12);
        for (int i = 0; i < 300; ++i) {
            Rational x = g.positive_rational(5000), y = g.positive_rational(5000);
            CHECK(factorize(x * y) == factorize(x) + factorize(y));
            CHECK(factorize(x).value() == x);
        }
    }

    TEST_CASE("property: valuation is additive") {
        Gen g(13);
        const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13};
        for (int i = 0; i < 300; ++i) {
            Rational x = g.nonzero_rational(3000), y = g.nonzero_rational(3000);
            for (std::uint64_t p : primes) CHECK(valuation(p, x * y) == valuation(p, x) + valuation(p, y));
        }
    }

    TEST_CASE("property: squarefree agrees with trial division") {
        for (long x = 1; x <= 3000; ++x) {
            bool sf = true;
            for (long p = 2; p * p <= x; ++p)
                if (x % (p * p) == 0) sf = false;
            CHECK(is_squarefree_integer(x) == sf);
        }
    }
}

TEST_SUITE("root descriptors") {
    TEST_CASE("normalize_root examples") {
        CHECK(normalize_root(4, 2) == root("2", 1));
        CHECK(normalize_root(2, 2) == root("2", 2));
        CHECK(normalize_root(64, 4) == root("8", 2));
        CHECK(normalize_root(Q("9/4"), 2) == root("3/2", 1));
        CHECK(normalize_root(Q("27/8"), 6) == root("3/2", 2));
        CHECK_THROWS_AS(normalize_root(1, 2), domain_error);
        CHECK_THROWS_AS(normalize_root(Q("1/2"), 2), domain_error);
    }

    TEST_CASE("descriptor validation") {
        CHECK_THROWS_AS(RootDescriptor(4, 2), usage_error);
        CHECK_THROWS_AS(RootDescriptor(2, 65), usage_error);
        CHECK_THROWS_AS(RootDescriptor(2, 0), usage_error);
        CHECK_NOTHROW(RootDescriptor(2, 64));
        CHECK(root("2", 1).same_field(root("7", 1)));
        CHECK_FALSE(root("2", 2).same_field(root("3", 2)));
    }

    TEST_CASE("property: normalize_root is idempotent and value-preserving") {
        Gen g(14);
        for (int i = 0; i < 120; ++i) {
            Rational base = Integer(g.range(2, 12));
            unsigned e = static_cast<unsigned>(g.range(1, 4));
            unsigned m = static_cast<unsigned>(g.range(1, 8));
            Rational r = pow(base, static_cast<long>(e));
            if (r <= 1) continue;
            RootDescriptor d = normalize_root(r, m);
            CHECK(normalize_root(d.r(), d.m()) == d);
            CHECK(m % d.m() == 0);
            // A 128-bit enclosure of r'^(1/m') raised to the m-th power must contain r.
            RationalInterval a = enclose_root(d, 128);
            CHECK(a.hi - a.lo < Q("1/1000000000000000000000000000000"));
            RationalInterval pw{pow(a.lo, static_cast<long>(d.m())), pow(a.hi, static_cast<long>(d.m()))};
            CHECK(pw.contains(d.r()));
            RationalInterval pm{pow(a.lo, static_cast<long>(m)), pow(a.hi, static_cast<long>(m))};
            CHECK(pm.contains(r));
        }
    }

    TEST_CASE("(64,4) and (8,2) enclose the same real") {
        RationalInterval a = enclose_root(root("8", 2), 128);
        // 64^(1/4) = 2 * 2^(1/2); compare against an independent enclosure of sqrt 2
        RationalInterval b = enclose_root(root("2", 2), 128);
        Rational eps = Q("1/1000000000000000000000000000000");
        CHECK(abs(a.lo - 2 * b.lo) < eps);
        CHECK(abs(a.hi - 2 * b.hi) < eps);
        RationalInterval a4{pow(a.lo, 4), pow(a.hi, 4)};
        CHECK(a4.contains(64));
    }
}

TEST_SUITE("field arithmetic") {
    TEST_CASE("examples over Q(sqrt 2)") {
        RootDescriptor d = sqrt2();
        FieldElement q = FieldElement::generator(d);
        CHECK(q * q == rat_in(d, "2"));
        CHECK((q * q).is_rational());
        CHECK(elem(d, {"1", "1"}).pow(-1) == elem(d, {"-1", "1"}));
        CHECK(elem(d, {"3", "1"}) * elem(d, {"3", "-1"}) == rat_in(d, "7"));
        CHECK(elem(d, {"1", "1"}).inverse() == elem(d, {"-1", "1"}));
        CHECK(to_string(elem(d, {"3", "-2"})) == "3 - 2*q");
    }

    TEST_CASE("errors") {
        FieldElement x = elem(sqrt2(), {"1", "1"});
        FieldElement y = elem(root("3", 2), {"1", "1"});
        CHECK_THROWS_AS(x + y, usage_error);
        CHECK_THROWS_AS(x / FieldElement::zero(sqrt2()), domain_error);
        CHECK_THROWS_AS(FieldElement::zero(sqrt2()).inverse(), domain_error);
        CHECK_THROWS_AS(FieldElement(sqrt2(), {Q("1")}), usage_error);
    }

    TEST_CASE("higher degree reduction") {
        RootDescriptor d = root("5", 4);
        FieldElement q = FieldElement::generator(d);
        CHECK(q.pow(4) == rat_in(d, "5"));
        CHECK(q.pow(7) == elem(d, {"0", "0", "0", "5"}));
        CHECK(q.pow(-1) == elem(d, {"0", "0", "0", "1/5"}));
        CHECK(q.pow(-5) * q.pow(5) == rat_in(d, "1"));
    }

    TEST_CASE("sign examples") {
        RootDescriptor d = sqrt2();
        CHECK(sign(elem(d, {"0", "0"})) == 0);
        CHECK(sign(elem(d, {"-1", "1"})) == 1);
        CHECK(sign(elem(d, {"3", "-2"})) == 1);
        CHECK(sign(elem(d, {"-3", "2"})) == -1);
        // 99 - 70 sqrt2 ~ 0.00505; 577 - 408 sqrt2 ~ 0.000866
        CHECK(sign(elem(d, {"577", "-408"})) == 1);
        CHECK(sign(elem(d, {"-665857", "470832"})) == -1);
        CHECK(compare(elem(d, {"0", "1"}), rat_in(d, "3/2")) == -1);
    }

    TEST_CASE("sign needs more than 64 bits") {
        // (1 + sqrt2)^-60 is about 1e-23 and positive; its conjugate sign alternates.
        RootDescriptor d = sqrt2();
        FieldElement tiny = elem(d, {"1", "1"}).pow(-60);
        CHECK(sign(tiny) == 1);
        CHECK(sign(-tiny) == -1);
        FieldElement tinier = elem(d, {"-1", "1"}).pow(61);
        CHECK(sign(tinier) == 1);
    }

    TEST_CASE("rational_power_order examples") {
        RootDescriptor d = sqrt2();
        CHECK(rational_power_order(FieldElement::generator(d)) == 2u);
        CHECK_FALSE(rational_power_order(elem(d, {"1", "1"})).has_value());
        CHECK(rational_power_order(rat("3/2")) == 1u);
        CHECK(rational_power_order(elem(root("2", 6), {"0", "0", "1", "0", "0", "0"})) == 3u);
        CHECK_THROWS_AS(rational_power_order(elem(d, {"0", "-1"})), domain_error);
        CHECK_THROWS_AS(rational_power_order(FieldElement::zero(d)), domain_error);
    }

    TEST_CASE("property: field axioms") {
        Gen g(21);
        const RootDescriptor ds[] = {sqrt2(), root("2", 3), root("3", 2), root("5", 4), root("3/2", 3)};
        for (const RootDescriptor& d : ds) {
            for (int i = 0; i < 60; ++i) {
                FieldElement x = g.element(d, 9), y = g.nonzero_element(d, 9), z = g.element(d, 9);
                CHECK((x * y) * z == x * (y * z));
                CHECK(x * (y + z) == x * y + x * z);
                CHECK((x / y) * y == x);
                CHECK(x + y - y == x);
                CHECK(y * y.inverse() == rat_in(d, "1"));
            }
        }
    }

    TEST_CASE("property: sign is multiplicative and matches enclosures") {
        Gen g(22);
        const RootDescriptor ds[] = {sqrt2(), root("2", 3), root("5", 4), root("7/3", 5)};
        for (const RootDescriptor& d : ds) {
            for (int i = 0; i < 80; ++i) {
                FieldElement x = g.element(d, 20), y = g.element(d, 20);
                CHECK(sign(x * y) == sign(x) * sign(y));
                RationalInterval box = enclose(x, 256);
                if (box.lo > 0) CHECK(sign(x) == 1);
                if (box.hi < 0) CHECK(sign(x) == -1);
            }
        }
    }

    TEST_CASE("property: rational_power_order is the least rational power") {
        Gen g(23);
        const RootDescriptor ds[] = {sqrt2(), root("2", 3), root("2", 4), root("3", 6)};
        for (const RootDescriptor& d : ds) {
            for (int i = 0; i < 40; ++i) {
                // monomials c q^i always have an order; random sums rarely do
                FieldElement x = g.coin() ? FieldElement::generator(d).pow(g.range(0, 2 * d.m())) * g.positive_rational(9)
                                          : g.positive_element(d, 9);
                auto j = rational_power_order(x);
                if (j) {
                    CHECK(x.pow(*j).is_rational());
                    for (unsigned k = 1; k < *j; ++k) CHECK_FALSE(x.pow(k).is_rational());
                } else {
                    for (unsigned k = 1; k <= d.m(); ++k) CHECK_FALSE(x.pow(k).is_rational());
                }
            }
        }
    }

    TEST_CASE("lift") {
        FieldElement x = rat("3/2");
        CHECK(lift(x, sqrt2()) == rat_in(sqrt2(), "3/2"));
        CHECK_THROWS_AS(lift(elem(sqrt2(), {"0", "1"}), root("3", 2)), usage_error);
    }
}
