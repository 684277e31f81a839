#include "progcover/rational.hpp"

#include "progcover/errors.hpp"

#include <algorithm>
#include <cctype>

namespace progcover {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(),
                                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
        throw usage_error("malformed rational literal '" + std::string(text) + "'");
    }
    Integer n(std::string(num), 10);
    Integer d(std::string(den), 10);
    if (d == 0) {
        throw usage_error("zero denominator in rational literal '" + std::string(text) + "'");
    }
    Rational out(negative ? Integer(-n) : n, d);
    out.canonicalize();
    return out;
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) {
    if (x.get_den() == 1) {
        return x.get_num().get_str();
    }
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) {
        throw domain_error("zero denominator");
    }
    Rational out(num, den);
    out.canonicalize();
    return out;
}

Rational rational_gcd(const Rational& x, const Rational& y) {
    Integer num;
    Integer den;
    mpz_gcd(num.get_mpz_t(), x.get_num_mpz_t(), y.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), x.get_den_mpz_t(), y.get_den_mpz_t());
    if (num == 0) {
        return Rational(0);
    }
    Rational g(num, den);
    g.canonicalize();
    return g;
}

Integer pow(const Integer& base, unsigned long exponent) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

Rational pow(const Rational& base, long exponent) {
    if (exponent < 0) {
        if (base == 0) {
            throw domain_error("zero raised to a negative power");
        }
        return pow(Rational(1 / base), -exponent);
    }
    const auto e = static_cast<unsigned long>(exponent);
    Rational out(pow(Integer(base.get_num()), e), pow(Integer(base.get_den()), e));
    // already reduced: powers of coprime integers stay coprime
    return out;
}

std::optional<long> to_long(const Rational& x) {
    if (!is_integer(x) || !x.get_num().fits_slong_p()) {
        return std::nullopt;
    }
    return x.get_num().get_si();
}

} // namespace progcover
