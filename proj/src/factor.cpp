#include "progcover/factor.hpp"

#include "progcover/errors.hpp"

#include <numeric>
#include <vector>

namespace progcover {

namespace {

constexpr std::uint32_t kTrialLimit = 1u << 16;

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kTrialLimit + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t{i} * i; j <= kTrialLimit; j += i) {
                composite[j] = true;
            }
        }
        return out;
    }();
    return primes;
}

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    return result;
}

// Brent's variant of Pollard rho; n odd composite.
std::uint64_t rho_split(std::uint64_t n) {
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
        std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
        std::uint64_t r = 1;
        constexpr std::uint64_t batch = 128;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += batch;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_u64(std::uint64_t n, FactorMap::Entries& out, long sign) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += sign;
        return;
    }
    const std::uint64_t d = rho_split(n);
    factor_u64(d, out, sign);
    factor_u64(n / d, out, sign);
}

void factor_integer(Integer n, FactorMap::Entries& out, long sign) {
    for (std::uint32_t p : small_primes()) {
        if (Integer(p) * p > n) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            Integer rest;
            const auto e = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), Integer(p).get_mpz_t());
            out[p] += sign * static_cast<long>(e);
            n = rest;
        }
    }
    if (n == 1) return;
    if (!n.fits_ulong_p()) {
        throw domain_error("cofactor " + n.get_str() + " exceeds 64 bits; factorisation not supported");
    }
    factor_u64(n.get_ui(), out, sign);
}

} // namespace

FactorMap::FactorMap(Entries entries) {
    for (const auto& [p, e] : entries) add(p, e);
}

long FactorMap::exponent(std::uint64_t p) const {
    const auto it = entries_.find(p);
    return it == entries_.end() ? 0 : it->second;
}

void FactorMap::add(std::uint64_t p, long e) {
    if (e == 0) return;
    const long updated = (entries_[p] += e);
    if (updated == 0) entries_.erase(p);
}

FactorMap& FactorMap::operator+=(const FactorMap& other) {
    for (const auto& [p, e] : other.entries_) add(p, e);
    return *this;
}

FactorMap FactorMap::scaled(long k) const {
    FactorMap out;
    for (const auto& [p, e] : entries_) out.add(p, e * k);
    return out;
}

long FactorMap::exponent_gcd() const {
    long g = 0;
    for (const auto& [p, e] : entries_) g = std::gcd(g, e);
    return g;
}

Rational FactorMap::value() const {
    Integer num = 1;
    Integer den = 1;
    for (const auto& [p, e] : entries_) {
        if (e > 0) num *= pow(Integer(p), static_cast<unsigned long>(e));
        else den *= pow(Integer(p), static_cast<unsigned long>(-e));
    }
    return Rational(num, den);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic witness set for all 64-bit n
    for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

FactorMap factorize(const Rational& x) {
    if (sgn(x) <= 0) {
        throw domain_error("factorize: argument must be positive, got " + to_string(x));
    }
    FactorMap::Entries entries;
    factor_integer(x.get_num(), entries, +1);
    factor_integer(x.get_den(), entries, -1);
    return FactorMap(std::move(entries));
}

long valuation(std::uint64_t p, const Rational& x) {
    if (!is_prime(p)) {
        throw domain_error("valuation: " + std::to_string(p) + " is not prime");
    }
    if (x == 0) {
        throw domain_error("valuation: the valuation of 0 is infinite");
    }
    const Integer prime(p);
    Integer rest;
    const long up = static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_num_mpz_t(), prime.get_mpz_t()));
    const long down = static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_den_mpz_t(), prime.get_mpz_t()));
    return up - down;
}

bool is_squarefree_integer(const Rational& x) {
    if (!is_integer(x) || sgn(x) <= 0) return false;
    const FactorMap f = factorize(x);
    for (const auto& [p, e] : f.entries()) {
        if (e != 1) return false;
    }
    return true;
}

} // namespace progcover
