#pragma once

// Reduction of Gaussian rationals modulo primes p = 1 mod 4, where
// Z[i] -> F_p sends i to a fixed square root of -1.

#include <cstdint>
#include <mutex>
#include <optional>
#include <vector>

#include "severi/scalar.hpp"

namespace severi {

struct GaussianPrime {
    std::uint64_t p;
    std::uint64_t root;  // root^2 = -1 mod p
};

namespace detail {

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    b %= p;
    for (; e; e >>= 1, b = b * b % p)
        if (e & 1) r = r * b % p;
    return r;
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

// Deterministic Miller-Rabin for 32-bit moduli.
inline bool is_prime_u32(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL})
        if (n % q == 0) return n == q;
    std::uint64_t d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 7ULL, 61ULL}) {
        if (a % n == 0) continue;
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s && composite; ++r) {
            x = x * x % n;
            composite = x != n - 1;
        }
        if (composite) return false;
    }
    return true;
}

inline std::optional<std::uint64_t> reduce_mod(const Rational& q, std::uint64_t p) {
    const mpz_class pp(static_cast<unsigned long>(p));
    mpz_class den = q.get_den() % pp;
    if (den == 0) return std::nullopt;
    mpz_class num = q.get_num() % pp;
    if (num < 0) num += pp;
    return num.get_ui() * inv_mod(den.get_ui(), p) % p;
}

}  // namespace detail

/// The k-th prime below 2^31 that is 1 mod 4, with its square root of -1.
inline GaussianPrime gaussian_prime(std::size_t k) {
    static std::vector<GaussianPrime> cache;
    static std::mutex lock;
    std::lock_guard<std::mutex> guard(lock);
    std::uint64_t p = cache.empty() ? (1ULL << 31) : cache.back().p;
    while (cache.size() <= k) {
        do {
            --p;
        } while (p % 4 != 1 || !detail::is_prime_u32(p));
        std::uint64_t root = 0;
        for (std::uint64_t c = 2;; ++c) {
            if (detail::pow_mod(c, (p - 1) / 2, p) != p - 1) continue;
            root = detail::pow_mod(c, (p - 1) / 4, p);
            break;
        }
        cache.push_back({p, root});
    }
    return cache[k];
}

/// Image of z in F_p under i -> root.
inline std::optional<std::uint64_t> reduce_mod(const QComplex& z, std::uint64_t p, std::uint64_t root) {
    auto re = detail::reduce_mod(z.re, p), im = detail::reduce_mod(z.im, p);
    if (!re || !im) return std::nullopt;
    return (*re + *im * root) % p;
}

/// Rational number congruent to r mod m with numerator and denominator
/// below sqrt(m / 2), if one exists.
inline std::optional<Rational> rational_reconstruction(const mpz_class& r, const mpz_class& m) {
    mpz_class bound;
    mpz_class half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    mpz_class r0 = m, r1 = r % m, t0 = 0, t1 = 1;
    if (r1 < 0) r1 += m;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0 || abs(t1) > bound) return std::nullopt;
    mpz_class g = gcd(r1, t1);
    if (g != 1) return std::nullopt;
    Rational q(r1, t1);
    q.canonicalize();
    return q;
}

}  // namespace severi
