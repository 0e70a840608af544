#pragma once

// Dense univariate polynomials over either scalar mode.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "severi/modular.hpp"
#include "severi/scalar.hpp"

namespace severi {

template <ScalarField S>
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<S> ascending) : c_(std::move(ascending)) { trim(); }
    static UniPoly constant(S v) { return UniPoly(std::vector<S>{std::move(v)}); }
    static UniPoly monomial(S v, int power) {
        std::vector<S> c(power + 1, from_int<S>(0));
        c[power] = std::move(v);
        return UniPoly(std::move(c));
    }
    /// z - root
    static UniPoly linear_root(const S& root) { return UniPoly(std::vector<S>{-root, from_int<S>(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<S>& coefficients() const { return c_; }
    S coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : from_int<S>(0); }
    const S& leading() const { return c_.back(); }

    S eval(const S& z) const {
        S acc = from_int<S>(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc *= z;
            acc += *it;
        }
        return acc;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<S> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * from_int<S>(static_cast<long>(k));
        return UniPoly(std::move(d));
    }

    UniPoly monic() const {
        if (is_zero()) return {};
        std::vector<S> c = c_;
        S lc = c.back();
        for (auto& v : c) v /= lc;
        return UniPoly(std::move(c));
    }

    UniPoly<Complex> to_float() const {
        std::vector<Complex> c;
        c.reserve(c_.size());
        for (const auto& v : c_) c.push_back(to_complex(v));
        return UniPoly<Complex>(std::move(c));
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<S> c(std::max(a.c_.size(), b.c_.size()), from_int<S>(0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
        return UniPoly(std::move(c));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<S> c(std::max(a.c_.size(), b.c_.size()), from_int<S>(0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
        return UniPoly(std::move(c));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<S> c(a.c_.size() + b.c_.size() - 1, from_int<S>(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (severi::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(c));
    }
    friend UniPoly operator*(const S& s, UniPoly p) {
        for (auto& v : p.c_) v *= s;
        p.trim();
        return p;
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    /// Euclidean division over the field; returns {quotient, remainder}.
    friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw Error("polynomial division by zero");
        std::vector<S> r = a.c_;
        const int db = b.degree();
        if (a.degree() < db) return {UniPoly{}, a};
        std::vector<S> q(a.degree() - db + 1, from_int<S>(0));
        const S& lb = b.leading();
        for (int k = a.degree(); k >= db; --k) {
            if (severi::is_zero(r[k])) continue;
            S f = r[k] / lb;
            for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.c_[j];
            if constexpr (!is_exact_v<S>) r[k] = S{};
            q[k - db] = std::move(f);
        }
        r.resize(db);
        return {UniPoly(std::move(q)), UniPoly(std::move(r))};
    }

private:
    void trim() {
        while (!c_.empty() && severi::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<S> c_;
};

namespace detail {

using ModPoly = std::vector<std::uint64_t>;  // ascending coefficients in F_p

inline void trim_mod(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ModPoly gcd_mod(ModPoly a, ModPoly b, std::uint64_t p) {
    trim_mod(a);
    trim_mod(b);
    while (!b.empty()) {
        const std::uint64_t inv = inv_mod(b.back(), p);
        for (int k = static_cast<int>(a.size()) - 1; k >= static_cast<int>(b.size()) - 1; --k) {
            if (a[k] == 0) continue;
            const std::uint64_t f = a[k] * inv % p;
            const int shift = k - static_cast<int>(b.size()) + 1;
            for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + (p - f) * b[j]) % p;
        }
        a.resize(b.size() - 1);
        trim_mod(a);
        std::swap(a, b);
    }
    if (!a.empty()) {
        const std::uint64_t inv = inv_mod(a.back(), p);
        for (auto& v : a) v = v * inv % p;
    }
    return a;
}

inline std::optional<ModPoly> image_mod(const UniPoly<QComplex>& f, std::uint64_t p, std::uint64_t root) {
    ModPoly out;
    for (const auto& c : f.coefficients()) {
        auto v = reduce_mod(c, p, root);
        if (!v) return std::nullopt;
        out.push_back(*v);
    }
    if (out.back() == 0) return std::nullopt;
    return out;
}

/// Gcd from its images under both embeddings Z[i] -> F_p, lifted by CRT and
/// rational reconstruction. The modular degree bounds the true degree from
/// above, so a lift dividing both inputs is the gcd.
inline std::optional<UniPoly<QComplex>> modular_gcd(const UniPoly<QComplex>& a, const UniPoly<QComplex>& b,
                                                    std::size_t max_primes = 96) {
    int best = std::numeric_limits<int>::max();
    std::vector<mpz_class> re, im;
    mpz_class modulus = 1;
    std::optional<UniPoly<QComplex>> previous;
    for (std::size_t k = 0; k < max_primes; ++k) {
        const auto [p, s] = gaussian_prime(k);
        auto ap = image_mod(a, p, s), am = image_mod(a, p, p - s);
        auto bp = image_mod(b, p, s), bm = image_mod(b, p, p - s);
        if (!ap || !am || !bp || !bm) continue;
        ModPoly gp = gcd_mod(*ap, *bp, p), gm = gcd_mod(*am, *bm, p);
        if (gp.size() != gm.size()) continue;
        const int deg = static_cast<int>(gp.size()) - 1;
        if (deg == 0) return UniPoly<QComplex>::constant(QComplex(1));
        if (deg > best) continue;
        if (deg < best) {
            best = deg;
            re.assign(gp.size(), mpz_class(0));
            im.assign(gp.size(), mpz_class(0));
            modulus = 1;
            previous.reset();
        }
        const std::uint64_t inv2 = inv_mod(2, p), inv2s = inv_mod(2 * s % p, p);
        const mpz_class pz(static_cast<unsigned long>(p));
        const mpz_class mod_p = modulus % pz;
        const std::uint64_t minv = inv_mod(mod_p.get_ui(), p);
        auto lift = [&](mpz_class& acc, std::uint64_t r) {
            mpz_class cur = acc % pz;
            std::uint64_t diff = (r + p - cur.get_ui()) % p;
            acc += modulus * mpz_class(static_cast<unsigned long>(diff * minv % p));
        };
        for (std::size_t j = 0; j < gp.size(); ++j) {
            lift(re[j], (gp[j] + gm[j]) % p * inv2 % p);
            lift(im[j], (gp[j] + p - gm[j]) % p * inv2s % p);
        }
        modulus *= pz;
        std::vector<QComplex> c;
        bool ok = true;
        for (std::size_t j = 0; j < gp.size() && ok; ++j) {
            auto x = rational_reconstruction(re[j], modulus), y = rational_reconstruction(im[j], modulus);
            ok = x && y;
            if (ok) c.emplace_back(*x, *y);
        }
        if (!ok) {
            previous.reset();
            continue;
        }
        UniPoly<QComplex> h(std::move(c));
        if (previous && *previous == h && divmod(a, h).second.is_zero() && divmod(b, h).second.is_zero()) return h;
        previous = std::move(h);
    }
    return std::nullopt;
}

}  // namespace detail

/// Monic gcd. Exact mode only: floating gcd is ill-posed.
inline UniPoly<QComplex> gcd(UniPoly<QComplex> a, UniPoly<QComplex> b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.degree() == 0 || b.degree() == 0) return UniPoly<QComplex>::constant(QComplex(1));
    if (auto g = detail::modular_gcd(a, b)) return *g;
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

inline UniPoly<QComplex> squarefree_part(const UniPoly<QComplex>& p) {
    if (p.degree() <= 0) return p.monic();
    return divmod(p, gcd(p, p.derivative())).first.monic();
}

/// Yun's algorithm: returns factors a_1, a_2, ... with p = lc * prod a_k^k.
inline std::vector<UniPoly<QComplex>> squarefree_decomposition(const UniPoly<QComplex>& p) {
    std::vector<UniPoly<QComplex>> out;
    if (p.degree() <= 0) return out;
    auto dp = p.derivative();
    auto a = gcd(p, dp);
    auto b = divmod(p, a).first;
    auto c = divmod(dp, a).first;
    auto d = c - b.derivative();
    while (b.degree() > 0) {
        auto g = gcd(b, d);
        out.push_back(g);
        b = divmod(b, g).first;
        c = divmod(d, g).first;
        d = c - b.derivative();
    }
    return out;
}

}  // namespace severi
