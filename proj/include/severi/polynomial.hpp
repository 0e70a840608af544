#pragma once

// Ternary forms, their affine charts, and monomial bookkeeping.
//
// Monomials of degree d are laid out in graded-lexicographic order
// X^d, X^{d-1}Y, X^{d-1}Z, X^{d-2}Y^2, ..., Z^d. Every coefficient vector and
// every Jacobian column block downstream uses this layout.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "severi/scalar.hpp"
#include "severi/univariate.hpp"

namespace severi {

struct Exponent {
    int i = 0;  // X
    int j = 0;  // Y
    int k = 0;  // Z
    int total() const { return i + j + k; }
    friend bool operator==(const Exponent&, const Exponent&) = default;
};

/// L_d = d(d+3)/2, the dimension of the space of degree-d plane curves.
inline long l_d(long d) {
    if (d < 0) throw Error("degree must be non-negative");
    return d * (d + 3) / 2;
}

/// Number of degree-d monomials in three variables, L_d + 1.
inline long monomial_count(long d) {
    if (d < 0) throw Error("degree must be non-negative");
    return (d + 1) * (d + 2) / 2;
}

inline std::size_t monomial_index(int d, int i, int j) {
    const int a = d - i;
    return static_cast<std::size_t>(a * (a + 1) / 2 + (a - j));
}
inline std::size_t monomial_index(int d, const Exponent& e) { return monomial_index(d, e.i, e.j); }

inline std::vector<Exponent> monomials(int d) {
    std::vector<Exponent> out;
    if (d < 0) return out;
    out.reserve(monomial_count(d));
    for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j});
    return out;
}

enum class Variable { X = 0, Y = 1, Z = 2 };

inline char variable_name(Variable v) { return "XYZ"[static_cast<int>(v)]; }

/// An affine chart {V = 1}. The two remaining homogeneous variables, in
/// X, Y, Z order, become the affine coordinates (u, v).
struct Chart {
    Variable fixed = Variable::Z;
    std::array<int, 2> free_indices() const {
        switch (fixed) {
            case Variable::X: return {1, 2};
            case Variable::Y: return {0, 2};
            default: return {0, 1};
        }
    }
    friend bool operator==(const Chart&, const Chart&) = default;
};

inline std::string to_string(const Chart& c) { return std::string(1, variable_name(c.fixed)); }

/// Dense bivariate polynomial with total degree <= bound. The zero
/// polynomial is allowed.
template <ScalarField S>
class AffinePolynomial {
public:
    AffinePolynomial() : AffinePolynomial(0) {}
    explicit AffinePolynomial(int bound) : bound_(bound), c_((bound + 1) * (bound + 1), from_int<S>(0)) {
        if (bound < 0) throw Error("negative degree bound");
    }

    int bound() const { return bound_; }
    const S& at(int a, int b) const { return c_[a * (bound_ + 1) + b]; }
    S& at(int a, int b) {
        if (a < 0 || b < 0 || a + b > bound_) throw Error("affine monomial exceeds degree bound");
        return c_[a * (bound_ + 1) + b];
    }

    bool is_zero() const {
        for (const auto& v : c_)
            if (!severi::is_zero(v)) return false;
        return true;
    }

    int total_degree() const {
        int deg = -1;
        for (int a = 0; a <= bound_; ++a)
            for (int b = 0; a + b <= bound_; ++b)
                if (!severi::is_zero(at(a, b))) deg = std::max(deg, a + b);
        return deg;
    }

    S eval(const S& u, const S& v) const {
        // Horner in v for each power of u.
        S acc = from_int<S>(0);
        for (int a = bound_; a >= 0; --a) {
            S inner = from_int<S>(0);
            for (int b = bound_ - a; b >= 0; --b) {
                inner *= v;
                inner += at(a, b);
            }
            acc *= u;
            acc += inner;
        }
        return acc;
    }

    /// Derivative in the first (which = 0) or second (which = 1) coordinate.
    AffinePolynomial derivative(int which) const {
        AffinePolynomial out(std::max(bound_ - 1, 0));
        for (int a = 0; a <= bound_; ++a)
            for (int b = 0; a + b <= bound_; ++b) {
                if (severi::is_zero(at(a, b))) continue;
                if (which == 0 && a > 0) out.at(a - 1, b) = at(a, b) * from_int<S>(a);
                if (which == 1 && b > 0) out.at(a, b - 1) = at(a, b) * from_int<S>(b);
            }
        return out;
    }

    /// Coefficients of v^b as polynomials in u.
    std::vector<UniPoly<S>> as_poly_in_v() const {
        std::vector<UniPoly<S>> out(bound_ + 1);
        for (int b = 0; b <= bound_; ++b) {
            std::vector<S> col(bound_ - b + 1);
            for (int a = 0; a + b <= bound_; ++a) col[a] = at(a, b);
            out[b] = UniPoly<S>(std::move(col));
        }
        while (!out.empty() && out.back().is_zero()) out.pop_back();
        return out;
    }

    /// Restriction u = u0, as a polynomial in v.
    UniPoly<S> restrict_u(const S& u0) const {
        std::vector<S> col(bound_ + 1, from_int<S>(0));
        for (int b = 0; b <= bound_; ++b) {
            S acc = from_int<S>(0);
            for (int a = bound_ - b; a >= 0; --a) {
                acc *= u0;
                acc += at(a, b);
            }
            col[b] = acc;
        }
        return UniPoly<S>(std::move(col));
    }

    AffinePolynomial<Complex> to_float() const {
        AffinePolynomial<Complex> out(bound_);
        for (int a = 0; a <= bound_; ++a)
            for (int b = 0; a + b <= bound_; ++b) out.at(a, b) = to_complex(at(a, b));
        return out;
    }

    friend bool operator==(const AffinePolynomial& x, const AffinePolynomial& y) {
        const int m = std::max(x.bound_, y.bound_);
        for (int a = 0; a <= m; ++a)
            for (int b = 0; a + b <= m; ++b) {
                S zero = from_int<S>(0);
                const S& p = (a + b <= x.bound_) ? x.at(a, b) : zero;
                const S& q = (a + b <= y.bound_) ? y.at(a, b) : zero;
                if (!(p == q)) return false;
            }
        return true;
    }

private:
    int bound_;
    std::vector<S> c_;
};

/// A nonzero ternary form of fixed degree; a point of P^{L_d}.
template <ScalarField S>
class HomogeneousPolynomial {
public:
    HomogeneousPolynomial(int degree, std::vector<S> coefficients) : d_(degree), c_(std::move(coefficients)) {
        if (d_ < 0) throw Error("degree must be non-negative");
        if (static_cast<long>(c_.size()) != monomial_count(d_))
            throw Error("coefficient vector has " + std::to_string(c_.size()) + " entries, degree " + std::to_string(d_) +
                        " needs " + std::to_string(monomial_count(d_)));
        bool nonzero = false;
        for (const auto& v : c_) nonzero = nonzero || !severi::is_zero(v);
        if (!nonzero) throw Error("the zero form does not define a curve");
    }

    /// Builds from (exponent, coefficient) terms; repeated exponents add.
    static HomogeneousPolynomial from_terms(int degree, const std::vector<std::pair<Exponent, S>>& terms) {
        std::vector<S> c(monomial_count(degree), from_int<S>(0));
        for (const auto& [e, v] : terms) {
            if (e.i < 0 || e.j < 0 || e.k < 0 || e.total() != degree)
                throw Error("exponent (" + std::to_string(e.i) + "," + std::to_string(e.j) + "," + std::to_string(e.k) +
                            ") does not have total degree " + std::to_string(degree));
            c[monomial_index(degree, e)] += v;
        }
        return HomogeneousPolynomial(degree, std::move(c));
    }

    int degree() const { return d_; }
    const std::vector<S>& coefficients() const { return c_; }
    const S& coeff(const Exponent& e) const { return c_[monomial_index(d_, e)]; }

    S eval(const S& x, const S& y, const S& z) const { return eval_direct(x, y, z); }

    S eval(const std::array<S, 3>& p) const { return eval_direct(p[0], p[1], p[2]); }

    /// Formal partial derivative; nullopt when it vanishes identically.
    std::optional<HomogeneousPolynomial> partial(Variable var) const {
        if (d_ == 0) throw Error("derivative of a degree-0 form");
        std::vector<S> out(monomial_count(d_ - 1), from_int<S>(0));
        bool nonzero = false;
        for (const auto& e : monomials(d_)) {
            const S& v = coeff(e);
            if (severi::is_zero(v)) continue;
            Exponent t = e;
            int power = 0;
            switch (var) {
                case Variable::X: power = t.i--; break;
                case Variable::Y: power = t.j--; break;
                case Variable::Z: power = t.k--; break;
            }
            if (power == 0) continue;
            out[monomial_index(d_ - 1, t)] = v * from_int<S>(power);
            nonzero = true;
        }
        if (!nonzero) return std::nullopt;
        return HomogeneousPolynomial(d_ - 1, std::move(out));
    }

    /// Values of (F_X, F_Y, F_Z) at p, without materializing the partials.
    std::array<S, 3> gradient(const std::array<S, 3>& p) const {
        std::array<S, 3> g{from_int<S>(0), from_int<S>(0), from_int<S>(0)};
        if (d_ == 0) return g;
        std::array<std::vector<S>, 3> pw;
        for (int v = 0; v < 3; ++v) {
            pw[v].resize(d_ + 1);
            pw[v][0] = from_int<S>(1);
            for (int e = 1; e <= d_; ++e) pw[v][e] = pw[v][e - 1] * p[v];
        }
        for (const auto& e : monomials(d_)) {
            const S& v = coeff(e);
            if (severi::is_zero(v)) continue;
            if (e.i > 0) g[0] += v * from_int<S>(e.i) * pw[0][e.i - 1] * pw[1][e.j] * pw[2][e.k];
            if (e.j > 0) g[1] += v * from_int<S>(e.j) * pw[0][e.i] * pw[1][e.j - 1] * pw[2][e.k];
            if (e.k > 0) g[2] += v * from_int<S>(e.k) * pw[0][e.i] * pw[1][e.j] * pw[2][e.k - 1];
        }
        return g;
    }

    AffinePolynomial<S> dehomogenize(Chart chart) const {
        AffinePolynomial<S> out(d_);
        const auto fi = chart.free_indices();
        for (const auto& e : monomials(d_)) {
            const std::array<int, 3> ex{e.i, e.j, e.k};
            out.at(ex[fi[0]], ex[fi[1]]) += coeff(e);
        }
        return out;
    }

    static HomogeneousPolynomial homogenize(const AffinePolynomial<S>& f, int degree, Chart chart = {Variable::Z}) {
        if (f.total_degree() > degree) throw Error("affine polynomial exceeds target degree");
        std::vector<S> c(monomial_count(degree), from_int<S>(0));
        const auto fi = chart.free_indices();
        for (int a = 0; a <= f.bound(); ++a)
            for (int b = 0; a + b <= f.bound(); ++b) {
                if (severi::is_zero(f.at(a, b))) continue;
                std::array<int, 3> ex{};
                ex[fi[0]] = a;
                ex[fi[1]] = b;
                ex[static_cast<int>(chart.fixed)] = degree - a - b;
                c[monomial_index(degree, ex[0], ex[1])] = f.at(a, b);
            }
        return HomogeneousPolynomial(degree, std::move(c));
    }

    HomogeneousPolynomial scaled(const S& s) const {
        std::vector<S> c = c_;
        for (auto& v : c) v *= s;
        return HomogeneousPolynomial(d_, std::move(c));
    }

    HomogeneousPolynomial<Complex> to_float() const {
        std::vector<Complex> c;
        c.reserve(c_.size());
        for (const auto& v : c_) c.push_back(to_complex(v));
        return HomogeneousPolynomial<Complex>(d_, std::move(c));
    }

    friend HomogeneousPolynomial operator*(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
        const int d = a.d_ + b.d_;
        std::vector<S> c(monomial_count(d), from_int<S>(0));
        const auto ma = monomials(a.d_);
        const auto mb = monomials(b.d_);
        for (std::size_t s = 0; s < ma.size(); ++s) {
            if (severi::is_zero(a.c_[s])) continue;
            for (std::size_t t = 0; t < mb.size(); ++t) {
                if (severi::is_zero(b.c_[t])) continue;
                c[monomial_index(d, ma[s].i + mb[t].i, ma[s].j + mb[t].j)] += a.c_[s] * b.c_[t];
            }
        }
        return HomogeneousPolynomial(d, std::move(c));
    }

    friend bool operator==(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
        return a.d_ == b.d_ && a.c_ == b.c_;
    }

    /// F(T u): substitutes X = T[0]·u, Y = T[1]·u, Z = T[2]·u.
    HomogeneousPolynomial substitute_linear(const std::array<std::array<S, 3>, 3>& t) const {
        // powers[v][e] = (row v of T · u)^e as a dense coefficient vector of degree e.
        std::array<std::vector<std::vector<S>>, 3> powers;
        for (int v = 0; v < 3; ++v) {
            powers[v].resize(d_ + 1);
            powers[v][0] = {from_int<S>(1)};
            for (int e = 1; e <= d_; ++e) powers[v][e] = multiply_dense(powers[v][e - 1], e - 1, {t[v][0], t[v][1], t[v][2]}, 1);
        }
        std::vector<S> out(monomial_count(d_), from_int<S>(0));
        for (const auto& e : monomials(d_)) {
            const S& v = coeff(e);
            if (severi::is_zero(v)) continue;
            auto xy = multiply_dense(powers[0][e.i], e.i, powers[1][e.j], e.j);
            auto xyz = multiply_dense(xy, e.i + e.j, powers[2][e.k], e.k);
            for (std::size_t m = 0; m < xyz.size(); ++m)
                if (!severi::is_zero(xyz[m])) out[m] += v * xyz[m];
        }
        return HomogeneousPolynomial(d_, std::move(out));
    }

private:
    S eval_direct(const S& x, const S& y, const S& z) const {
        S acc = from_int<S>(0);
        for (const auto& e : monomials(d_)) {
            const S& v = coeff(e);
            if (severi::is_zero(v)) continue;
            acc += v * ipow(x, e.i) * ipow(y, e.j) * ipow(z, e.k);
        }
        return acc;
    }

    static std::vector<S> multiply_dense(const std::vector<S>& a, int da, const std::vector<S>& b, int db) {
        const auto ma = monomials(da);
        const auto mb = monomials(db);
        std::vector<S> c(monomial_count(da + db), from_int<S>(0));
        for (std::size_t s = 0; s < ma.size(); ++s) {
            if (severi::is_zero(a[s])) continue;
            for (std::size_t t = 0; t < mb.size(); ++t) {
                if (severi::is_zero(b[t])) continue;
                c[monomial_index(da + db, ma[s].i + mb[t].i, ma[s].j + mb[t].j)] += a[s] * b[t];
            }
        }
        return c;
    }

    int d_;
    std::vector<S> c_;
};

using ExactForm = HomogeneousPolynomial<QComplex>;
using FloatForm = HomogeneousPolynomial<Complex>;

}  // namespace severi
