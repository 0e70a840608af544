#pragma once

// Intersection of two plane curves: points with multiplicities from the
// resultant in a generic frame, and the Bézout total.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "severi/curve.hpp"
#include "severi/univariate.hpp"

namespace severi {

struct IntersectionPoint {
    FloatPoint point;
    int multiplicity = 1;
    bool transversal = false;
    std::optional<ExactPoint> exact_point;
};

struct BezoutResult {
    int total = 0;
    int expected = 0;  // d1 * d2
    std::vector<IntersectionPoint> points;
    bool pass() const { return total == expected; }
};

class CommonComponent : public Error {
public:
    CommonComponent() : Error("common component: the resultant vanishes identically") {}
};

namespace detail {

using FrameMatrix = std::array<std::array<QComplex, 3>, 3>;

template <ScalarField S>
std::array<std::array<S, 3>, 3> frame_as(const FrameMatrix& t) {
    std::array<std::array<S, 3>, 3> out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            if constexpr (is_exact_v<S>)
                out[r][c] = t[r][c];
            else
                out[r][c] = t[r][c].to_complex();
        }
    return out;
}

/// The point above x0 where both frame polynomials vanish, if unique.
inline std::optional<Complex> common_fiber_point(const AffinePolynomial<Complex>& g1, const AffinePolynomial<Complex>& g2,
                                                 Complex x0) {
    auto fiber = g1.restrict_u(x0);
    if (fiber.degree() <= 0) return std::nullopt;
    const auto ys = polynomial_roots(fiber);
    auto f2 = g2.restrict_u(x0);
    double scale = 0.0;
    for (int k = 0; k <= f2.degree(); ++k) scale += std::abs(f2.coeff(k));
    std::vector<double> val;
    double best = std::numeric_limits<double>::infinity();
    for (auto y : ys) {
        double w = std::abs(f2.eval(y)) / (scale * std::max(1.0, std::pow(std::abs(y), f2.degree())));
        val.push_back(w);
        best = std::min(best, w);
    }
    if (!(best < 1e-5)) return std::nullopt;
    std::optional<Complex> hit;
    for (std::size_t s = 0; s < ys.size(); ++s) {
        if (val[s] > std::max(1e3 * best, 1e-9)) continue;
        if (hit && std::abs(*hit - ys[s]) > 1e-4 * std::max(1.0, std::abs(ys[s]))) return std::nullopt;
        if (!hit) hit = ys[s];
    }
    return hit;
}

inline bool nearly_parallel(const std::array<Complex, 3>& a, const std::array<Complex, 3>& b, double tol) {
    std::vector<Complex> va(a.begin(), a.end()), vb(b.begin(), b.end());
    return fs_distance(va, vb) < tol;
}

inline void mark_transversality(const FloatCurve& c1, const FloatCurve& c2, IntersectionPoint& ip) {
    auto g1 = c1.form().gradient(ip.point.coords());
    auto g2 = c2.form().gradient(ip.point.coords());
    auto small = [](const std::array<Complex, 3>& g, const FloatCurve& c) {
        double r = 0.0;
        for (auto v : g) r = std::max(r, std::abs(v));
        return r <= 1e-8 * c.max_coefficient_modulus();
    };
    ip.transversal = ip.multiplicity == 1 && !small(g1, c1) && !small(g2, c2) && !nearly_parallel(g1, g2, 1e-8);
}

inline std::optional<ExactPoint> exact_common_point(const ExactCurve& a, const ExactCurve& b, const FloatPoint& p) {
    for (int pivot = 0; pivot < 3; ++pivot) {
        if (std::abs(p[pivot]) < 0.1) continue;
        std::array<QComplex, 3> q;
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
            Complex v = p[i] / p[pivot];
            Rational re = rational_approximation(v.real(), 100'000);
            Rational im = rational_approximation(v.imag(), 100'000);
            ok = std::abs(re.get_d() - v.real()) < 1e-7 && std::abs(im.get_d() - v.imag()) < 1e-7;
            q[i] = QComplex(re, im);
        }
        if (ok && a.form().eval(q).is_zero() && b.form().eval(q).is_zero()) return ExactPoint(q);
    }
    return std::nullopt;
}

inline bool common_point_at_infinity_float(const FloatForm& g1, const FloatForm& g2) {
    auto rel = [](const FloatForm& g, const std::array<Complex, 3>& u) {
        double s = 0.0;
        for (const auto& c : g.coefficients()) s = std::max(s, std::abs(c));
        double nu = 0.0;
        for (auto v : u) nu = std::max(nu, std::abs(v));
        return std::abs(g.eval(u)) / (s * std::pow(nu, g.degree()));
    };
    if (rel(g1, {1.0, 0.0, 0.0}) < 1e-8 && rel(g2, {1.0, 0.0, 0.0}) < 1e-8) return true;
    std::vector<Complex> h(g1.degree() + 1, 0.0);
    for (const auto& e : monomials(g1.degree()))
        if (e.k == 0) h[e.i] = g1.coeff(e);
    UniPoly<Complex> r1(std::move(h));
    if (r1.degree() <= 0) return false;
    for (auto x : polynomial_roots(r1))
        if (rel(g2, {x, 1.0, 0.0}) < 1e-8) return true;
    return false;
}

}  // namespace detail

/// Exact mode: multiplicities from a squarefree decomposition of the exact
/// resultant. Float mode: multiplicities are sizes of root clusters.
template <ScalarField S>
BezoutResult bezout_count(const PlaneCurve<S>& c1, const PlaneCurve<S>& c2) {
    BezoutResult out;
    out.expected = c1.degree() * c2.degree();
    const FloatCurve f1 = c1.to_float(), f2 = c2.to_float();
    for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
        const auto t = detail::random_frame_matrix(attempt);
        const auto ts = detail::frame_as<S>(t);
        auto g1 = c1.form().substitute_linear(ts);
        auto g2 = c2.form().substitute_linear(ts);
        const auto a1 = g1.dehomogenize({Variable::Z}), a2 = g2.dehomogenize({Variable::Z});
        // (x-root, multiplicity)
        std::vector<std::pair<Complex, int>> xs;
        if constexpr (is_exact_v<S>) {
            if (!detail::is_monic_frame(g1) || !detail::is_monic_frame(g2)) continue;
            auto r = resultant_v(a1, a2);
            if (r.is_zero()) throw CommonComponent();
            if (gcd(detail::at_infinity(g1), detail::at_infinity(g2)).degree() > 0) continue;
            const auto e100 = [](const ExactForm& g) { return g.eval(QComplex(1), QComplex(0), QComplex(0)); };
            if (e100(g1).is_zero() && e100(g2).is_zero()) continue;
            auto parts = squarefree_decomposition(r);
            for (std::size_t m = 0; m < parts.size(); ++m)
                if (parts[m].degree() > 0)
                    for (auto x : polynomial_roots(parts[m].to_float())) xs.emplace_back(x, static_cast<int>(m + 1));
        } else {
            const double s1 = f1.max_coefficient_modulus(), s2 = f2.max_coefficient_modulus();
            if (std::abs(g1.coeff({0, g1.degree(), 0})) < 1e-6 * s1 || std::abs(g2.coeff({0, g2.degree(), 0})) < 1e-6 * s2)
                continue;
            if (detail::common_point_at_infinity_float(g1, g2)) continue;
            auto r = resultant_v(a1, a2);
            if (r.degree() < 0) throw CommonComponent();
            for (const auto& grp : cluster_roots(polynomial_roots(r), 1e-5)) xs.emplace_back(grp.center, grp.count);
        }
        const auto a1f = a1.to_float(), a2f = a2.to_float();
        std::vector<IntersectionPoint> pts;
        bool generic = true;
        for (const auto& [x0, mult] : xs) {
            auto y = detail::common_fiber_point(a1f, a2f, x0);
            if (!y) {
                generic = false;
                break;
            }
            IntersectionPoint ip{FloatPoint(detail::apply_frame(t, {x0, *y, 1.0})), mult};
            if constexpr (is_exact_v<S>) ip.exact_point = detail::exact_common_point(c1, c2, ip.point);
            detail::mark_transversality(f1, f2, ip);
            pts.push_back(ip);
        }
        if (!generic) continue;
        std::sort(pts.begin(), pts.end(),
                  [](const IntersectionPoint& a, const IntersectionPoint& b) { return detail::point_less(a.point, b.point); });
        out.points = std::move(pts);
        out.total = 0;
        for (const auto& p : out.points) out.total += p.multiplicity;
        return out;
    }
    throw Error("intersection solver found no generic frame");
}

/// f(p + t q): the restriction of a form to a parametrized line.
template <ScalarField S>
UniPoly<Complex> restrict_to_line(const HomogeneousPolynomial<S>& f, const std::array<Complex, 3>& p,
                                  const std::array<Complex, 3>& q) {
    const int d = f.degree();
    std::array<std::vector<UniPoly<Complex>>, 3> powers;
    for (int v = 0; v < 3; ++v) {
        powers[v].push_back(UniPoly<Complex>::constant(1.0));
        UniPoly<Complex> lin(std::vector<Complex>{p[v], q[v]});
        for (int k = 1; k <= d; ++k) powers[v].push_back(powers[v].back() * lin);
    }
    UniPoly<Complex> acc;
    for (const auto& e : monomials(d)) {
        const Complex c = to_complex(f.coeff(e));
        if (c == 0.0) continue;
        acc = acc + c * (powers[0][e.i] * powers[1][e.j] * powers[2][e.k]);
    }
    return acc;
}

}  // namespace severi
