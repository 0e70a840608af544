#pragma once

// Plane curves: singular locus, the Hessian node criterion, membership in
// the nodal loci, and genus formulas.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "severi/linalg.hpp"
#include "severi/polynomial.hpp"
#include "severi/projective.hpp"
#include "severi/random.hpp"
#include "severi/resultant.hpp"
#include "severi/roots.hpp"

namespace severi {

struct Tolerances {
    double residual = 1e-9;  // relative to the largest coefficient modulus
    double hessian = 1e-7;   // on the Hessian determinant of the unit-scaled form
    double point = 1e-8;     // Fubini–Study distance for point equality
    double rank = 1e-10;     // relative singular-value threshold
    double rank_gap = 1e3;   // required sigma_r / sigma_{r+1}
    int degree_cap = 8;
};

class NonIsolatedSingularities : public Error {
public:
    NonIsolatedSingularities() : Error("non-isolated singular locus: the partial derivatives share a component") {}
};

namespace detail {

inline long binary_exponent(const Rational& q) {
    if (q == 0) return std::numeric_limits<long>::min();
    return static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) - static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
}

inline long binary_exponent(const QComplex& z) { return std::max(binary_exponent(z.re), binary_exponent(z.im)); }

inline Complex to_complex_scaled(const QComplex& z, long e) {
    auto shift = [e](const Rational& q) {
        Rational r;
        if (e >= 0)
            mpq_div_2exp(r.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
        else
            mpq_mul_2exp(r.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
        return r.get_d();
    };
    return {shift(z.re), shift(z.im)};
}

}  // namespace detail

template <ScalarField S>
class PlaneCurve {
public:
    explicit PlaneCurve(HomogeneousPolynomial<S> form) : form_(std::move(form)) {}
    const HomogeneousPolynomial<S>& form() const { return form_; }
    int degree() const { return form_.degree(); }
    AffinePolynomial<S> dehomogenize(Chart c) const { return form_.dehomogenize(c); }
    // Exact forms are rescaled by a power of two, so coefficients far outside
    // the double range still convert to the same curve.
    PlaneCurve<Complex> to_float() const {
        if constexpr (is_exact_v<S>) {
            long e = std::numeric_limits<long>::min();
            for (const auto& v : form_.coefficients()) e = std::max(e, detail::binary_exponent(v));
            if (e != std::numeric_limits<long>::min()) {
                std::vector<Complex> c;
                for (const auto& v : form_.coefficients()) c.push_back(detail::to_complex_scaled(v, e));
                return PlaneCurve<Complex>(HomogeneousPolynomial<Complex>(form_.degree(), std::move(c)));
            }
        }
        return PlaneCurve<Complex>(form_.to_float());
    }
    double max_coefficient_modulus() const {
        double m = 0.0;
        for (const auto& c : form_.coefficients()) m = std::max(m, modulus(c));
        return m;
    }
    friend bool operator==(const PlaneCurve&, const PlaneCurve&) = default;

private:
    HomogeneousPolynomial<S> form_;
};

using ExactCurve = PlaneCurve<QComplex>;
using FloatCurve = PlaneCurve<Complex>;

enum class SingularityKind { node, other };

inline std::string to_string(SingularityKind k) { return k == SingularityKind::node ? "node" : "other"; }

struct SingularPoint {
    FloatPoint location;
    std::optional<ExactPoint> exact_location;  // set when verified with exact arithmetic
    SingularityKind kind = SingularityKind::other;
    Complex hessian_determinant;
    Chart chart;
    bool is_node() const { return kind == SingularityKind::node; }
};

/// 2x2 second-derivative matrix of the dehomogenized form at affine (u, v).
template <ScalarField S>
std::array<S, 3> affine_hessian(const AffinePolynomial<S>& f, const S& u, const S& v) {
    auto fu = f.derivative(0);
    auto fv = f.derivative(1);
    return {fu.derivative(0).eval(u, v), fu.derivative(1).eval(u, v), fv.derivative(1).eval(u, v)};
}

template <ScalarField S>
S hessian_determinant(const AffinePolynomial<S>& f, const S& u, const S& v) {
    auto h = affine_hessian(f, u, v);
    return h[0] * h[2] - h[1] * h[1];
}

namespace detail {

/// Float copy divided by a power of two so the largest coefficient is near one.
inline AffinePolynomial<Complex> to_float_scaled(const AffinePolynomial<QComplex>& f) {
    long e = std::numeric_limits<long>::min();
    for (int a = 0; a <= f.bound(); ++a)
        for (int b = 0; a + b <= f.bound(); ++b) e = std::max(e, binary_exponent(f.at(a, b)));
    if (e == std::numeric_limits<long>::min()) return f.to_float();
    AffinePolynomial<Complex> out(f.bound());
    for (int a = 0; a <= f.bound(); ++a)
        for (int b = 0; a + b <= f.bound(); ++b) out.at(a, b) = to_complex_scaled(f.at(a, b), e);
    return out;
}

inline double gradient_residual(const FloatCurve& c, const FloatPoint& p) {
    auto g = c.form().gradient(p.coords());
    double r = 0.0;
    for (auto v : g) r = std::max(r, std::abs(v));
    return r / c.max_coefficient_modulus();
}

/// Gauss–Newton on (f, f_u, f_v) = 0 in an affine chart.
inline std::array<Complex, 2> refine_singular(const AffinePolynomial<Complex>& f, std::array<Complex, 2> p, int max_iter = 100) {
    auto fu = f.derivative(0), fv = f.derivative(1);
    auto fuu = fu.derivative(0), fuv = fu.derivative(1), fvv = fv.derivative(1);
    for (int it = 0; it < max_iter; ++it) {
        Eigen::Vector3cd r(f.eval(p[0], p[1]), fu.eval(p[0], p[1]), fv.eval(p[0], p[1]));
        Eigen::Matrix<Complex, 3, 2> j;
        j << r(1), r(2), fuu.eval(p[0], p[1]), fuv.eval(p[0], p[1]), fuv.eval(p[0], p[1]), fvv.eval(p[0], p[1]);
        Eigen::Vector2cd step = j.colPivHouseholderQr().solve(-r);
        if (!std::isfinite(std::abs(step(0))) || !std::isfinite(std::abs(step(1)))) break;
        p[0] += step(0);
        p[1] += step(1);
        if (step.norm() < 1e-15 * (1.0 + std::abs(p[0]) + std::abs(p[1]))) break;
    }
    return p;
}

/// Tries to recognize a float point as a rational point of Q(i)^3 that
/// annihilates the gradient exactly.
inline std::optional<ExactPoint> exactify(const ExactCurve& c, const FloatPoint& p) {
    for (int pivot = 0; pivot < 3; ++pivot) {
        if (std::abs(p[pivot]) < 0.1) continue;
        std::array<QComplex, 3> q;
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
            Complex v = p[i] / p[pivot];
            Rational re = rational_approximation(v.real(), 10'000'000);
            Rational im = rational_approximation(v.imag(), 10'000'000);
            ok = std::abs(re.get_d() - v.real()) < 1e-9 && std::abs(im.get_d() - v.imag()) < 1e-9;
            q[i] = QComplex(re, im);
        }
        if (!ok) continue;
        auto g = c.form().gradient(q);
        if (g[0].is_zero() && g[1].is_zero() && g[2].is_zero()) return ExactPoint(q);
    }
    return std::nullopt;
}

/// A projective frame u -> T u in which the transformed curve G = F∘T
/// avoids [0:1:0] and so is monic in y on the chart Z = 1.
struct GenericFrame {
    std::array<std::array<QComplex, 3>, 3> t;
    ExactForm transformed;
    AffinePolynomial<QComplex> affine;
};

inline std::array<std::array<QComplex, 3>, 3> random_frame_matrix(std::uint64_t attempt) {
    Rng rng(derive_seed(0x5e7e71ULL, attempt));
    for (;;) {
        std::array<std::array<QComplex, 3>, 3> t;
        ExactMatrix m(3, 3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                t[r][c] = QComplex(rng.uniform_int(-3, 3));
                m(r, c) = t[r][c];
            }
        if (!determinant(m).is_zero()) return t;
    }
}

inline std::array<Complex, 3> apply_frame(const std::array<std::array<QComplex, 3>, 3>& t, const std::array<Complex, 3>& u) {
    std::array<Complex, 3> p{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) p[r] += t[r][c].to_complex() * u[c];
    return p;
}

inline GenericFrame make_frame(const ExactForm& f, std::uint64_t attempt) {
    auto t = random_frame_matrix(attempt);
    ExactForm g = f.substitute_linear(t);
    return {t, g, g.dehomogenize({Variable::Z})};
}

/// Restriction of a form to Z = 0 along [x : 1 : 0].
inline UniPoly<QComplex> at_infinity(const ExactForm& f) {
    std::vector<QComplex> c(f.degree() + 1, QComplex(0));
    for (const auto& e : monomials(f.degree()))
        if (e.k == 0) c[e.i] = f.coeff(e);
    return UniPoly<QComplex>(std::move(c));
}

inline bool has_singularity_at_infinity(const ExactForm& g) {
    // [1:0:0]
    auto g100 = g.gradient({QComplex(1), QComplex(0), QComplex(0)});
    if (g100[0].is_zero() && g100[1].is_zero() && g100[2].is_zero()) return true;
    // [x:1:0]
    UniPoly<QComplex> common;
    bool first = true;
    for (Variable v : {Variable::X, Variable::Y, Variable::Z}) {
        auto p = g.partial(v);
        UniPoly<QComplex> r = p ? at_infinity(*p) : UniPoly<QComplex>{};
        common = first ? r : gcd(common, r);
        first = false;
    }
    return common.is_zero() || common.degree() > 0;
}

template <ScalarField S>
bool is_monic_frame(const HomogeneousPolynomial<S>& g) {
    return !is_zero(g.coeff({0, g.degree(), 0}));
}

}  // namespace detail

/// Hessian criterion at a point whose gradient vanishes, in a given chart.
template <ScalarField S>
SingularPoint classify_singularity(const PlaneCurve<S>& c, const ProjectivePoint<S>& p, Chart chart,
                                   const Tolerances& tol = {}) {
    if (!p.lies_in(chart)) throw Error("point is at infinity in chart " + to_string(chart));
    auto grad = c.form().gradient(p.coords());
    if constexpr (is_exact_v<S>) {
        for (const auto& g : grad)
            if (!g.is_zero()) throw Error("not a singular point: a partial derivative is nonzero at " + to_string(p));
    } else {
        double r = 0.0;
        for (auto g : grad) r = std::max(r, std::abs(g));
        if (r > tol.residual * c.max_coefficient_modulus())
            throw Error("not a singular point: gradient residual " + std::to_string(r / c.max_coefficient_modulus()));
    }
    auto uv = p.affine(chart);
    S det = hessian_determinant(c.dehomogenize(chart), uv[0], uv[1]);
    SingularPoint sp{p.to_float(), std::nullopt, SingularityKind::other, to_complex(det), chart};
    if constexpr (is_exact_v<S>) {
        sp.exact_location = p;
        sp.kind = det.is_zero() ? SingularityKind::other : SingularityKind::node;
    } else {
        const double scale = c.max_coefficient_modulus();
        sp.kind = std::abs(det) / (scale * scale) > tol.hessian ? SingularityKind::node : SingularityKind::other;
    }
    return sp;
}

template <ScalarField S>
SingularPoint classify_singularity(const PlaneCurve<S>& c, const ProjectivePoint<S>& p, const Tolerances& tol = {}) {
    return classify_singularity(c, p, p.chart(), tol);
}

namespace detail {

inline void add_candidate(const FloatCurve& fc, std::array<Complex, 3> raw, const Tolerances& tol,
                          std::vector<FloatPoint>& out) {
    FloatPoint p(raw);
    Chart ch = p.chart();
    auto uv = refine_singular(fc.dehomogenize(ch), p.affine(ch));
    FloatPoint q = FloatPoint::from_affine(ch, uv[0], uv[1]);
    if (gradient_residual(fc, q) > tol.residual) return;
    for (const auto& o : out)
        if (o.same_as(q, tol.point)) return;
    out.push_back(q);
}

inline bool point_less(const FloatPoint& a, const FloatPoint& b) {
    for (int i = 0; i < 3; ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return false;
}

inline std::vector<FloatPoint> singular_locations_exact(const ExactCurve& c, const Tolerances& tol) {
    const FloatCurve fc = c.to_float();
    const int d = c.degree();
    for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
        auto frame = make_frame(c.form(), attempt);
        if (!is_monic_frame(frame.transformed)) continue;
        const auto& g = frame.affine;
        auto r2 = resultant_v(g, g.derivative(1));
        if (r2.is_zero()) throw NonIsolatedSingularities();
        if (has_singularity_at_infinity(frame.transformed)) continue;
        auto r1 = resultant_v(g, g.derivative(0));
        if (r1.is_zero()) continue;
        auto sqf = squarefree_part(gcd(r1, r2));
        std::vector<FloatPoint> found;
        if (sqf.degree() <= 0) return found;
        const auto gf = to_float_scaled(g);
        bool complete = true;
        for (const Complex& x0 : polynomial_roots(sqf.to_float())) {
            const std::size_t before = found.size();
            auto fiber = gf.restrict_u(x0);
            std::vector<Complex> ys = fiber.degree() > 0 ? polynomial_roots(fiber) : std::vector<Complex>{};
            for (const Complex& y0 : ys) {
                auto uv = refine_singular(gf, {x0, y0});
                add_candidate(fc, apply_frame(frame.t, {uv[0], uv[1], 1.0}), tol, found);
            }
            // A root of the eliminant with no singular point above it means the
            // frame was not generic enough (or refinement failed): try another.
            if (found.size() == before) {
                bool duplicate = false;
                for (const Complex& y0 : ys) {
                    FloatPoint q(apply_frame(frame.t, {x0, y0, 1.0}));
                    for (std::size_t s = 0; s < before; ++s) duplicate = duplicate || found[s].same_as(q, 1e-4);
                }
                if (!duplicate) complete = false;
            }
        }
        (void)d;
        if (!complete) continue;
        return found;
    }
    throw Error("singular locus solver found no generic frame");
}

/// Whether some point of Z = 0 comes close to annihilating the gradient.
inline bool near_singular_at_infinity(const FloatForm& g) {
    const FloatCurve gc(g);
    auto close = [&](const std::array<Complex, 3>& u) { return gradient_residual(gc, FloatPoint(u)) < 1e-6; };
    if (close({1.0, 0.0, 0.0})) return true;
    std::vector<Complex> h(g.degree() + 1, 0.0);
    for (const auto& e : monomials(g.degree()))
        if (e.k == 0) h[e.i] = g.coeff(e);
    UniPoly<Complex> restricted(std::move(h));
    auto dx = restricted.derivative();
    if (dx.degree() <= 0) return false;
    for (const auto& x : polynomial_roots(dx))
        if (close({x, 1.0, 0.0})) return true;
    return false;
}

inline std::vector<FloatPoint> singular_locations_float(const FloatCurve& c, const Tolerances& tol) {
    for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
        auto t = random_frame_matrix(attempt);
        std::array<std::array<Complex, 3>, 3> tf;
        for (int r = 0; r < 3; ++r)
            for (int k = 0; k < 3; ++k) tf[r][k] = t[r][k].to_complex();
        auto g = c.form().substitute_linear(tf);
        if (std::abs(g.coeff({0, g.degree(), 0})) < 1e-8 * c.max_coefficient_modulus()) continue;
        if (near_singular_at_infinity(g)) continue;
        auto ga = g.dehomogenize({Variable::Z});
        auto gx = ga.derivative(0), gy = ga.derivative(1);
        auto r = resultant_v(gx, gy);
        std::vector<FloatPoint> found;
        if (r.degree() <= 0) return found;
        for (const auto& grp : cluster_roots(polynomial_roots(r), 1e-6)) {
            auto fiber = gy.restrict_u(grp.center);
            if (fiber.degree() <= 0) continue;
            for (const auto& y0 : polynomial_roots(fiber)) {
                auto uv = refine_singular(ga, {grp.center, y0});
                add_candidate(c, apply_frame(t, {uv[0], uv[1], 1.0}), tol, found);
            }
        }
        return found;
    }
    throw Error("singular locus solver found no generic frame");
}

}  // namespace detail

/// All singular points (common zeros of F_X, F_Y, F_Z), classified by the
/// Hessian criterion, sorted by normalized coordinates.
///
/// Elimination runs in a random projective frame chosen so that the curve
/// is monic in y and has no singular point on the line at infinity; the
/// x-coordinates of singular points are the roots of
/// gcd(Res_y(f, f_x), Res_y(f, f_y)) (exact mode) or of Res_y(f_x, f_y)
/// (float mode). Points are refined and verified in the original
/// coordinates; exact-mode points with rational coordinates are recognized
/// and proven singular exactly.
template <ScalarField S>
std::vector<SingularPoint> singular_points(const PlaneCurve<S>& c, const Tolerances& tol = {}) {
    if (c.degree() > tol.degree_cap)
        throw Error("degree cap exceeded: degree " + std::to_string(c.degree()) + " > " + std::to_string(tol.degree_cap));
    if (c.degree() <= 1) return {};
    std::vector<FloatPoint> locations;
    if constexpr (is_exact_v<S>)
        locations = detail::singular_locations_exact(c, tol);
    else
        locations = detail::singular_locations_float(c, tol);
    std::sort(locations.begin(), locations.end(), detail::point_less);
    std::vector<SingularPoint> out;
    const FloatCurve fc = c.to_float();
    for (const auto& p : locations) {
        if constexpr (is_exact_v<S>) {
            if (auto q = detail::exactify(c, p)) {
                out.push_back(classify_singularity(c, *q, tol));
                continue;
            }
        }
        out.push_back(classify_singularity(fc, p, tol));
    }
    return out;
}

/// Squarefree test on an exact form: Res_y(f, f_y) is not identically zero
/// in a frame where the form is monic in y.
inline bool is_squarefree(const ExactCurve& c) {
    if (c.degree() <= 1) return true;
    for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
        auto frame = detail::make_frame(c.form(), attempt);
        if (!detail::is_monic_frame(frame.transformed)) continue;
        return !resultant_v(frame.affine, frame.affine.derivative(1)).is_zero();
    }
    throw Error("squarefree test found no generic frame");
}

/// Number of absolutely irreducible factors of a squarefree curve, by the
/// dimension of the solution space of d/dy(g/f) = d/dx(h/f) with
/// deg g <= (m-1, n), deg h <= (m, n-1) (Ruppert–Gao). Requires a frame
/// where gcd(f, f_x) = 1; returns nullopt when none is found. Ranks are
/// first tried modulo primes p = 1 mod 4.
inline std::optional<int> absolute_factor_count(const ExactCurve& c) {
    if (c.degree() == 1) return 1;
    for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
        auto frame = detail::make_frame(c.form(), attempt);
        if (!detail::is_monic_frame(frame.transformed)) continue;
        const auto& f = frame.affine;
        if (resultant_v(f, f.derivative(0)).is_zero()) continue;
        int m = 0, n = 0;
        struct Term {
            int a, b;
            QComplex v;
        };
        std::vector<Term> ft;
        for (int a = 0; a <= f.bound(); ++a)
            for (int b = 0; a + b <= f.bound(); ++b)
                if (!f.at(a, b).is_zero()) {
                    ft.push_back({a, b, f.at(a, b)});
                    m = std::max(m, a);
                    n = std::max(n, b);
                }
        if (m == 0) continue;
        const int rows_a = 2 * m + 1, rows_b = 2 * n + 1;
        const int g_unknowns = m * (n + 1), h_unknowns = (m + 1) * n;
        ExactMatrix sys(static_cast<std::size_t>(rows_a * rows_b), static_cast<std::size_t>(g_unknowns + h_unknowns));
        auto add = [&](int col, int a, int b, const QComplex& v) { sys(static_cast<std::size_t>(a * rows_b + b), col) += v; };
        int col = 0;
        // f g_y - g f_y for g = x^i y^j
        for (int i = 0; i < m; ++i)
            for (int j = 0; j <= n; ++j, ++col)
                for (const auto& t : ft) {
                    if (j > 0) add(col, t.a + i, t.b + j - 1, t.v * QComplex(j));
                    if (t.b > 0) add(col, t.a + i, t.b - 1 + j, -(t.v * QComplex(t.b)));
                }
        // -f h_x + h f_x for h = x^i y^j
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j < n; ++j, ++col)
                for (const auto& t : ft) {
                    if (i > 0) add(col, t.a + i - 1, t.b + j, -(t.v * QComplex(i)));
                    if (t.a > 0) add(col, t.a - 1 + i, t.b + j, t.v * QComplex(t.a));
                }
        // (f_x, f_y) always solves the system, so a count of one
        // mod p bounds the count over Q(i) from above and settles it.
        for (int k = 0; k < 3; ++k)
            if (auto r = modular_rank(sys, gaussian_prime(k)); r && sys.cols() - *r == 1) return 1;
        return static_cast<int>(sys.cols() - exact_rank(std::move(sys)));
    }
    return std::nullopt;
}

struct Membership {
    std::optional<bool> irreducible;  // absolute irreducibility; nullopt = unknown
    std::optional<int> factor_count;
    bool squarefree = false;
    int node_count = 0;
    int singular_count = 0;
    bool all_singularities_nodal = false;
    std::vector<SingularPoint> singularities;

    /// Claim C ∈ D_{d,n}: irreducible, reduced, exactly n singular points, all nodes.
    bool in_nodal_locus(int n) const {
        return irreducible.value_or(false) && squarefree && all_singularities_nodal && node_count == n;
    }
};

inline Membership membership(const ExactCurve& c, const Tolerances& tol = {}) {
    Membership m;
    m.squarefree = is_squarefree(c);
    if (!m.squarefree) return m;
    m.singularities = singular_points(c, tol);
    m.singular_count = static_cast<int>(m.singularities.size());
    m.node_count = static_cast<int>(std::count_if(m.singularities.begin(), m.singularities.end(),
                                                  [](const SingularPoint& s) { return s.is_node(); }));
    m.all_singularities_nodal = m.node_count == m.singular_count;
    m.factor_count = absolute_factor_count(c);
    if (m.factor_count) m.irreducible = *m.factor_count == 1;
    return m;
}

inline long arithmetic_genus(long d) {
    if (d < 1) throw Error("plane curve degree must be at least 1");
    return (d - 1) * (d - 2) / 2;
}

inline long geometric_genus(long d, long n) {
    if (n < 0) throw Error("node count must be non-negative");
    const long p = arithmetic_genus(d);
    if (n > p) throw Error("node count exceeds genus bound: " + std::to_string(n) + " > " + std::to_string(p));
    return p - n;
}

}  // namespace severi
