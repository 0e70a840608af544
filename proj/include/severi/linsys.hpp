#pragma once

// Linear conditions imposed by prescribed nodes, construction of nodal
// curves through given points, and the adjoint-condition rank.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "severi/curve.hpp"
#include "severi/linalg.hpp"
#include "severi/projective.hpp"
#include "severi/random.hpp"

namespace severi {

/// A curve with an ordered list of verified nodes. `complete` means the
/// curve has no singular points besides the listed ones.
template <ScalarField S>
struct NodalConfiguration {
    PlaneCurve<S> curve;
    std::vector<ProjectivePoint<S>> nodes;
    std::vector<SingularPoint> witnesses;  // Hessian data, one per node
    bool complete = false;
    std::optional<bool> irreducible;
    std::uint64_t seed = 0;
    int attempts = 1;

    int degree() const { return curve.degree(); }
    int node_count() const { return static_cast<int>(nodes.size()); }
    NodalConfiguration<Complex> to_float() const {
        std::vector<FloatPoint> fn;
        for (const auto& p : nodes) fn.push_back(p.to_float());
        return {curve.to_float(), std::move(fn), witnesses, complete, irreducible, seed, attempts};
    }
};

using ExactConfiguration = NodalConfiguration<QComplex>;
using FloatConfiguration = NodalConfiguration<Complex>;

namespace detail {

template <ScalarField S>
S power(const S& x, int e) {
    S r = from_int<S>(1);
    for (int k = 0; k < e; ++k) r *= x;
    return r;
}

inline int exponent_of(const Exponent& e, int index) {
    return index == 0 ? e.i : index == 1 ? e.j : e.k;
}

template <ScalarField S>
void require_distinct(const std::vector<ProjectivePoint<S>>& points) {
    for (std::size_t a = 0; a < points.size(); ++a)
        for (std::size_t b = a + 1; b < points.size(); ++b)
            if (points[a].same_as(points[b]))
                throw Error("coincident points: #" + std::to_string(a) + " and #" + std::to_string(b) + " are " +
                            to_string(points[a]));
}

}  // namespace detail

/// Rows (phi_k, psi_k, theta_k) for each point: the monomials of degree d and
/// their two first partials, evaluated in the point's chart. The kernel is
/// the space of forms singular at every point.
template <ScalarField S>
Matrix<S> node_condition_matrix(const std::vector<ProjectivePoint<S>>& points, int d) {
    detail::require_distinct(points);
    const auto ms = monomials(d);
    Matrix<S> m(3 * points.size(), ms.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        const Chart ch = points[k].chart();
        const auto fi = ch.free_indices();
        const auto uv = points[k].affine(ch);
        for (std::size_t c = 0; c < ms.size(); ++c) {
            const int a = detail::exponent_of(ms[c], fi[0]);
            const int b = detail::exponent_of(ms[c], fi[1]);
            const S ua = detail::power(uv[0], a), vb = detail::power(uv[1], b);
            m(3 * k, c) = ua * vb;
            if (a > 0) m(3 * k + 1, c) = from_int<S>(a) * detail::power(uv[0], a - 1) * vb;
            if (b > 0) m(3 * k + 2, c) = from_int<S>(b) * ua * detail::power(uv[1], b - 1);
        }
    }
    return m;
}

struct ConstructionOptions {
    bool exact_node_count = true;
    bool require_irreducible = false;
    int retry_cap = 20;
    int coefficient_bound = 10;
    Tolerances tol{};
};

namespace detail {

inline std::optional<std::string> verify_sample(const ExactCurve& c, const std::vector<ExactPoint>& points,
                                                const ConstructionOptions& opt, ExactConfiguration& out) {
    if (!is_squarefree(c)) return "not squarefree";
    out.witnesses.clear();
    for (const auto& p : points) {
        auto sp = classify_singularity(c, p, opt.tol);
        if (!sp.is_node()) return "prescribed point " + to_string(p) + " is not a node";
        out.witnesses.push_back(sp);
    }
    if (opt.exact_node_count) {
        auto all = singular_points(c, opt.tol);
        if (all.size() != points.size()) return "unprescribed singular points";
        for (const auto& s : all)
            if (!s.exact_location ||
                std::none_of(points.begin(), points.end(), [&](const ExactPoint& p) { return p == *s.exact_location; }))
                return "unprescribed singular points";
        out.complete = true;
    }
    if (opt.require_irreducible) {
        auto k = absolute_factor_count(c);
        if (!k || *k != 1) return "reducible";
        out.irreducible = true;
    }
    return std::nullopt;
}

}  // namespace detail

namespace detail {

/// Rescales to Gaussian-integer coefficients whose parts have gcd 1.
inline void make_primitive(std::vector<QComplex>& c) {
    mpz_class den = 1, g = 0;
    for (const auto& v : c) {
        den = lcm(den, v.re.get_den());
        den = lcm(den, v.im.get_den());
    }
    for (auto& v : c) {
        v.re *= den;
        v.im *= den;
        g = gcd(g, v.re.get_num());
        g = gcd(g, v.im.get_num());
    }
    if (g == 0 || g == 1) return;
    for (auto& v : c) {
        v.re /= g;
        v.im /= g;
    }
}

/// Orthogonal projection of w onto ker A (Hermitian inner product):
/// w - A^H y with (A A^H) y = A w. Rows of A are first reduced to an
/// independent set.
inline std::vector<QComplex> project_to_kernel(const ExactMatrix& a, const std::vector<QComplex>& w) {
    ExactMatrix rows = a;
    if (exact_rank(a) < a.rows()) {
        RowEchelon e = row_reduce(a);
        rows = ExactMatrix(e.rank(), a.cols());
        for (std::size_t r = 0; r < e.rank(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c) rows(r, c) = e.reduced(r, c);
    }
    const std::size_t m = rows.rows(), n = rows.cols();
    if (m == 0) return w;
    ExactMatrix sys(m, m + 1);
    auto aw = rows.apply(w);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t c = 0; c < n; ++c)
                if (!rows(i, c).is_zero() && !rows(j, c).is_zero()) sys(i, j) += rows(i, c) * rows(j, c).conj();
        sys(i, m) = aw[i];
    }
    RowEchelon e = row_reduce(sys);
    std::vector<QComplex> out = w;
    for (std::size_t j = 0; j < m; ++j) {
        const QComplex& y = e.reduced(j, m);
        if (y.is_zero()) continue;
        for (std::size_t c = 0; c < n; ++c)
            if (!rows(j, c).is_zero()) out[c] -= rows(j, c).conj() * y;
    }
    return out;
}

}  // namespace detail

/// Random exact element of the kernel of the node conditions: a seeded
/// integer vector with entries in [-B, B], projected orthogonally onto the
/// kernel. The sample depends continuously on the points, so the same seed at
/// nearby points gives nearby curves. Each sample is verified to have a node
/// at every prescribed point; failures are resampled up to `retry_cap` times.
inline ExactConfiguration construct_nodal_curve(const std::vector<ExactPoint>& points, int d, std::uint64_t seed,
                                                const ConstructionOptions& opt = {}) {
    if (d < 1) throw Error("plane curve degree must be at least 1");
    const long n = static_cast<long>(points.size());
    if (n > arithmetic_genus(d))
        throw Error("node count exceeds genus bound: " + std::to_string(n) + " > " + std::to_string(arithmetic_genus(d)));
    const ExactMatrix a = node_condition_matrix(points, d);
    if (exact_rank(a) == a.cols()) throw Error("kernel too small: no nonzero form is singular at all points");
    std::string last = "none";
    for (int attempt = 0; attempt < opt.retry_cap; ++attempt) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        std::vector<QComplex> w(a.cols());
        for (auto& v : w) v = QComplex(rng.uniform_int(-opt.coefficient_bound, opt.coefficient_bound));
        auto coeffs = detail::project_to_kernel(a, w);
        if (std::all_of(coeffs.begin(), coeffs.end(), [](const QComplex& v) { return v.is_zero(); })) {
            last = "zero sample";
            continue;
        }
        detail::make_primitive(coeffs);
        ExactConfiguration cfg{ExactCurve(ExactForm(d, coeffs)), points, {}, false, std::nullopt, seed, attempt + 1};
        auto failure = detail::verify_sample(cfg.curve, points, opt, cfg);
        if (!failure) return cfg;
        last = *failure;
    }
    throw Error("genericity failure after " + std::to_string(opt.retry_cap) + " retries (last: " + last + ")");
}

struct AdjointRank {
    int rank = 0;
    int expected = 0;
    bool pass() const { return rank == expected; }
};

/// Rows: the degree d-3 monomials evaluated at each node.
template <ScalarField S>
Matrix<S> adjoint_condition_matrix(const std::vector<ProjectivePoint<S>>& nodes, int d) {
    if (d < 3) return Matrix<S>(nodes.size(), 0);
    const auto ms = monomials(d - 3);
    Matrix<S> m(nodes.size(), ms.size());
    for (std::size_t k = 0; k < nodes.size(); ++k)
        for (std::size_t c = 0; c < ms.size(); ++c)
            m(k, c) = detail::power(nodes[k][0], ms[c].i) * detail::power(nodes[k][1], ms[c].j) *
                      detail::power(nodes[k][2], ms[c].k);
    return m;
}

inline AdjointRank adjoint_condition_rank(const ExactConfiguration& cfg) {
    AdjointRank r;
    r.expected = cfg.node_count();
    if (cfg.degree() < 3) return r;
    r.rank = static_cast<int>(exact_rank(adjoint_condition_matrix(cfg.nodes, cfg.degree())));
    return r;
}

/// n distinct points with small integer homogeneous coordinates.
inline std::vector<ExactPoint> random_points(int n, Rng& rng, int bound = 6) {
    std::vector<ExactPoint> pts;
    while (static_cast<int>(pts.size()) < n) {
        std::array<QComplex, 3> c;
        bool nonzero = false;
        for (auto& v : c) {
            v = QComplex(rng.uniform_int(-bound, bound));
            nonzero = nonzero || !v.is_zero();
        }
        if (!nonzero) continue;
        ExactPoint p(c);
        if (std::none_of(pts.begin(), pts.end(), [&](const ExactPoint& q) { return q == p; })) pts.push_back(p);
    }
    return pts;
}

/// Nine points on the cubic y^2 = x^3 + x^2 - 4x that sum to its 2-torsion
/// point (0,0). Nine general points carry only the doubled cubic as a sextic
/// singular at all of them; these carry a pencil whose general member is an
/// irreducible 9-nodal sextic.
inline std::vector<ExactPoint> halphen_points() {
    const int xy[9][2] = {{-2, 2}, {-2, -2}, {4, 8}, {4, -8}, {2, 2}, {2, -2}, {-1, 2}, {-1, -2}, {0, 0}};
    std::vector<ExactPoint> pts;
    for (const auto& p : xy) pts.emplace_back(QComplex(p[0]), QComplex(p[1]), QComplex(1));
    return pts;
}

/// Image of the points under a random invertible integer matrix.
inline std::vector<ExactPoint> random_projective_image(const std::vector<ExactPoint>& points, Rng& rng, int bound = 3) {
    for (;;) {
        ExactMatrix t(3, 3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) t(r, c) = QComplex(rng.uniform_int(-bound, bound));
        if (determinant(t).is_zero()) continue;
        std::vector<ExactPoint> out;
        for (const auto& p : points) {
            std::array<QComplex, 3> q{QComplex(0), QComplex(0), QComplex(0)};
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) q[r] += t(r, c) * p[c];
            out.emplace_back(q);
        }
        return out;
    }
}

/// The nodal configuration carried by a curve: all of its singular points,
/// each of which must be a node. Exact mode needs rational node coordinates.
template <ScalarField S>
NodalConfiguration<S> configuration_from_curve(const PlaneCurve<S>& c, const Tolerances& tol = {}) {
    NodalConfiguration<S> cfg{c, {}, {}, true, std::nullopt, 0, 1};
    for (const auto& s : singular_points(c, tol)) {
        if (!s.is_node()) throw Error("not nodal: singular point " + to_string(s.location) + " is not a node");
        if constexpr (is_exact_v<S>) {
            if (!s.exact_location)
                throw Error("node " + to_string(s.location) + " has no rational coordinates; use float mode");
            cfg.nodes.push_back(*s.exact_location);
        } else {
            cfg.nodes.push_back(s.location);
        }
        cfg.witnesses.push_back(s);
    }
    if constexpr (is_exact_v<S>)
        if (auto k = absolute_factor_count(c)) cfg.irreducible = *k == 1;
    return cfg;
}

}  // namespace severi
