#pragma once

// The Jacobian of the node residuals (phi_k, psi_k, theta_k) with respect to
// the curve coefficients and the node coordinates, its certified rank, and
// the tangent dimension of the incidence variety.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "severi/linsys.hpp"

namespace severi {

/// Rows: phi_1, psi_1, theta_1, ..., phi_n, psi_n, theta_n.
/// Columns: the L_d + 1 coefficients in graded-lex order, then X_1, Y_1, ...,
/// X_n, Y_n (affine coordinates of each node in its chart).
template <ScalarField S>
struct IncidenceJacobian {
    Matrix<S> matrix;
    int d = 0;
    int n = 0;
    std::size_t coefficient_columns() const { return static_cast<std::size_t>(monomial_count(d)); }
    std::size_t point_column(int k, int which) const { return coefficient_columns() + 2 * k + which; }
};

namespace detail {

template <ScalarField S>
void verify_nodes(const NodalConfiguration<S>& cfg, const Tolerances& tol) {
    for (const auto& p : cfg.nodes) {
        bool node = false;
        try {
            node = classify_singularity(cfg.curve, p, tol).is_node();
        } catch (const Error& e) {
            throw Error(std::string("unverified configuration: ") + e.what());
        }
        if (!node) throw Error("unverified configuration: " + to_string(p) + " fails the Hessian criterion");
    }
}

template <ScalarField S>
double max_entry(const Matrix<S>& m) {
    double r = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r = std::max(r, modulus(m(i, j)));
    return r;
}

template <ScalarField S>
bool negligible(const S& v, double scale) {
    if constexpr (is_exact_v<S>)
        return v.is_zero();
    else
        return std::abs(v) <= 1e-14 * scale;
}

}  // namespace detail

/// Checks the zero pattern of the point columns: phi rows vanish there, and
/// node k's rows vanish in the columns of every other node.
template <ScalarField S>
bool block_structure_holds(const IncidenceJacobian<S>& j) {
    const double scale = detail::max_entry(j.matrix);
    for (int k = 0; k < j.n; ++k)
        for (int l = 0; l < j.n; ++l)
            for (int w = 0; w < 2; ++w) {
                const std::size_t col = j.point_column(l, w);
                if (!detail::negligible(j.matrix(3 * k, col), scale)) return false;
                if (k == l) continue;
                if (!detail::negligible(j.matrix(3 * k + 1, col), scale)) return false;
                if (!detail::negligible(j.matrix(3 * k + 2, col), scale)) return false;
            }
    return true;
}

template <ScalarField S>
IncidenceJacobian<S> assemble_jacobian(const NodalConfiguration<S>& cfg, const Tolerances& tol = {}) {
    detail::verify_nodes(cfg, tol);
    const int d = cfg.degree(), n = cfg.node_count();
    auto conditions = node_condition_matrix(cfg.nodes, d);
    IncidenceJacobian<S> j{Matrix<S>(3 * n, monomial_count(d) + 2 * n), d, n};
    for (std::size_t r = 0; r < conditions.rows(); ++r)
        for (std::size_t c = 0; c < conditions.cols(); ++c) j.matrix(r, c) = conditions(r, c);
    // Float mode works with unit-norm coefficients so that the point columns
    // are on the scale of the monomial columns.
    const PlaneCurve<S> curve = [&] {
        if constexpr (is_exact_v<S>) {
            return cfg.curve;
        } else {
            double norm = 0.0;
            for (const auto& c : cfg.curve.form().coefficients()) norm += std::norm(c);
            return PlaneCurve<S>(cfg.curve.form().scaled(1.0 / std::sqrt(norm)));
        }
    }();
    for (int k = 0; k < n; ++k) {
        const Chart ch = cfg.nodes[k].chart();
        const auto f = curve.dehomogenize(ch);
        const auto uv = cfg.nodes[k].affine(ch);
        const auto h = affine_hessian(f, uv[0], uv[1]);
        j.matrix(3 * k, j.point_column(k, 0)) = f.derivative(0).eval(uv[0], uv[1]);
        j.matrix(3 * k, j.point_column(k, 1)) = f.derivative(1).eval(uv[0], uv[1]);
        j.matrix(3 * k + 1, j.point_column(k, 0)) = h[0];
        j.matrix(3 * k + 1, j.point_column(k, 1)) = h[1];
        j.matrix(3 * k + 2, j.point_column(k, 0)) = h[1];
        j.matrix(3 * k + 2, j.point_column(k, 1)) = h[2];
    }
    if (!block_structure_holds(j)) throw Error("Jacobian block structure violated");
    return j;
}

struct RankCertificate {
    int rank = 0;
    Mode mode = Mode::exact;
    double sv_gap = std::numeric_limits<double>::infinity();  // sigma_r / sigma_{r+1}
    std::vector<double> singular_values;
};

template <ScalarField S>
RankCertificate certified_rank(const Matrix<S>& m, const Tolerances& tol = {}) {
    RankCertificate rc;
    if constexpr (is_exact_v<S>) {
        rc.rank = static_cast<int>(exact_rank(m));
    } else {
        rc.mode = Mode::floating;
        if (m.rows() == 0 || m.cols() == 0) return rc;
        rc.singular_values = singular_values(m);
        const auto& sv = rc.singular_values;
        if (sv.empty() || sv[0] == 0.0) return rc;
        while (rc.rank < static_cast<int>(sv.size()) && sv[rc.rank] > tol.rank * sv[0]) ++rc.rank;
        const double next = rc.rank < static_cast<int>(sv.size()) ? sv[rc.rank] : 0.0;
        const double floor = std::numeric_limits<double>::epsilon() * sv[0];
        rc.sv_gap = sv[rc.rank - 1] / std::max(next, floor);
        if (rc.sv_gap < tol.rank_gap)
            throw Error("rank uncertified: singular-value gap " + std::to_string(rc.sv_gap) + " below " +
                        std::to_string(tol.rank_gap));
    }
    return rc;
}

template <ScalarField S>
RankCertificate certified_rank(const IncidenceJacobian<S>& j, const Tolerances& tol = {}) {
    return certified_rank(j.matrix, tol);
}

struct TangentDimension {
    int d = 0;
    int n = 0;
    int rank = 0;
    int dimension = 0;
    int expected = 0;
    RankCertificate certificate;
    bool pass() const { return dimension == expected; }
};

/// dim = (L_d + 1 + 2n) - 1 - rank: all variables, minus projective scaling.
template <ScalarField S>
TangentDimension tangent_dimension(const NodalConfiguration<S>& cfg, const Tolerances& tol = {}) {
    auto j = assemble_jacobian(cfg, tol);
    TangentDimension t;
    t.d = j.d;
    t.n = j.n;
    t.certificate = certified_rank(j, tol);
    t.rank = t.certificate.rank;
    t.dimension = static_cast<int>(l_d(j.d)) + 2 * j.n - t.rank;
    t.expected = static_cast<int>(l_d(j.d)) - j.n;
    return t;
}

/// Column operations with the inverse Hessian blocks clear the psi/theta
/// rows of the coefficient columns, leaving diag(phi-block, Hessians) up to
/// a row permutation. Returns the eliminated matrix.
template <ScalarField S>
Matrix<S> block_eliminate(const IncidenceJacobian<S>& j) {
    Matrix<S> e = j.matrix;
    for (int k = 0; k < j.n; ++k) {
        const std::size_t cx = j.point_column(k, 0), cy = j.point_column(k, 1);
        const S a = e(3 * k + 1, cx), b = e(3 * k + 1, cy), c = e(3 * k + 2, cx), dd = e(3 * k + 2, cy);
        const S det = a * dd - b * c;
        if (is_zero(det)) throw Error("unverified configuration: singular Hessian block");
        for (std::size_t col = 0; col < j.coefficient_columns(); ++col) {
            const S r1 = e(3 * k + 1, col), r2 = e(3 * k + 2, col);
            if (is_zero(r1) && is_zero(r2)) continue;
            const S alpha = (dd * r1 - b * r2) / det;
            const S beta = (a * r2 - c * r1) / det;
            for (std::size_t row = 0; row < e.rows(); ++row) e(row, col) -= alpha * e(row, cx) + beta * e(row, cy);
        }
    }
    return e;
}

/// Rank through the eliminated form: rank of the phi rows restricted to the
/// coefficient columns, plus 2 per node.
template <ScalarField S>
int block_elimination_rank(const IncidenceJacobian<S>& j, const Tolerances& tol = {}) {
    auto e = block_eliminate(j);
    Matrix<S> phi(j.n, j.coefficient_columns());
    for (int k = 0; k < j.n; ++k)
        for (std::size_t c = 0; c < j.coefficient_columns(); ++c) phi(k, c) = e(3 * k, c);
    return certified_rank(phi, tol).rank + 2 * j.n;
}

/// Rank of the affine-chart Jacobian, with the column of a nonzero curve
/// coefficient removed (that coefficient fixed to its value).
template <ScalarField S>
int affine_chart_rank(const IncidenceJacobian<S>& j, const PlaneCurve<S>& curve, const Tolerances& tol = {}) {
    const auto& c = curve.form().coefficients();
    std::size_t drop = 0;
    for (std::size_t s = 0; s < c.size(); ++s)
        if (modulus(c[s]) > modulus(c[drop])) drop = s;
    std::vector<std::size_t> keep;
    for (std::size_t s = 0; s < j.matrix.cols(); ++s)
        if (s != drop) keep.push_back(s);
    return certified_rank(j.matrix.select_columns(keep), tol).rank;
}

inline long factorial(int n) {
    long f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

/// Calls `visit` on each of the n! orderings of the nodes; stops early when
/// it returns false.
template <ScalarField S>
void for_each_ordering(const NodalConfiguration<S>& cfg,
                       const std::function<bool(const NodalConfiguration<S>&)>& visit) {
    if (!cfg.complete) throw Error("fiber orderings need a complete node list");
    std::vector<std::size_t> perm(cfg.nodes.size());
    std::iota(perm.begin(), perm.end(), 0);
    NodalConfiguration<S> out = cfg;
    do {
        for (std::size_t k = 0; k < perm.size(); ++k) {
            out.nodes[k] = cfg.nodes[perm[k]];
            if (k < cfg.witnesses.size()) out.witnesses[k] = cfg.witnesses[perm[k]];
        }
        if (!visit(out)) return;
    } while (std::next_permutation(perm.begin(), perm.end()));
}

template <ScalarField S>
std::vector<NodalConfiguration<S>> fiber_orderings(const NodalConfiguration<S>& cfg) {
    std::vector<NodalConfiguration<S>> all;
    for_each_ordering<S>(cfg, [&](const NodalConfiguration<S>& c) {
        all.push_back(c);
        return true;
    });
    return all;
}

template <ScalarField S>
long fiber_cardinality(const NodalConfiguration<S>& cfg) {
    long count = 0;
    for_each_ordering<S>(cfg, [&](const NodalConfiguration<S>&) {
        ++count;
        return true;
    });
    return count;
}

struct DimensionEquality {
    int source_dimension = 0;  // ordered configuration
    int target_dimension = 0;  // unordered node set
    int fiber_dimension = 0;
    long fiber_cardinality = 0;
    bool pass() const { return source_dimension == target_dimension + fiber_dimension; }
};

/// The source is the given ordering; the target is represented by the
/// nodes in sorted order, whose tangent space does not depend on the
/// ordering chosen.
template <ScalarField S>
DimensionEquality dimension_equality_check(const NodalConfiguration<S>& cfg, const Tolerances& tol = {}) {
    DimensionEquality r;
    r.source_dimension = tangent_dimension(cfg, tol).dimension;
    NodalConfiguration<S> sorted = cfg;
    std::vector<std::size_t> idx(cfg.nodes.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return detail::point_less(cfg.nodes[a].to_float(), cfg.nodes[b].to_float());
    });
    for (std::size_t k = 0; k < idx.size(); ++k) {
        sorted.nodes[k] = cfg.nodes[idx[k]];
        if (k < cfg.witnesses.size()) sorted.witnesses[k] = cfg.witnesses[idx[k]];
    }
    r.target_dimension = tangent_dimension(sorted, tol).dimension;
    r.fiber_cardinality = cfg.complete ? factorial(cfg.node_count()) : 0;
    return r;
}

}  // namespace severi
