#pragma once

// Distances between curves, random perturbations of a given Fubini–Study
// size, node tracking by Newton's method, and the intersection-stability
// experiment.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "severi/bezout.hpp"
#include "severi/linsys.hpp"
#include "severi/metric.hpp"
#include "severi/random.hpp"

namespace severi {

template <ScalarField S>
double curve_distance(const PlaneCurve<S>& a, const PlaneCurve<S>& b) {
    if (a.degree() != b.degree())
        throw Error("degree mismatch: " + std::to_string(a.degree()) + " vs " + std::to_string(b.degree()));
    std::vector<Complex> va, vb;
    for (const auto& c : a.form().coefficients()) va.push_back(to_complex(c));
    for (const auto& c : b.form().coefficients()) vb.push_back(to_complex(c));
    return fs_distance(va, vb);
}

/// A curve at Fubini–Study distance exactly `distance` from c, moved along a
/// random complex-Gaussian direction orthogonal to its coefficient vector.
inline FloatCurve perturb_curve(const FloatCurve& c, double distance, Rng& rng) {
    std::vector<Complex> a = c.form().coefficients();
    double na = 0.0;
    for (auto v : a) na += std::norm(v);
    na = std::sqrt(na);
    for (auto& v : a) v /= na;
    std::vector<Complex> w(a.size());
    for (;;) {
        for (auto& v : w) v = rng.complex_gaussian();
        Complex proj = 0.0;
        for (std::size_t s = 0; s < a.size(); ++s) proj += w[s] * std::conj(a[s]);
        double nw = 0.0;
        for (std::size_t s = 0; s < a.size(); ++s) {
            w[s] -= proj * a[s];
            nw += std::norm(w[s]);
        }
        nw = std::sqrt(nw);
        if (nw < 1e-8) continue;
        for (auto& v : w) v /= nw;
        break;
    }
    std::vector<Complex> out(a.size());
    for (std::size_t s = 0; s < a.size(); ++s) out[s] = std::cos(distance) * a[s] + std::sin(distance) * w[s];
    return FloatCurve(FloatForm(c.degree(), out));
}

enum class TrackStatus { node, critical_not_on_curve, degenerate, diverged };

inline std::string to_string(TrackStatus s) {
    switch (s) {
        case TrackStatus::node: return "node";
        case TrackStatus::critical_not_on_curve: return "critical point, not on curve";
        case TrackStatus::degenerate: return "degenerate critical point";
        default: return "diverged";
    }
}

struct TrackedNode {
    FloatPoint original;
    std::optional<FloatPoint> tracked;
    TrackStatus status = TrackStatus::diverged;
    int iterations = 0;
    double displacement = 0.0;   // Fubini–Study distance moved
    double value = 0.0;          // |f'| at the critical point, unit-norm coefficients
    Complex hessian_determinant;
};

struct TrackReport {
    std::vector<TrackedNode> nodes;
    double distance = 0.0;
    std::optional<std::string> warning;
    bool all_nodes() const {
        return std::all_of(nodes.begin(), nodes.end(), [](const TrackedNode& t) { return t.status == TrackStatus::node; });
    }
};

namespace detail {

inline FloatForm unit_normalized(const FloatForm& f) {
    double n = 0.0;
    for (auto v : f.coefficients()) n += std::norm(v);
    return f.scaled(1.0 / std::sqrt(n));
}

}  // namespace detail

/// Newton on (f'_u, f'_v) = 0 from each node, in the node's chart, with the
/// Hessian as Jacobian. Stops when the step or the gradient falls below
/// 1e-12; more than 50 iterations, or leaving the radius, is divergence.
template <ScalarField S>
TrackReport track_nodes(const NodalConfiguration<S>& base, const FloatCurve& perturbed, double radius,
                        const Tolerances& tol = {}) {
    if (perturbed.degree() != base.degree()) throw Error("degree mismatch between base and perturbed curve");
    TrackReport rep;
    const FloatCurve b = base.curve.to_float();
    rep.distance = curve_distance(b, perturbed);
    if (rep.distance > 1e-2)
        rep.warning = "perturbation is large: curve distance " + std::to_string(rep.distance) + " > 1e-2";
    const FloatForm unit = detail::unit_normalized(perturbed.form());
    for (const auto& node : base.nodes) {
        TrackedNode tn{node.to_float()};
        const Chart ch = tn.original.chart();
        const auto f = unit.dehomogenize(ch);
        const auto fu = f.derivative(0), fv = f.derivative(1);
        const auto fuu = fu.derivative(0), fuv = fu.derivative(1), fvv = fv.derivative(1);
        auto uv = tn.original.affine(ch);
        bool converged = false;
        for (int it = 0; it <= 50; ++it) {
            const Complex gu = fu.eval(uv[0], uv[1]), gv = fv.eval(uv[0], uv[1]);
            if (std::sqrt(std::norm(gu) + std::norm(gv)) < 1e-12) {
                converged = true;
                break;
            }
            if (it == 50) break;
            const Complex a = fuu.eval(uv[0], uv[1]), bb = fuv.eval(uv[0], uv[1]), c = fvv.eval(uv[0], uv[1]);
            const Complex det = a * c - bb * bb;
            if (det == 0.0) break;
            const Complex du = -(c * gu - bb * gv) / det, dv = -(a * gv - bb * gu) / det;
            uv[0] += du;
            uv[1] += dv;
            tn.iterations = it + 1;
            if (FloatPoint::from_affine(ch, uv[0], uv[1]).distance(tn.original) > radius) break;
            if (std::sqrt(std::norm(du) + std::norm(dv)) < 1e-12) {
                converged = true;
                break;
            }
        }
        FloatPoint q = FloatPoint::from_affine(ch, uv[0], uv[1]);
        tn.displacement = q.distance(tn.original);
        if (!converged || tn.displacement > radius) {
            tn.status = TrackStatus::diverged;
            rep.nodes.push_back(tn);
            continue;
        }
        tn.tracked = q;
        tn.value = std::abs(f.eval(uv[0], uv[1]));
        tn.hessian_determinant = hessian_determinant(f, uv[0], uv[1]);
        if (tn.value > tol.residual)
            tn.status = TrackStatus::critical_not_on_curve;
        else if (std::abs(tn.hessian_determinant) <= tol.hessian)
            tn.status = TrackStatus::degenerate;
        else
            tn.status = TrackStatus::node;
        rep.nodes.push_back(tn);
    }
    return rep;
}

struct StabilityTrial {
    double curve_distance = 0.0;  // max over the two perturbed curves
    double displacement = 0.0;    // max over original points
    bool failed = false;
};

struct StabilityReport {
    std::vector<StabilityTrial> trials;
    double max = 0.0;
    double mean = 0.0;
    int failures = 0;
    int points = 0;
    static constexpr const char* label = "EXPERIMENT";
};

namespace detail {

/// Newton on (g1, g2) = 0 in the chart of the start point.
inline std::optional<FloatPoint> refine_intersection(const FloatForm& g1, const FloatForm& g2, const FloatPoint& start) {
    const Chart ch = start.chart();
    const auto a = g1.dehomogenize(ch), b = g2.dehomogenize(ch);
    const auto au = a.derivative(0), av = a.derivative(1), bu = b.derivative(0), bv = b.derivative(1);
    auto uv = start.affine(ch);
    for (int it = 0; it < 50; ++it) {
        const Complex r1 = a.eval(uv[0], uv[1]), r2 = b.eval(uv[0], uv[1]);
        if (std::sqrt(std::norm(r1) + std::norm(r2)) < 1e-14) return FloatPoint::from_affine(ch, uv[0], uv[1]);
        const Complex j11 = au.eval(uv[0], uv[1]), j12 = av.eval(uv[0], uv[1]);
        const Complex j21 = bu.eval(uv[0], uv[1]), j22 = bv.eval(uv[0], uv[1]);
        const Complex det = j11 * j22 - j12 * j21;
        if (det == 0.0) return std::nullopt;
        const Complex du = -(j22 * r1 - j12 * r2) / det, dv = -(j11 * r2 - j21 * r1) / det;
        uv[0] += du;
        uv[1] += dv;
        if (std::sqrt(std::norm(du) + std::norm(dv)) < 1e-15 * (1.0 + std::abs(uv[0]) + std::abs(uv[1])))
            return FloatPoint::from_affine(ch, uv[0], uv[1]);
    }
    return std::nullopt;
}

}  // namespace detail

/// For each trial, both curves are moved to Fubini–Study distance
/// delta * U[0,1); each original intersection point is followed to the
/// perturbed intersection by Newton's method, and the largest displacement is
/// recorded. A trial fails when some point cannot be followed.
template <ScalarField S>
StabilityReport intersection_stability_experiment(const PlaneCurve<S>& c1, const PlaneCurve<S>& c2, int trials,
                                                   double delta, std::uint64_t seed) {
    if (trials < 0) throw Error("trial count must be non-negative");
    if (delta < 0.0) throw Error("delta must be non-negative");
    auto base = bezout_count(c1, c2);
    for (const auto& p : base.points)
        if (!p.transversal)
            throw Error("precondition failure: intersection at " + to_string(p.point) + " is not transversal");
    StabilityReport rep;
    rep.points = static_cast<int>(base.points.size());
    const FloatCurve f1 = c1.to_float(), f2 = c2.to_float();
    std::vector<FloatPoint> original;
    for (const auto& ip : base.points) {
        auto q = detail::refine_intersection(detail::unit_normalized(f1.form()), detail::unit_normalized(f2.form()), ip.point);
        if (!q) throw Error("precondition failure: Newton does not converge at " + to_string(ip.point));
        original.push_back(*q);
    }
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        StabilityTrial tr;
        const FloatCurve p1 = delta == 0.0 ? f1 : perturb_curve(f1, delta * rng.uniform(), rng);
        const FloatCurve p2 = delta == 0.0 ? f2 : perturb_curve(f2, delta * rng.uniform(), rng);
        tr.curve_distance = std::max(curve_distance(f1, p1), curve_distance(f2, p2));
        const FloatForm u1 = detail::unit_normalized(p1.form()), u2 = detail::unit_normalized(p2.form());
        for (std::size_t k = 0; k < base.points.size(); ++k) {
            auto q = detail::refine_intersection(u1, u2, base.points[k].point);
            if (!q) {
                tr.failed = true;
                continue;
            }
            tr.displacement = std::max(tr.displacement, q->distance(original[k]));
        }
        rep.trials.push_back(tr);
    }
    double sum = 0.0;
    for (const auto& tr : rep.trials) {
        rep.max = std::max(rep.max, tr.displacement);
        sum += tr.displacement;
        rep.failures += tr.failed ? 1 : 0;
    }
    rep.mean = rep.trials.empty() ? 0.0 : sum / static_cast<double>(rep.trials.size());
    return rep;
}

}  // namespace severi
