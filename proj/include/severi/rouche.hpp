#pragma once

// Root counting in discs by the argument principle, and coefficient budgets
// under which every root cluster keeps its count (Rouché).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "severi/roots.hpp"
#include "severi/univariate.hpp"

namespace severi {

struct WindingCount {
    int count = 0;
    double winding = 0.0;
    double margin = 0.0;  // distance of the winding number to the nearest integer
    int samples = 0;
};

namespace detail {

/// Winding number of f around the circle from `samples` equispaced points.
/// Returns nullopt when some sample is zero or an argument step is not
/// safely below pi/2 (the curve may wind between samples).
inline std::optional<double> sampled_winding(const UniPoly<Complex>& f, Complex center, double radius, int samples) {
    Complex prev = f.eval(center + radius);
    if (prev == 0.0) return std::nullopt;
    double total = 0.0;
    for (int s = 1; s <= samples; ++s) {
        Complex z = center + std::polar(radius, 2.0 * std::numbers::pi * s / samples);
        Complex cur = f.eval(z);
        if (cur == 0.0) return std::nullopt;
        double step = std::arg(cur / prev);
        if (std::abs(step) >= std::numbers::pi / 2) return std::nullopt;
        total += step;
        prev = cur;
    }
    return total / (2.0 * std::numbers::pi);
}

}  // namespace detail

/// Number of roots (with multiplicity) in the open disc, by the argument
/// principle. The sample count doubles from 64 until two consecutive levels
/// agree on a winding number within 0.25 of an integer.
inline WindingCount count_roots_in_disc(const UniPoly<Complex>& f, Complex center, double radius) {
    if (radius <= 0.0) throw Error("disc radius must be positive");
    if (f.is_zero()) throw Error("the zero polynomial has no finite root count");
    std::optional<long> previous;
    for (int samples = 64; samples <= (1 << 16); samples *= 2) {
        auto w = detail::sampled_winding(f, center, radius, samples);
        if (!w) {
            previous.reset();
            continue;
        }
        const long k = std::lround(*w);
        const double margin = std::abs(*w - static_cast<double>(k));
        if (margin < 0.25 && previous && *previous == k)
            return {static_cast<int>(k), *w, margin, samples};
        previous = margin < 0.25 ? std::optional<long>(k) : std::nullopt;
    }
    throw Error("root near boundary: argument principle not certified on |z - c| = " + std::to_string(radius));
}

inline int roots_in_disc(const UniPoly<Complex>& f, Complex center, double radius) {
    return count_roots_in_disc(f, center, radius).count;
}

struct RootCluster {
    Complex center;
    double radius = 0.0;
    int count = 0;
    double boundary_min = 0.0;  // certified lower bound of |f| on the circle
};

struct PerturbationBudget {
    double delta = 0.0;
    double epsilon = 0.0;
    int m = 0;
    std::vector<RootCluster> clusters;
    bool trivial() const { return clusters.empty(); }
};

namespace detail {

/// Lower bound on min |f| over the circle: sampled minimum minus the
/// Lipschitz slack between samples. Refines until the slack is at most half
/// the sampled minimum.
inline double certified_min_modulus(const UniPoly<Complex>& f, Complex center, double radius) {
    const double big_r = std::abs(center) + radius;
    double lipschitz = 0.0;
    for (int k = 1; k <= f.degree(); ++k) lipschitz += k * std::abs(f.coeff(k)) * std::pow(big_r, k - 1);
    for (int samples = 256; samples <= (1 << 18); samples *= 2) {
        double lo = std::numeric_limits<double>::infinity();
        for (int s = 0; s < samples; ++s)
            lo = std::min(lo, std::abs(f.eval(center + std::polar(radius, 2.0 * std::numbers::pi * s / samples))));
        const double slack = lipschitz * radius * std::numbers::pi / samples;
        if (slack <= 0.5 * lo) return lo - slack;
    }
    throw Error("root near boundary: no positive lower bound for |f| on |z - c| = " + std::to_string(radius));
}

}  // namespace detail

/// Separating discs of radius min(epsilon / deg f, separation / 3, 1) around
/// the root clusters of f, each with M = certified min |f| on its boundary,
/// and delta = min over discs of M / (2 * sum_{j <= m} R^j) with R = |c| + r.
/// Any g = sum b_k z^k with |b_k - a_k| < delta for k <= m (a_k = 0 above
/// deg f) satisfies |g - f| < |f| on every boundary, hence has the same
/// number of roots in each disc.
inline PerturbationBudget perturbation_budget(const UniPoly<Complex>& f, double epsilon, int m,
                                              double cluster_tol = 1e-6) {
    if (f.is_zero()) throw Error("perturbation budget of the zero polynomial");
    if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
    if (m < f.degree()) throw Error("m must be at least deg f");
    PerturbationBudget b;
    b.epsilon = epsilon;
    b.m = m;
    if (f.degree() <= 0) {
        b.delta = std::numeric_limits<double>::infinity();
        return b;
    }
    auto groups = cluster_roots(polynomial_roots(f), cluster_tol);
    double separation = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < groups.size(); ++a)
        for (std::size_t c = a + 1; c < groups.size(); ++c)
            separation = std::min(separation, std::abs(groups[a].center - groups[c].center));
    const double radius = std::min({epsilon / f.degree(), separation / 3.0, 1.0});
    b.delta = std::numeric_limits<double>::infinity();
    for (const auto& g : groups) {
        RootCluster rc{g.center, radius, count_roots_in_disc(f, g.center, radius).count, 0.0};
        rc.boundary_min = detail::certified_min_modulus(f, rc.center, rc.radius);
        const double big_r = std::abs(rc.center) + rc.radius;
        double power_sum = 0.0;
        for (int j = 0; j <= m; ++j) power_sum += std::pow(big_r, j);
        b.delta = std::min(b.delta, 0.5 * rc.boundary_min / power_sum);
        b.clusters.push_back(rc);
    }
    return b;
}

}  // namespace severi
