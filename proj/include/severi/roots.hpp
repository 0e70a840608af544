#pragma once

// Simultaneous root finding for univariate complex polynomials:
// Aberth–Ehrlich iteration, with a companion-matrix eigenvalue fallback.

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "severi/univariate.hpp"

namespace severi {

namespace detail {

inline std::vector<Complex> companion_roots(const std::vector<Complex>& monic) {
    const int n = static_cast<int>(monic.size()) - 1;
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
    for (int r = 1; r < n; ++r) c(r, r - 1) = 1.0;
    for (int r = 0; r < n; ++r) c(r, n - 1) = -monic[r];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, false);
    std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return out;
}

}  // namespace detail

struct RootFinderStats {
    int iterations = 0;
    bool used_fallback = false;
};

/// All complex roots with multiplicity (degree many), unordered.
inline std::vector<Complex> polynomial_roots(const UniPoly<Complex>& p, RootFinderStats* stats = nullptr) {
    if (p.is_zero()) throw Error("roots of the zero polynomial");
    std::vector<Complex> coeffs = p.coefficients();
    std::vector<Complex> roots;
    std::size_t lead_zero = 0;
    while (lead_zero < coeffs.size() && coeffs[lead_zero] == Complex{}) ++lead_zero;
    roots.assign(lead_zero, Complex{});
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(lead_zero));
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n <= 0) return roots;
    const Complex lc = coeffs.back();
    for (auto& c : coeffs) c /= lc;
    if (n == 1) {
        roots.push_back(-coeffs[0]);
        return roots;
    }

    // Fujiwara-style bound for the initial circle.
    double radius = 0.0;
    for (int k = 0; k < n; ++k) radius = std::max(radius, std::pow(std::abs(coeffs[k]), 1.0 / (n - k)));
    radius = std::max(radius, 1e-3);

    std::vector<Complex> z(n);
    for (int k = 0; k < n; ++k)
        z[k] = std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.4);

    const double eps = std::numeric_limits<double>::epsilon();
    bool converged = false;
    int it = 0;
    for (; it < 2000 && !converged; ++it) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            Complex f = coeffs[n], df = 0.0;
            for (int k = n - 1; k >= 0; --k) {
                df = df * z[i] + f;
                f = f * z[i] + coeffs[k];
            }
            if (f == Complex{}) continue;
            Complex ratio = f / df;
            Complex s = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) s += 1.0 / (z[i] - z[j]);
            Complex w = ratio / (1.0 - ratio * s);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
                converged = false;
                it = 2000;
                break;
            }
            z[i] -= w;
            if (std::abs(w) > 4.0 * eps * std::max(1.0, std::abs(z[i]))) converged = false;
        }
    }
    if (stats) stats->iterations = it;
    bool finite = true;
    for (const auto& r : z) finite = finite && std::isfinite(r.real()) && std::isfinite(r.imag());
    // Multiple roots stall Aberth at ~eps^(1/m); accept those when the
    // residual is tiny, fall back to the companion matrix otherwise.
    if (!converged || !finite) {
        double worst = 0.0, scale = 0.0;
        for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
        for (const auto& r : z) {
            Complex f = coeffs[n];
            double mag = 0.0, pw = 1.0;
            for (int k = n - 1; k >= 0; --k) f = f * r + coeffs[k];
            for (int k = 0; k <= n; ++k, pw *= std::abs(r)) mag += std::abs(coeffs[k]) * pw;
            worst = std::max(worst, std::abs(f) / mag);
        }
        if (!finite || !(worst < 1e-10)) {
            if (stats) stats->used_fallback = true;
            z = detail::companion_roots(coeffs);
        }
    }
    roots.insert(roots.end(), z.begin(), z.end());
    return roots;
}

/// Groups roots lying within `tol` of each other (single linkage).
struct RootGroup {
    Complex center;
    int count = 0;
    double spread = 0.0;
};

inline std::vector<RootGroup> cluster_roots(const std::vector<Complex>& roots, double tol) {
    const std::size_t n = roots.size();
    std::vector<int> label(n, -1);
    int next = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (label[s] >= 0) continue;
        label[s] = next;
        std::vector<std::size_t> stack{s};
        while (!stack.empty()) {
            auto a = stack.back();
            stack.pop_back();
            for (std::size_t b = 0; b < n; ++b)
                if (label[b] < 0 && std::abs(roots[a] - roots[b]) <= tol * std::max(1.0, std::abs(roots[a]))) {
                    label[b] = next;
                    stack.push_back(b);
                }
        }
        ++next;
    }
    std::vector<RootGroup> groups(next);
    for (std::size_t s = 0; s < n; ++s) {
        groups[label[s]].center += roots[s];
        groups[label[s]].count += 1;
    }
    for (auto& g : groups) g.center /= static_cast<double>(g.count);
    for (std::size_t s = 0; s < n; ++s)
        groups[label[s]].spread = std::max(groups[label[s]].spread, std::abs(roots[s] - groups[label[s]].center));
    return groups;
}

}  // namespace severi
