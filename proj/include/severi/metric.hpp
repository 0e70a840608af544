#pragma once

// Fubini–Study distance on complex projective space.

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "severi/scalar.hpp"

namespace severi {

/// d([a], [b]) = arccos(|<a,b>| / (|a||b|)), in [0, pi/2].
///
/// Evaluated as atan2(|a ^ b|, |<a,b>|) with the wedge norm summed over
/// coordinate pairs (Lagrange identity), which stays accurate near 0 where
/// arccos loses half the digits.
inline double fs_distance(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw Error("points live in projective spaces of different dimension");
    double na = 0.0, nb = 0.0;
    for (auto v : a) na = std::max(na, std::abs(v));
    for (auto v : b) nb = std::max(nb, std::abs(v));
    if (na == 0.0 || nb == 0.0) throw Error("the zero vector is not a projective point");
    Complex inner = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) inner += (a[i] / na) * std::conj(b[i] / nb);
    double wedge2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            wedge2 += std::norm((a[i] / na) * (b[j] / nb) - (a[j] / na) * (b[i] / nb));
    return std::atan2(std::sqrt(wedge2), std::abs(inner));
}

inline double fs_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    return fs_distance(std::span<const Complex>(a), std::span<const Complex>(b));
}

/// Distance from [1 : a_1 : ... : a_n] to the hyperplane {X_0 = 0}.
inline double fs_distance_to_hyperplane(std::span<const Complex> affine) {
    double s = 0.0;
    for (auto v : affine) s += std::norm(v);
    return std::acos(std::sqrt(s / (1.0 + s)));
}

/// The cut locus of p: points at maximal distance pi/2, i.e. <p, q> = 0.
inline bool in_cut_locus(std::span<const Complex> p, std::span<const Complex> q, double tol = 1e-12) {
    return std::abs(fs_distance(p, q) - std::numbers::pi / 2) <= tol;
}

}  // namespace severi
