#pragma once

#include <array>
#include <string>

#include "severi/metric.hpp"
#include "severi/polynomial.hpp"

namespace severi {

inline constexpr double default_point_tolerance = 1e-8;

/// A point of P^2. Exact points are normalized with the first nonzero
/// coordinate equal to 1; floating points with the largest-modulus
/// coordinate equal to 1.
template <ScalarField S>
class ProjectivePoint {
public:
    ProjectivePoint(S x, S y, S z) : c_{std::move(x), std::move(y), std::move(z)} { normalize(); }
    explicit ProjectivePoint(std::array<S, 3> c) : c_(std::move(c)) { normalize(); }

    static ProjectivePoint from_affine(Chart chart, const S& u, const S& v) {
        std::array<S, 3> c;
        auto fi = chart.free_indices();
        c[fi[0]] = u;
        c[fi[1]] = v;
        c[static_cast<int>(chart.fixed)] = from_int<S>(1);
        return ProjectivePoint(c);
    }

    const std::array<S, 3>& coords() const { return c_; }
    const S& operator[](int i) const { return c_[i]; }

    /// Working chart: last nonzero coordinate (exact) or largest modulus (float).
    Chart chart() const {
        if constexpr (is_exact_v<S>) {
            for (int i = 2; i >= 0; --i)
                if (!is_zero(c_[i])) return {static_cast<Variable>(i)};
        } else {
            int best = 0;
            for (int i = 1; i < 3; ++i)
                if (std::abs(c_[i]) > std::abs(c_[best])) best = i;
            return {static_cast<Variable>(best)};
        }
        return {};
    }

    bool lies_in(Chart chart) const { return !is_zero(c_[static_cast<int>(chart.fixed)]); }

    /// Affine coordinates (u, v) in the given chart.
    std::array<S, 2> affine(Chart chart) const {
        const S& w = c_[static_cast<int>(chart.fixed)];
        if (is_zero(w)) throw Error("point is at infinity in chart " + to_string(chart));
        auto fi = chart.free_indices();
        return {c_[fi[0]] / w, c_[fi[1]] / w};
    }
    std::array<S, 2> affine() const { return affine(chart()); }

    std::array<Complex, 3> to_complex_coords() const {
        return {severi::to_complex(c_[0]), severi::to_complex(c_[1]), severi::to_complex(c_[2])};
    }
    ProjectivePoint<Complex> to_float() const { return ProjectivePoint<Complex>(to_complex_coords()); }

    double distance(const ProjectivePoint& o) const {
        auto a = to_complex_coords();
        auto b = o.to_complex_coords();
        return fs_distance(std::span<const Complex>(a), std::span<const Complex>(b));
    }

    /// Exact: equal normalized coordinates. Float: FS distance below tol.
    bool same_as(const ProjectivePoint& o, double tol = default_point_tolerance) const {
        if constexpr (is_exact_v<S>)
            return c_ == o.c_;
        else
            return distance(o) < tol;
    }

    friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;

private:
    void normalize() {
        int pivot = -1;
        if constexpr (is_exact_v<S>) {
            for (int i = 0; i < 3 && pivot < 0; ++i)
                if (!is_zero(c_[i])) pivot = i;
        } else {
            double best = 0.0;
            for (int i = 0; i < 3; ++i)
                if (std::abs(c_[i]) > best) {
                    best = std::abs(c_[i]);
                    pivot = i;
                }
        }
        if (pivot < 0) throw Error("all homogeneous coordinates are zero");
        S s = c_[pivot];
        for (auto& v : c_) v /= s;
        if constexpr (!is_exact_v<S>) c_[pivot] = Complex(1.0, 0.0);
    }

    std::array<S, 3> c_;
};

template <ScalarField S>
std::string to_string(const ProjectivePoint<S>& p) {
    auto one = [](const S& v) {
        if constexpr (is_exact_v<S>)
            return severi::to_string(v);
        else {
            auto z = v;
            std::string s = std::to_string(z.real());
            if (z.imag() != 0.0) s += (z.imag() < 0 ? "" : "+") + std::to_string(z.imag()) + "i";
            return s;
        }
    };
    return "[" + one(p[0]) + ":" + one(p[1]) + ":" + one(p[2]) + "]";
}

using ExactPoint = ProjectivePoint<QComplex>;
using FloatPoint = ProjectivePoint<Complex>;

}  // namespace severi
