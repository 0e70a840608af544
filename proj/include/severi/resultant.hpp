#pragma once

// Resultants of bivariate polynomials with respect to the second affine
// coordinate, by evaluation and interpolation of Sylvester determinants.

#include <cmath>
#include <numbers>
#include <vector>

#include "severi/linalg.hpp"
#include "severi/polynomial.hpp"

namespace severi {

/// Sylvester resultant of a(v), b(v) taken with formal degrees m and n.
template <ScalarField S>
S sylvester_resultant(const std::vector<S>& a, int m, const std::vector<S>& b, int n) {
    const int size = m + n;
    if (size == 0) return from_int<S>(1);
    Matrix<S> syl(size, size);
    auto coef = [](const std::vector<S>& p, int k) { return k < static_cast<int>(p.size()) ? p[k] : from_int<S>(0); };
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) syl(r, r + (m - k)) = coef(a, k);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) syl(n + r, r + (n - k)) = coef(b, k);
    return determinant(syl);
}

/// Res_v(A, B) as a polynomial in u. Formal v-degrees are the actual
/// v-degrees of A and B over the polynomial ring in u.
template <ScalarField S>
UniPoly<S> resultant_v(const AffinePolynomial<S>& A, const AffinePolynomial<S>& B) {
    const int m = static_cast<int>(A.as_poly_in_v().size()) - 1;
    const int n = static_cast<int>(B.as_poly_in_v().size()) - 1;
    if (m < 0 || n < 0) return {};
    const int bound = std::max(A.total_degree(), 0) * std::max(B.total_degree(), 0);
    const int samples = bound + 1;
    auto value_at = [&](const S& u0) {
        return sylvester_resultant(A.restrict_u(u0).coefficients(), m, B.restrict_u(u0).coefficients(), n);
    };
    if constexpr (is_exact_v<S>) {
        // Newton divided differences on u = 0, 1, ..., bound.
        std::vector<QComplex> dd(samples);
        for (int s = 0; s < samples; ++s) dd[s] = value_at(QComplex(s));
        for (int level = 1; level < samples; ++level)
            for (int s = samples - 1; s >= level; --s) dd[s] = (dd[s] - dd[s - 1]) / QComplex(level);
        UniPoly<QComplex> result = UniPoly<QComplex>::constant(dd[samples - 1]);
        for (int s = samples - 2; s >= 0; --s)
            result = result * UniPoly<QComplex>::linear_root(QComplex(s)) + UniPoly<QComplex>::constant(dd[s]);
        return result;
    } else {
        // Inverse DFT of values on the unit circle.
        std::vector<Complex> vals(samples);
        for (int s = 0; s < samples; ++s) vals[s] = value_at(std::polar(1.0, 2.0 * std::numbers::pi * s / samples));
        std::vector<Complex> coeffs(samples);
        double scale = 0.0;
        for (int j = 0; j < samples; ++j) {
            Complex acc = 0.0;
            for (int s = 0; s < samples; ++s) acc += vals[s] * std::polar(1.0, -2.0 * std::numbers::pi * j * s / samples);
            coeffs[j] = acc / static_cast<double>(samples);
            scale = std::max(scale, std::abs(coeffs[j]));
        }
        // Interpolation noise would otherwise fake a higher degree.
        for (auto& c : coeffs)
            if (std::abs(c) < 1e-13 * scale) c = 0.0;
        return UniPoly<Complex>(std::move(coeffs));
    }
}

}  // namespace severi
