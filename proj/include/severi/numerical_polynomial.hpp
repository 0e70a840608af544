#pragma once

// Numerical polynomials (integer-valued on the integers) in the binomial
// basis C(T, m), and the Hilbert polynomial of a plane curve.

#include <variant>
#include <vector>

#include "severi/scalar.hpp"
#include "severi/univariate.hpp"

namespace severi {

using QPoly = UniPoly<QComplex>;

struct NumericalPolynomialCertificate {
    /// p(T) = sum_m binomial_coefficients[m] * C(T, m)
    std::vector<mpz_class> binomial_coefficients;
};

/// No certificate: p(witness) is not an integer.
struct NonIntegerWitness {
    long witness = 0;
    Rational value;
};

/// C(T, m) = T(T-1)...(T-m+1)/m! with exact rational coefficients.
inline QPoly binomial_polynomial(int m) {
    QPoly p = QPoly::constant(QComplex(1));
    mpz_class fact = 1;
    for (int t = 0; t < m; ++t) {
        p = p * QPoly::linear_root(QComplex(t));
        fact *= t + 1;
    }
    return QComplex(Rational(1, fact)) * p;
}

inline QPoly expand(const NumericalPolynomialCertificate& cert) {
    QPoly p;
    for (std::size_t m = 0; m < cert.binomial_coefficients.size(); ++m)
        p = p + QComplex(Rational(cert.binomial_coefficients[m])) * binomial_polynomial(static_cast<int>(m));
    return p;
}

/// Certifies integrality on Z from deg(p)+1 consecutive values at
/// 0..deg(p); the binomial coefficients are the forward differences there.
inline std::variant<NumericalPolynomialCertificate, NonIntegerWitness> is_numerical(const QPoly& p) {
    for (const auto& c : p.coefficients())
        if (!c.is_real()) throw Error("numerical polynomial test needs rational coefficients");
    const int r = p.degree();
    std::vector<Rational> values;
    for (long n = 0; n <= r; ++n) {
        QComplex v = p.eval(QComplex(n));
        if (v.re.get_den() != 1) return NonIntegerWitness{n, v.re};
        values.push_back(v.re);
    }
    NumericalPolynomialCertificate cert;
    // Forward difference table; the head of each row is Δ^m p(0).
    while (!values.empty()) {
        cert.binomial_coefficients.push_back(values.front().get_num());
        for (std::size_t t = 0; t + 1 < values.size(); ++t) values[t] = values[t + 1] - values[t];
        values.pop_back();
    }
    return cert;
}

/// h(T) = C(T+2, 2) - C(T-d+2, 2).
inline QPoly hilbert_polynomial_plane_curve(int d) {
    if (d < 1) throw Error("plane curve degree must be at least 1");
    auto binom2_shift = [](long shift) {
        // C(T + shift, 2) = (T + shift)(T + shift - 1)/2
        return QComplex(Rational(1, 2)) * (QPoly::linear_root(QComplex(-shift)) * QPoly::linear_root(QComplex(1 - shift)));
    };
    return binom2_shift(2) - binom2_shift(2 - d);
}

}  // namespace severi
