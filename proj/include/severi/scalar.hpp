#pragma once

// Scalar modes: exact Gaussian rationals (GMP) and double-precision complex.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <ostream>
#include <string>
#include <string_view>

namespace severi {

using Rational = mpq_class;
using Complex = std::complex<double>;

enum class Mode { exact, floating };

inline std::string_view to_string(Mode m) { return m == Mode::exact ? "exact" : "float"; }

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw Error("empty rational literal");
    auto slash = s.find('/');
    auto valid_int = [](std::string_view v) {
        if (v.empty()) return false;
        std::size_t i = (v[0] == '-' || v[0] == '+') ? 1 : 0;
        if (i == v.size()) return false;
        for (; i < v.size(); ++i)
            if (v[i] < '0' || v[i] > '9') return false;
        return true;
    };
    std::string_view num = std::string_view(s).substr(0, slash);
    std::string_view den = slash == std::string::npos ? std::string_view("1") : std::string_view(s).substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw Error("malformed rational literal '" + s + "'");
    std::string n(num);
    if (n[0] == '+') n.erase(0, 1);
    Rational q{mpz_class(n), mpz_class(std::string(den))};
    if (q.get_den() == 0) throw Error("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// n/d in lowest terms (mpq_class(n, d) does not canonicalize).
inline Rational make_rational(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw Error("zero denominator");
    Rational q{n, d};
    q.canonicalize();
    return q;
}

/// Exact element of Q(i). Parts are kept canonical by GMP.
struct QComplex {
    Rational re;
    Rational im;

    QComplex() = default;
    QComplex(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
    QComplex(Rational r) : re(std::move(r)), im(0) {}  // NOLINT
    QComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    QComplex& operator+=(const QComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    QComplex& operator-=(const QComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    QComplex& operator*=(const QComplex& o) {
        if (is_real() && o.is_real()) {
            re *= o.re;
            return *this;
        }
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    QComplex& operator/=(const QComplex& o) {
        if (o.is_zero()) throw Error("division by zero");
        if (o.is_real()) {
            re /= o.re;
            im /= o.re;
            return *this;
        }
        Rational n = o.re * o.re + o.im * o.im;
        Rational r = (re * o.re + im * o.im) / n;
        Rational i = (im * o.re - re * o.im) / n;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
    friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
    friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
    friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
    friend QComplex operator-(QComplex a) {
        a.re = -a.re;
        a.im = -a.im;
        return a;
    }
    friend bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }

    QComplex conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }
    Complex to_complex() const { return {re.get_d(), im.get_d()}; }
};

inline std::string to_string(const QComplex& z) {
    if (z.is_real()) return z.re.get_str();
    return z.re.get_str() + (sgn(z.im) < 0 ? "" : "+") + z.im.get_str() + "i";
}

inline std::ostream& operator<<(std::ostream& os, const QComplex& z) { return os << to_string(z); }

template <class S>
concept ScalarField = std::same_as<S, QComplex> || std::same_as<S, Complex>;

template <class S>
inline constexpr bool is_exact_v = std::same_as<S, QComplex>;

template <ScalarField S>
inline bool is_zero(const S& s) {
    if constexpr (is_exact_v<S>)
        return s.is_zero();
    else
        return s == Complex{};
}

template <ScalarField S>
inline Complex to_complex(const S& s) {
    if constexpr (is_exact_v<S>)
        return s.to_complex();
    else
        return s;
}

template <ScalarField S>
inline double modulus(const S& s) {
    return std::abs(to_complex(s));
}

template <ScalarField S>
inline S from_int(long v) {
    if constexpr (is_exact_v<S>)
        return QComplex(v);
    else
        return Complex(static_cast<double>(v), 0.0);
}

/// Integer power for either scalar mode (exponent ≥ 0).
template <ScalarField S>
inline S ipow(const S& base, int e) {
    S r = from_int<S>(1);
    S b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

/// Best rational approximation with bounded denominator (continued fractions).
inline Rational rational_approximation(double v, long max_den) {
    if (!std::isfinite(v)) throw Error("non-finite value in rational reconstruction");
    long sign = v < 0 ? -1 : 1;
    double x = std::abs(v);
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = x;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(frac);
        if (a > 1e15) break;
        mpz_class ai = static_cast<long>(a);
        mpz_class p2 = ai * p1 + p0;
        mpz_class q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double rem = frac - a;
        if (rem < 1e-18) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0) return Rational(0);
    Rational r(p1 * sign, q1);
    r.canonicalize();
    return r;
}

/// Exact rational value of a double (every finite double is a dyadic rational).
inline Rational exact_rational(double v) {
    if (!std::isfinite(v)) throw Error("non-finite coefficient");
    Rational r(v);
    return r;
}

}  // namespace severi
