#pragma once

#include <cmath>
#include <ostream>

namespace sendov {

/// Minimal complex number over an arbitrary real field.
///
/// std::complex is only specified for the built-in floating point types, so
/// multiprecision reals get this small value type instead.
template <class Real>
struct Complex {
    Real re{0};
    Real im{0};

    Complex() = default;
    Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT: implicit by design of the field embedding
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        // Smith's algorithm keeps intermediate magnitudes bounded.
        using std::abs;
        if (abs(o.re) >= abs(o.im)) {
            Real t = o.im / o.re;
            Real den = o.re + o.im * t;
            Real r = (re + im * t) / den;
            im = (im - re * t) / den;
            re = std::move(r);
        } else {
            Real t = o.re / o.im;
            Real den = o.re * t + o.im;
            Real r = (re * t + im) / den;
            im = (im * t - re) / den;
            re = std::move(r);
        }
        return *this;
    }
    Complex& operator*=(const Real& s) { re *= s; im *= s; return *this; }
    Complex& operator/=(const Real& s) { re /= s; im /= s; return *this; }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator*(Complex a, const Real& s) { return a *= s; }
    friend Complex operator*(const Real& s, Complex a) { return a *= s; }
    friend Complex operator/(Complex a, const Real& s) { return a /= s; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }

    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Complex& z) {
        return os << '(' << z.re << ',' << z.im << ')';
    }
};

template <class Real>
Real norm(const Complex<Real>& z) {
    return z.re * z.re + z.im * z.im;
}

template <class Real>
Real abs(const Complex<Real>& z) {
    using std::abs;
    using std::sqrt;
    Real a = abs(z.re);
    Real b = abs(z.im);
    if (a < b) std::swap(a, b);
    if (a == 0) return a;
    Real t = b / a;
    return a * sqrt(Real(1) + t * t);
}

template <class Real>
Complex<Real> conj(const Complex<Real>& z) {
    return {z.re, -z.im};
}

template <class Real>
Real arg(const Complex<Real>& z) {
    using std::atan2;
    return atan2(z.im, z.re);
}

/// r * e^{i theta}
template <class Real>
Complex<Real> polar(const Real& r, const Real& theta) {
    using std::cos;
    using std::sin;
    return {r * cos(theta), r * sin(theta)};
}

/// Lexicographic order on (re, im); used to make tie-breaking deterministic.
template <class Real>
bool lex_less(const Complex<Real>& a, const Complex<Real>& b) {
    if (a.re < b.re) return true;
    if (b.re < a.re) return false;
    return a.im < b.im;
}

template <class To, class From>
Complex<To> complex_cast(const Complex<From>& z) {
    return {static_cast<To>(z.re), static_cast<To>(z.im)};
}

}  // namespace sendov
