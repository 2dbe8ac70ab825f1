#pragma once

#include <string>

#include "pfspec/exact/scalar.hpp"

namespace pfspec::exact {

/// Exact complex number re + i*im with components in a real exact field.
template <class T>
struct Complex {
    T re{};
    T im{};

    Complex() = default;
    Complex(T r) : re(std::move(r)), im(T(0)) {}  // NOLINT(google-explicit-constructor)
    Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

    static Complex i() { return Complex(T(0), T(1)); }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }

    Complex conj() const { return Complex(re, -im); }
    /// |z|^2, which stays in the real field.
    T norm2() const { return re * re + im * im; }

    Complex inverse() const {
        T n = norm2();
        return Complex(re / n, -im / n);
    }

    Complex pow(long k) const {
        if (k < 0) return inverse().pow(-k);
        Complex result(T(1));
        Complex base = *this;
        while (k > 0) {
            if (k & 1) result *= base;
            base *= base;
            k >>= 1;
        }
        return result;
    }

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) {
        T r = re * o.re - im * o.im;
        T i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    Complex& operator/=(const Complex& o) { return *this *= o.inverse(); }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    Complex operator-() const { return Complex(-re, -im); }

    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

    std::string to_string() const { return "(" + re.to_string() + ", " + im.to_string() + ")"; }
};

using ComplexScalar = Complex<Scalar>;

inline ComplexScalar conj(const ComplexScalar& z) { return z.conj(); }

}  // namespace pfspec::exact
