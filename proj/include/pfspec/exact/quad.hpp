#pragma once

#include <string>
#include <string_view>

#include "pfspec/exact/rational.hpp"

namespace pfspec::exact {

/**
 * Element a + b*sqrt(d) of the real quadratic field Q(sqrt d).
 *
 * d is a square-free integer > 1 carried with the value; mixing two different
 * radicands is a PreconditionError. Equality is component-wise.
 */
class QuadExt {
public:
    QuadExt() = default;
    QuadExt(Rational a, Rational b, long d = 5);

    /// The golden ratio (1 + sqrt 5) / 2.
    static QuadExt golden();

    const Rational& a() const noexcept { return a_; }
    const Rational& b() const noexcept { return b_; }
    long d() const noexcept { return d_; }

    bool is_zero() const noexcept { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const noexcept { return b_.is_zero(); }

    QuadExt conjugate() const { return QuadExt(a_, -b_, d_); }
    /// Field norm a^2 - d b^2.
    Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }
    QuadExt inverse() const;
    QuadExt pow(long exponent) const;

    /// Exact sign of a + b sqrt(d) without floating point.
    int sign() const;

    /// Square root inside the same field, if one exists.
    bool try_sqrt(QuadExt& root) const;

    double to_double() const;

    /// "a/b+c/e√d" (minus sign folded in when c < 0).
    std::string to_string() const;

    QuadExt& operator+=(const QuadExt& o);
    QuadExt& operator-=(const QuadExt& o);
    QuadExt& operator*=(const QuadExt& o);
    QuadExt& operator/=(const QuadExt& o);

    friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
    friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
    friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
    friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
    QuadExt operator-() const { return QuadExt(-a_, -b_, d_); }

    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && (x.d_ == y.d_ || x.b_.is_zero());
    }

private:
    void check_same_field(const QuadExt& o) const;

    Rational a_;
    Rational b_;
    long d_ = 5;
};

}  // namespace pfspec::exact
