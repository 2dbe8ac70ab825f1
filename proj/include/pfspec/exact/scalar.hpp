#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include "pfspec/exact/quad.hpp"
#include "pfspec/exact/rational.hpp"

namespace pfspec::exact {

/**
 * Coefficient field of all symbolic computation: a tagged union of Rational
 * and QuadExt. Mixed arithmetic promotes the rational operand losslessly to
 * QuadExt with b = 0; results of Rational-only arithmetic stay Rational.
 */
class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    Scalar(Rational r) : v_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    Scalar(QuadExt q) : v_(std::move(q)) {}   // NOLINT(google-explicit-constructor)
    Scalar(int n) : v_(Rational(n)) {}        // NOLINT(google-explicit-constructor)
    Scalar(long n) : v_(Rational(n)) {}       // NOLINT(google-explicit-constructor)
    Scalar(long num, long den) : v_(Rational(num, den)) {}

    /// "num/den", "num", or "a/b+c/e√d".
    static Scalar parse(std::string_view text);

    bool is_rational() const noexcept { return std::holds_alternative<Rational>(v_); }
    bool is_quad() const noexcept { return !is_rational(); }
    const Rational& rational() const { return std::get<Rational>(v_); }
    const QuadExt& quad() const { return std::get<QuadExt>(v_); }
    /// Value as a QuadExt (promoting with the given radicand if rational).
    QuadExt as_quad(long d = 5) const;
    /// True when the value lies in Q, whichever alternative holds it.
    bool in_rationals() const;
    /// The rational value; PreconditionError unless in_rationals().
    Rational to_rational() const;

    bool is_zero() const;
    bool is_one() const;
    int sign() const;
    Scalar abs() const { return sign() < 0 ? -*this : *this; }
    Scalar inverse() const;
    Scalar pow(long exponent) const;
    bool try_sqrt(Scalar& root) const;
    double to_double() const;
    std::string to_string() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
    friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
    friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
    friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
    Scalar operator-() const;

    friend bool operator==(const Scalar& x, const Scalar& y);

private:
    std::variant<Rational, QuadExt> v_;
};

/// Exact ordering of real scalars.
int compare(const Scalar& x, const Scalar& y);
inline bool operator<(const Scalar& x, const Scalar& y) { return compare(x, y) < 0; }

/// Compares |x| and |y| exactly.
int compare_abs(const Scalar& x, const Scalar& y);

/// Real fields conjugate trivially; the call sites keep the conjugation explicit.
inline const Scalar& conj(const Scalar& x) { return x; }

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// The golden ratio as a Scalar in Q(sqrt 5).
Scalar phi();

}  // namespace pfspec::exact
