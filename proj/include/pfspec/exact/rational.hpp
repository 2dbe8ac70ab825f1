#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pfspec::exact {

/**
 * Arbitrary-precision rational number.
 *
 * Always stored in lowest terms with a positive denominator; zero is 0/1.
 * Backed by GMP's mpq_class, which canonicalizes after every operation.
 */
class Rational {
public:
    Rational() = default;
    Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(int value) : q_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    Rational(const mpz_class& num, const mpz_class& den);
    explicit Rational(mpq_class q);

    /// Parses "num/den" or an integer "num". Throws ConfigError on malformed input.
    static Rational parse(std::string_view text);

    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }
    const mpq_class& raw() const noexcept { return q_; }

    bool is_zero() const noexcept { return sgn(q_) == 0; }
    bool is_one() const noexcept { return q_ == 1; }
    int sign() const noexcept { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational inverse() const;
    Rational abs() const { return Rational(mpq_class(::abs(q_))); }
    Rational pow(long exponent) const;

    /// Exact square root when this is the square of a rational.
    bool try_sqrt(Rational& root) const;

    double to_double() const { return q_.get_d(); }

    /// Serialized form "num/den" (denominator always written).
    std::string to_string() const;

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Binomial coefficient C(n, k) as a rational.
Rational binomial(unsigned n, unsigned k);

/// 2^{-k} (or 2^{k} for negative k).
Rational pow2_neg(long k);

}  // namespace pfspec::exact
