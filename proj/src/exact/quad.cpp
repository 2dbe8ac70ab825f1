#include "pfspec/exact/quad.hpp"

#include <cmath>

#include "pfspec/errors.hpp"

namespace pfspec::exact {

QuadExt::QuadExt(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (d_ < 2) throw PreconditionError("quadratic radicand must be > 1");
}

QuadExt QuadExt::golden() { return QuadExt(Rational(1, 2), Rational(1, 2), 5); }

void QuadExt::check_same_field(const QuadExt& o) const {
    if (d_ != o.d_ && !b_.is_zero() && !o.b_.is_zero())
        throw PreconditionError("mixing Q(sqrt " + std::to_string(d_) + ") and Q(sqrt " +
                                std::to_string(o.d_) + ")");
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
    check_same_field(o);
    if (b_.is_zero()) d_ = o.d_;
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
    check_same_field(o);
    if (b_.is_zero()) d_ = o.d_;
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
    check_same_field(o);
    if (b_.is_zero()) d_ = o.d_;
    Rational na = a_ * o.a_ + Rational(d_) * b_ * o.b_;
    Rational nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
}

QuadExt QuadExt::inverse() const {
    if (is_zero()) throw DivisionByZero();
    Rational n = norm();
    return QuadExt(a_ / n, -b_ / n, d_);
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
    check_same_field(o);
    return *this *= o.inverse();
}

QuadExt QuadExt::pow(long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    QuadExt result(Rational(1), Rational(0), d_);
    QuadExt base = *this;
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        base *= base;
        exponent >>= 1;
    }
    return result;
}

int QuadExt::sign() const {
    int sa = a_.sign();
    int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: the larger of a^2 and d b^2 wins.
    Rational diff = a_ * a_ - Rational(d_) * b_ * b_;
    return diff.sign() > 0 ? sa : sb;
}

bool QuadExt::try_sqrt(QuadExt& root) const {
    if (sign() < 0) return false;
    if (is_zero()) {
        root = QuadExt(Rational(0), Rational(0), d_);
        return true;
    }
    if (b_.is_zero()) {
        Rational r;
        if (a_.try_sqrt(r)) {
            root = QuadExt(r, Rational(0), d_);
            return true;
        }
        // a = d * v^2 gives root v sqrt(d).
        if ((a_ / Rational(d_)).try_sqrt(r)) {
            root = QuadExt(Rational(0), r, d_);
            return true;
        }
        return false;
    }
    // (u + v sqrt d)^2 = a + b sqrt d  <=>  u^2 + d v^2 = a, 2uv = b.
    Rational n;
    if (!norm().try_sqrt(n)) return false;
    for (const Rational& s : {(a_ + n) / Rational(2), (a_ - n) / Rational(2)}) {
        Rational u;
        if (s.sign() <= 0 || !s.try_sqrt(u)) continue;
        Rational v = b_ / (Rational(2) * u);
        QuadExt cand(u, v, d_);
        if (cand * cand == *this) {
            root = cand.sign() < 0 ? -cand : cand;
            return true;
        }
    }
    return false;
}

double QuadExt::to_double() const {
    return a_.to_double() + b_.to_double() * std::sqrt(static_cast<double>(d_));
}

std::string QuadExt::to_string() const {
    std::string out = a_.to_string();
    if (b_.sign() < 0)
        out += "-" + (-b_).to_string();
    else
        out += "+" + b_.to_string();
    return out + "√" + std::to_string(d_);
}

}  // namespace pfspec::exact
