#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "pfspec/errors.hpp"
#include "pfspec/exact/rational.hpp"
#include "pfspec/exact/scalar.hpp"

namespace pfspec::exact {

/**
 * Dense univariate polynomial; coefficient i multiplies x^i.
 *
 * The highest stored coefficient is always nonzero, so the zero polynomial
 * has no coefficients and degree() == -1.
 */
template <class T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(T value) { return Poly(std::vector<T>{std::move(value)}); }
    static Poly monomial(int degree, T coeff = T(1)) {
        std::vector<T> c(static_cast<std::size_t>(degree) + 1, T(0));
        c.back() = std::move(coeff);
        return Poly(std::move(c));
    }
    /// x - root
    static Poly linear_factor(const T& root) { return Poly({-root, T(1)}); }

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<T>& coeffs() const noexcept { return c_; }
    /// Coefficient of x^i (zero past the degree).
    T coeff(int i) const { return (i >= 0 && i <= degree()) ? c_[static_cast<std::size_t>(i)] : T(0); }
    const T& leading() const { return c_.back(); }

    template <class U>
    U eval(const U& x) const {
        U acc(T(0));
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc *= x;
            acc += U(*it);
        }
        return acc;
    }
    T operator()(const T& x) const { return eval<T>(x); }

    /// p(offset + scale * x)
    Poly compose_affine(const T& offset, const T& scale) const {
        Poly result;
        Poly inner({offset, scale});
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            result = result * inner;
            result += constant(*it);
        }
        return result;
    }

    /// p(x + shift)
    Poly taylor_shift(const T& shift) const { return compose_affine(shift, T(1)); }

    Poly derivative() const {
        std::vector<T> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * T(static_cast<long>(i)));
        return Poly(std::move(d));
    }

    /// Antiderivative with zero constant term.
    Poly antiderivative() const {
        std::vector<T> a(c_.size() + 1, T(0));
        for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / T(static_cast<long>(i + 1));
        return Poly(std::move(a));
    }

    /// Euclidean division; returns (quotient, remainder).
    std::pair<Poly, Poly> divmod(const Poly& divisor) const {
        if (divisor.is_zero()) throw DivisionByZero();
        std::vector<T> rem = c_;
        int dd = divisor.degree();
        int nd = degree();
        if (nd < dd) return {Poly(), *this};
        std::vector<T> quot(static_cast<std::size_t>(nd - dd + 1), T(0));
        T lead_inv = T(1) / divisor.leading();
        for (int k = nd - dd; k >= 0; --k) {
            T q = rem[static_cast<std::size_t>(k + dd)] * lead_inv;
            if (q.is_zero()) continue;
            for (int j = 0; j <= dd; ++j)
                rem[static_cast<std::size_t>(k + j)] -= q * divisor.c_[static_cast<std::size_t>(j)];
            quot[static_cast<std::size_t>(k)] = std::move(q);
        }
        rem.resize(static_cast<std::size_t>(std::max(dd, 0)));
        return {Poly(std::move(quot)), Poly(std::move(rem))};
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const T& s) {
        for (auto& x : c_) x *= s;
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const T& s) { return a *= s; }
    friend Poly operator*(const T& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    Poly pow(int e) const {
        Poly r = constant(T(1));
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            const T& c = c_[static_cast<std::size_t>(i)];
            if (c.is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + c.to_string() + ")";
            if (i > 0) out += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<T> c_;
};

using SPoly = Poly<Scalar>;
using QPoly = Poly<Rational>;

}  // namespace pfspec::exact
