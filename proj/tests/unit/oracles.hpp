#pragma once

// Test-only reference computations. None of these call into the engine's
// spectral code paths; they exist to produce expected values independently.

#include <random>
#include <vector>

#include "pfspec/exact/poly.hpp"
#include "pfspec/exact/rational.hpp"
#include "pfspec/exact/scalar.hpp"

namespace pfspec::oracle {

using exact::QPoly;
using exact::Rational;
using exact::Scalar;

/// Factorial as a rational.
inline Rational factorial(unsigned n) {
    Rational r(1);
    for (unsigned k = 2; k <= n; ++k) r *= Rational(static_cast<long>(k));
    return r;
}

/**
 * Bernoulli polynomials from the generating function t e^{xt} / (e^t - 1):
 * invert the power series (e^t - 1)/t = sum t^k/(k+1)! to get B_k/k!, then
 * multiply by e^{xt} = sum x^j t^j / j! and read off t^n.
 */
inline QPoly bernoulli_from_generating_function(unsigned n) {
    std::vector<Rational> a(n + 1), inv(n + 1);
    for (unsigned k = 0; k <= n; ++k) a[k] = factorial(k + 1).inverse();
    inv[0] = a[0].inverse();
    for (unsigned k = 1; k <= n; ++k) {
        Rational acc(0);
        for (unsigned j = 1; j <= k; ++j) acc += a[j] * inv[k - j];
        inv[k] = -acc / a[0];
    }
    // t^n coefficient of (sum inv[k] t^k)(sum x^j t^j / j!) = sum_k inv[k] x^{n-k} / (n-k)!
    std::vector<Rational> coeffs(n + 1, Rational(0));
    for (unsigned k = 0; k <= n; ++k) coeffs[n - k] = inv[k] / factorial(n - k);
    QPoly series_coeff(coeffs);
    return series_coeff * factorial(n);
}

/// Random small rational with numerator in [-range, range] and denominator in [1, range].
inline Rational random_rational(std::mt19937_64& rng, long range = 20) {
    std::uniform_int_distribution<long> num(-range, range);
    std::uniform_int_distribution<long> den(1, range);
    return Rational(num(rng), den(rng));
}

inline Scalar random_quad(std::mt19937_64& rng, long range = 20) {
    return Scalar(exact::QuadExt(random_rational(rng, range), random_rational(rng, range), 5));
}

}  // namespace pfspec::oracle
