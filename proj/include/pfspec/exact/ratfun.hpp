#pragma once

#include <complex>
#include <string>
#include <vector>

#include "pfspec/exact/complex.hpp"
#include "pfspec/exact/poly.hpp"
#include "pfspec/exact/scalar.hpp"

namespace pfspec::exact {

/// Pole location with its multiplicity in the denominator.
struct Pole {
    Scalar location;
    int order = 1;

    friend bool operator==(const Pole&, const Pole&) = default;
};

/**
 * Partial-fraction form: polynomial part plus, per pole p,
 * sum_j coeffs[j] / (x - p)^(j + 1).
 */
struct PartialFractions {
    struct Term {
        Scalar location;
        std::vector<Scalar> coeffs;
    };

    SPoly polynomial_part;
    std::vector<Term> terms;

    Scalar eval(const Scalar& x) const;
};

/**
 * Rational function in one variable over the scalar field, stored as a
 * numerator polynomial over a factored monic denominator prod (x - p)^order.
 *
 * Always canonical: no pole location repeats, orders are positive, and the
 * numerator does not vanish at any pole. Two canonical forms are equal iff
 * the functions are equal.
 */
class RationalFunction {
public:
    RationalFunction() = default;
    explicit RationalFunction(SPoly numerator, std::vector<Pole> poles = {});

    /// coeff / (x - location)^order
    static RationalFunction pole_term(const Scalar& coeff, const Scalar& location, int order = 1);
    static RationalFunction constant(const Scalar& c) { return RationalFunction(SPoly::constant(c)); }
    static RationalFunction from_partial_fractions(const PartialFractions& pf);

    const SPoly& numerator() const noexcept { return num_; }
    const std::vector<Pole>& poles() const noexcept { return poles_; }
    SPoly denominator() const;
    bool is_zero() const noexcept { return num_.is_zero(); }

    /// Multiplicity of `location` as a pole; 0 when the function is regular there.
    int pole_order(const Scalar& location) const;

    /// Exact value; throws PoleHit at a pole.
    Scalar eval(const Scalar& x) const;
    ComplexScalar eval(const ComplexScalar& x) const;
    /// Floating-point value for plotting; no pole detection.
    std::complex<double> eval_double(std::complex<double> x) const;

    PartialFractions partial_fractions() const;

    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    RationalFunction& operator*=(const Scalar& s);

    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator*(RationalFunction a, const Scalar& s) { return a *= s; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.poles_ == b.poles_;
    }

    std::string to_string() const;

private:
    void canonicalize();
    /// Rewrites numerator so the denominator has the given (larger) pole orders.
    SPoly lifted_numerator(const std::vector<Pole>& target) const;

    SPoly num_;
    std::vector<Pole> poles_;  // sorted by descending location
};

}  // namespace pfspec::exact
