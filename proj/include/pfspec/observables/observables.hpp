#pragma once

#include <map>
#include <optional>
#include <vector>

#include "pfspec/exact/complex.hpp"
#include "pfspec/exact/poly.hpp"
#include "pfspec/symdyn/shift.hpp"

namespace pfspec::observables {

using exact::ComplexScalar;
using exact::Scalar;
using exact::SPoly;
using symdyn::ShiftSystem;
using symdyn::Word;

/**
 * Locally constant function depending on the first `depth` coordinates.
 * Words missing from the value map take the value zero.
 */
class CylFun {
public:
    CylFun() = default;
    CylFun(int depth, std::map<Word, Scalar> values);

    static CylFun constant(const Scalar& c);
    static CylFun indicator(const Word& w);

    int depth() const noexcept { return depth_; }
    const std::map<Word, Scalar>& values() const noexcept { return values_; }

    /// Value on the cylinder of `w`; w must have length >= depth.
    Scalar operator()(const Word& w) const;

    /// Same function expressed at depth r >= depth over admissible words.
    CylFun refine(const ShiftSystem& sys, int r) const;

    CylFun& operator*=(const Scalar& s);
    friend CylFun operator*(CylFun f, const Scalar& s) { return f *= s; }

    friend CylFun add(const ShiftSystem& sys, const CylFun& f, const CylFun& g);
    friend CylFun subtract(const ShiftSystem& sys, const CylFun& f, const CylFun& g);
    friend CylFun multiply(const ShiftSystem& sys, const CylFun& f, const CylFun& g);

private:
    void prune();

    int depth_ = 0;
    std::map<Word, Scalar> values_;
};

CylFun add(const ShiftSystem& sys, const CylFun& f, const CylFun& g);
CylFun subtract(const ShiftSystem& sys, const CylFun& f, const CylFun& g);
CylFun multiply(const ShiftSystem& sys, const CylFun& f, const CylFun& g);

/// Equality after refining both operands to a common depth.
bool equal(const ShiftSystem& sys, const CylFun& f, const CylFun& g);

/// omega -> poly(h(omega)).
struct PolyObservable {
    SPoly poly;

    friend bool operator==(const PolyObservable&, const PolyObservable&) = default;
};

/// 1_{C[0]} q0(h) + 1_{C[1]} q1(h) on the golden-mean subshift.
struct BlockObservable {
    SPoly q0;
    SPoly q1;

    int degree() const { return std::max(q0.degree(), q1.degree()); }
    friend bool operator==(const BlockObservable&, const BlockObservable&) = default;
};

PolyObservable pf_apply(const ShiftSystem& sys, const PolyObservable& f);
BlockObservable pf_apply(const ShiftSystem& sys, const BlockObservable& f);
CylFun pf_apply(const ShiftSystem& sys, const CylFun& f);

CylFun koopman_apply(const ShiftSystem& sys, const CylFun& f);

Scalar inner_product(const ShiftSystem& sys, const CylFun& f, const CylFun& g);
Scalar inner_product(const ShiftSystem& sys, const PolyObservable& f, const PolyObservable& g);
Scalar inner_product(const ShiftSystem& sys, const BlockObservable& f, const BlockObservable& g);

/// Integral of f against the invariant measure.
Scalar integral(const ShiftSystem& sys, const PolyObservable& f);
Scalar integral(const ShiftSystem& sys, const BlockObservable& f);

/**
 * One-letter orthogonal system psi_0 = 1, psi_1, ..., psi_{beta-1} obtained by
 * Gram-Schmidt on the symbol indicators under the Bernoulli weights, scaled so
 * that psi_s takes the value 1 on the first symbol where it is nonzero.
 * For the uniform 2-shift this is psi_1 = (-1)^omega, which is orthonormal.
 */
class WalshSystem {
public:
    explicit WalshSystem(const ShiftSystem& sys);

    int beta() const noexcept { return static_cast<int>(psi_.size()); }
    /// psi_s(symbol)
    const Scalar& psi(int s, int symbol) const { return psi_[s][symbol]; }
    /// <psi_s, psi_s>
    const Scalar& norm2(int s) const { return norm2_[s]; }

    /// beta-adic digits of n, least significant first.
    std::vector<int> digits(long n) const;
    /// W_n as a cylinder function of depth = number of digits of n.
    CylFun function(long n) const;
    /// <W_n, W_n> = product of the digit norms.
    Scalar norm2_of(long n) const;

private:
    std::vector<std::vector<Scalar>> psi_;
    std::vector<Scalar> norm2_;
};

/// V W_n = W_{n / beta} when beta divides n, and zero otherwise (nullopt).
std::optional<long> walsh_pf_rule(const ShiftSystem& sys, long n);

/// U W_n = W_{beta n}.
long walsh_koopman_rule(const ShiftSystem& sys, long n);

/// Finite Walsh expansion sum c_n W_n with complex coefficients.
using WalshSeries = std::map<long, ComplexScalar>;

WalshSeries walsh_pf_apply(const ShiftSystem& sys, const WalshSeries& f);
/// ||f||^2 = sum |c_n|^2 <W_n, W_n>.
Scalar walsh_norm2(const ShiftSystem& sys, const WalshSeries& f);

/// f_n sqrt(n) = sum_{k<n} z^k W_{2^k}.
WalshSeries approx_eigenfunction(const ShiftSystem& sys, const ComplexScalar& z, int n);

/// ||(z - V) f_n||^2 with f_n normalized by 1/sqrt(n); equals 1/n.
Scalar approx_eigenfunction_defect(const ShiftSystem& sys, const ComplexScalar& z, int n);

}  // namespace pfspec::observables
