#pragma once

#include <map>
#include <utility>
#include <vector>

#include "pfspec/exact/matrix.hpp"
#include "pfspec/exact/ratfun.hpp"
#include "pfspec/observables/observables.hpp"
#include "pfspec/spectra/spectra.hpp"

namespace pfspec::twosided {

using exact::RationalFunction;
using exact::Scalar;
using exact::SMatrix;
using exact::SPoly;
using observables::CylFun;

/// (i, j) labels Phi_i (x) Psi'_j; the total degree i + j carries eigenvalue 2^-(i+j) under Q0.
struct TensorIndex {
    int i = 0;
    int j = 0;

    int degree() const { return i + j; }
    friend auto operator<=>(const TensorIndex&, const TensorIndex&) = default;
};

/// Finitely supported coefficients c_{i,j} with 0 <= i <= M, 0 <= j <= N.
class TensorCoeffs {
public:
    TensorCoeffs(int M, int N) : M_(M), N_(N) {}
    TensorCoeffs(int M, int N, std::map<TensorIndex, Scalar> c);

    static TensorCoeffs delta(int i, int j, int M, int N);

    int M() const { return M_; }
    int N() const { return N_; }
    const std::map<TensorIndex, Scalar>& support() const { return c_; }
    Scalar at(int i, int j) const;
    void set(int i, int j, const Scalar& v);
    int max_i() const;
    int max_j() const;

    friend bool operator==(const TensorCoeffs&, const TensorCoeffs&) = default;

private:
    int M_ = 0;
    int N_ = 0;
    std::map<TensorIndex, Scalar> c_;
};

/**
 * b(a, m) = <Phi'_a | V(-1)^w Phi_m>: the Phi_a coefficient of
 * (1/2)(Phi_m(h/2) - Phi_m((1+h)/2)). Zero unless a < m. The Psi side uses the
 * same table.
 */
class BracketTable {
public:
    explicit BracketTable(int max_degree);

    int max_degree() const { return D_; }
    const Scalar& operator()(int a, int m) const;

private:
    int D_;
    std::vector<std::vector<Scalar>> b_;  // b_[m][a]
};

const BracketTable& brackets(int max_degree);

/// <Q1^x Phi_m (x) Psi'_n | Phi'_{m2} (x) Psi_{n2}>
Scalar q1_matrix_element(int m, int n, int m2, int n2);

struct SparseEntry {
    TensorIndex row;
    TensorIndex col;
    Scalar value;
};

/// Truncation of V_L(eps) = Q0 + eps Q1 to span{Phi_i (x) Psi'_j : i <= M, j <= N}.
struct TwoSidedOperator {
    Scalar epsilon;
    int M = 0;
    int N = 0;
    SMatrix matrix;  // row = image index, column = source index

    std::size_t dim() const { return static_cast<std::size_t>((M + 1) * (N + 1)); }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * (N + 1) + j); }
    TensorIndex label(std::size_t idx) const {
        return {static_cast<int>(idx) / (N + 1), static_cast<int>(idx) % (N + 1)};
    }
    std::vector<SparseEntry> entries() const;
    /// Diagonal entries; equal to the spectrum because the matrix is triangular.
    std::vector<Scalar> eigenvalues() const;
};

TwoSidedOperator build_operator(const Scalar& epsilon, int M, int N);

struct JordanReport {
    int k = 0;
    Scalar eigenvalue;
    int algebraic = 0;
    int geometric = 0;
    std::vector<int> blocks;  // descending
    int M = 0;
    int N = 0;
    bool stable = false;
    std::vector<int> ranks;  // rank of (A - lambda)^t, t = 0, 1, ...
};

/// Multiplicities from exact ranks; the stability flag compares against N + 2.
JordanReport jordan_analysis(const TwoSidedOperator& op, int k);

/// Kernel of A - 2^-k I, as basis vectors over the tensor index.
std::vector<std::vector<Scalar>> eigenvectors(const TwoSidedOperator& op, int k);

/// (lambda - Q0)^-1 f over the flattened index i * (N + 1) + j.
spectra::VectorResolvent resolvent_q0(const TensorCoeffs& f);

/// A_k(lambda) by direct enumeration of the index chains.
RationalFunction ak_direct(int k, const TensorCoeffs& f, const TensorCoeffs& g);
/// A_k(lambda) by alternating the diagonal resolvent with the Q1 matrix.
RationalFunction ak_matrix(int k, const TensorCoeffs& f, const TensorCoeffs& g, int M, int N);
/// Both routes, checked against each other.
RationalFunction perturbation_coefficient(int k, const TensorCoeffs& f, const TensorCoeffs& g);

/// True when A has no pole at 1, 1/2, ..., 2^-(k-1).
bool regular_below(int k, const RationalFunction& a);

struct PoleOrderResult {
    int k = 0;
    int order = 0;
    TensorCoeffs f{0, 0};
    TensorCoeffs g{0, 0};
    RationalFunction ak;
};

PoleOrderResult pole_order_check(int k);

/// x -> sum_w 1_{C[w]}(x) p_w(h(x)) over words w of a fixed depth (full 2-shift).
struct PiecewisePoly {
    int depth = 0;
    std::map<std::vector<int>, SPoly> pieces;

    static PiecewisePoly poly(const SPoly& p) { return {0, {{{}, p}}}; }
    static PiecewisePoly from_cylfun(const CylFun& c);
    PiecewisePoly refine(int r) const;
};

/// Integral over [0, 1] of the product, with h(x) identified with x.
Scalar integrate_product(const PiecewisePoly& f, const PiecewisePoly& g);

/// omega -> plus(omega_1, omega_2, ...) * minus(omega_0, omega_-1, ...).
struct SeparableFun {
    PiecewisePoly plus;
    PiecewisePoly minus;
};

/// Q1 applied pointwise: (1/2)(-1)^w0 [f(.. w_-1 . 0 w_1 ..) - f(.. w_-1 . 1 w_1 ..)].
SeparableFun apply_q1_pointwise(const SeparableFun& f);

/// Step function at dyadic depth r with integral against Phi_j equal to delta_{a,j} for j <= D.
CylFun dual_representative(int a, int D);

/// L^2 pairing of two separable functions under the uniform product measure.
Scalar pair_l2(const SeparableFun& f, const SeparableFun& g);

/// The Q1 matrix element computed from the pointwise formula and cylinder functions.
Scalar q1_pointwise_element(int m, int n, int m2, int n2);

}  // namespace pfspec::twosided
