#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pfspec/exact/complex.hpp"
#include "pfspec/exact/matrix.hpp"
#include "pfspec/exact/ratfun.hpp"
#include "pfspec/observables/observables.hpp"
#include "pfspec/symdyn/shift.hpp"

namespace pfspec::spectra {

using exact::ComplexScalar;
using exact::Scalar;
using exact::SMatrix;
using exact::SPoly;
using observables::BlockObservable;
using observables::PolyObservable;
using symdyn::ShiftSystem;

/// Monomial: h^0..h^n. Block: 1_{C[0]}h^0, 1_{C[1]}h^0, 1_{C[0]}h^1, ...
enum class Basis { Monomial, Block };

using Vec = std::vector<Scalar>;
using Observable = std::variant<PolyObservable, BlockObservable>;

struct RepMatrix {
    Basis basis = Basis::Monomial;
    int degree = 0;
    SMatrix matrix;
};

Basis basis_for(const ShiftSystem& sys);
std::size_t basis_size(Basis b, int degree);
std::string basis_label(Basis b, std::size_t index);

/// Coefficient vector of an observable in the degree-n basis; DegreeOverflow if it does not fit.
Vec to_basis(Basis b, int degree, const Observable& f);
Observable from_basis(Basis b, const Vec& v);

RepMatrix rep_matrix(const ShiftSystem& sys, int n);

/// Eigenvalue label: (n) for Bernoulli systems, (n, +/-) for the golden-mean system.
struct ModeLabel {
    int n = 0;
    int branch = 0;  // 0 for Bernoulli, +1 or -1 for golden-mean
    std::string to_string() const;
};

struct EigenSystem {
    ShiftSystem system;
    Basis basis = Basis::Monomial;
    int degree = 0;
    std::vector<Scalar> eigenvalues;
    std::vector<ModeLabel> labels;
    SMatrix A;     // representation matrix
    SMatrix M;     // columns: eigenvectors
    SMatrix Minv;  // rows: dual functionals

    std::size_t size() const { return eigenvalues.size(); }
    Vec eigenvector(std::size_t i) const { return M.column(i); }
    Vec dual(std::size_t i) const { return Minv.row(i); }
    Observable eigenfunction(std::size_t i) const { return from_basis(basis, eigenvector(i)); }
    /// <Phi'_i | f> for a basis coefficient vector f.
    Scalar pair(std::size_t i, const Vec& f) const;
    /// Index of the mode with this label, or nullopt.
    std::optional<std::size_t> find(const ModeLabel& label) const;
    std::optional<std::size_t> find(const Scalar& eigenvalue) const;
};

/// Eigenvalues ordered by descending modulus, positive first on ties.
EigenSystem eigen_system(const ShiftSystem& sys, int n);

/// B_n via sum_{k<=n} C(n+1,k) B_k = 0.
SPoly bernoulli_poly(int n);
std::vector<Scalar> bernoulli_numbers(int n);

struct Mode {
    std::size_t index = 0;
    Scalar eigenvalue;
    Scalar coefficient;
};

struct SpectralDecomposition {
    std::vector<Mode> modes;
    Vec reconstruct(const EigenSystem& es) const;
};

SpectralDecomposition decompose(const EigenSystem& es, const Vec& f);
inline SpectralDecomposition decompose(const EigenSystem& es, const Observable& f) {
    return decompose(es, to_basis(es.basis, es.degree, f));
}

struct IterateReport {
    int k = 0;
    SpectralDecomposition image;  // modes with coefficients c_i lambda_i^k
    Vec value;                    // V^k f in the basis
    Scalar limit;                 // c_0, the coefficient of the invariant mode
    std::optional<Scalar> rate;   // max |lambda_i| over i > 0 with c_i != 0
    Vec residual;                 // V^k f - c_0 Phi_0
};

IterateReport iterate_pf(const EigenSystem& es, const Vec& f, int k);

/// Vector-valued function with simple poles: sum residue_p / (lambda - location_p).
struct VectorResolvent {
    struct Pole {
        Scalar location;
        int order = 1;
        Vec residue;
    };
    std::size_t dim = 0;
    std::vector<Pole> poles;  // descending locations

    /// Throws PoleHit with the pole's order when lambda is a pole.
    Vec eval(const Scalar& lambda) const;
    std::vector<ComplexScalar> eval(const ComplexScalar& lambda) const;
    std::vector<std::complex<double>> eval_double(std::complex<double> lambda) const;
    const Pole* pole_at(const Scalar& lambda) const;
    exact::RationalFunction component(std::size_t i) const;
};

VectorResolvent generalized_resolvent(const EigenSystem& es, const Vec& f);

struct RieszResult {
    Vec projection;
    bool in_spectrum = true;
};

RieszResult riesz_projection(const EigenSystem& es, const Vec& f, const Scalar& lambda);

/// Apply the represented operator to a basis vector (of the eigen system's size).
Vec apply_rep(const EigenSystem& es, const Vec& f);

}  // namespace pfspec::spectra
