#include "pfspec/spectra/spectra.hpp"

#include <algorithm>
#include <numeric>

#include "pfspec/errors.hpp"

namespace pfspec::spectra {

using exact::compare;
using exact::compare_abs;

Basis basis_for(const ShiftSystem& sys) {
    if (sys.is_bernoulli()) return Basis::Monomial;
    if (sys.is_golden_mean()) return Basis::Block;
    throw PreconditionError("no test space for system " + sys.name());
}

std::size_t basis_size(Basis b, int degree) {
    return static_cast<std::size_t>(degree + 1) * (b == Basis::Block ? 2 : 1);
}

std::string basis_label(Basis b, std::size_t index) {
    if (b == Basis::Monomial) return "h^" + std::to_string(index);
    return "1_C[" + std::to_string(index % 2) + "]h^" + std::to_string(index / 2);
}

Vec to_basis(Basis b, int degree, const Observable& f) {
    Vec v(basis_size(b, degree), Scalar(0));
    auto put = [&](const SPoly& p, std::size_t stride, std::size_t offset) {
        if (p.degree() > degree)
            throw DegreeOverflow("observable degree " + std::to_string(p.degree()) + " exceeds " +
                                 std::to_string(degree));
        for (int k = 0; k <= p.degree(); ++k) v[static_cast<std::size_t>(k) * stride + offset] = p.coeff(k);
    };
    if (b == Basis::Monomial) {
        if (!std::holds_alternative<PolyObservable>(f))
            throw PreconditionError("block observable given for a monomial basis");
        put(std::get<PolyObservable>(f).poly, 1, 0);
    } else if (const auto* blk = std::get_if<BlockObservable>(&f)) {
        put(blk->q0, 2, 0);
        put(blk->q1, 2, 1);
    } else {
        // A polynomial in h on the golden-mean system is the block pair (p, p).
        const SPoly& p = std::get<PolyObservable>(f).poly;
        put(p, 2, 0);
        put(p, 2, 1);
    }
    return v;
}

Observable from_basis(Basis b, const Vec& v) {
    if (b == Basis::Monomial) return PolyObservable{SPoly(v)};
    Vec q0, q1;
    for (std::size_t i = 0; i < v.size(); ++i) (i % 2 ? q1 : q0).push_back(v[i]);
    return BlockObservable{SPoly(q0), SPoly(q1)};
}

RepMatrix rep_matrix(const ShiftSystem& sys, int n) {
    if (n < 0) throw PreconditionError("degree must be nonnegative");
    RepMatrix r;
    r.basis = basis_for(sys);
    r.degree = n;
    const std::size_t size = basis_size(r.basis, n);
    r.matrix = SMatrix(size, size);
    for (std::size_t col = 0; col < size; ++col) {
        Vec e(size, Scalar(0));
        e[col] = Scalar(1);
        Observable f = from_basis(r.basis, e);
        Observable image = r.basis == Basis::Monomial
                               ? Observable(observables::pf_apply(sys, std::get<PolyObservable>(f)))
                               : Observable(observables::pf_apply(sys, std::get<BlockObservable>(f)));
        Vec v = to_basis(r.basis, n, image);
        for (std::size_t row = 0; row < size; ++row) r.matrix(row, col) = v[row];
    }
    // Triangularity: the image of a degree-k element has degree at most k.
    const std::size_t block = r.basis == Basis::Block ? 2 : 1;
    for (std::size_t col = 0; col < size; ++col)
        for (std::size_t row = (col / block + 1) * block; row < size; ++row)
            if (!r.matrix(row, col).is_zero()) throw PreconditionError("representation matrix is not triangular");
    return r;
}

std::string ModeLabel::to_string() const {
    std::string s = std::to_string(n);
    if (branch > 0) s += ",+";
    if (branch < 0) s += ",-";
    return s;
}

Scalar EigenSystem::pair(std::size_t i, const Vec& f) const {
    Scalar acc(0);
    for (std::size_t j = 0; j < f.size(); ++j)
        if (!f[j].is_zero()) acc += Minv(i, j) * f[j];
    return acc;
}

std::optional<std::size_t> EigenSystem::find(const ModeLabel& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i].n == label.n && labels[i].branch == label.branch) return i;
    return std::nullopt;
}

std::optional<std::size_t> EigenSystem::find(const Scalar& eigenvalue) const {
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        if (eigenvalues[i] == eigenvalue) return i;
    return std::nullopt;
}

namespace {

struct Candidate {
    Scalar value;
    ModeLabel label;
    Vec vector;
};

bool precedes(const Candidate& a, const Candidate& b) {
    int c = compare_abs(a.value, b.value);
    if (c != 0) return c > 0;
    return a.value.sign() > b.value.sign();
}

// Eigenvector for lambda from the leading `lead` x `lead` block of A,
// normalized so that coordinate `pivot` equals 1.
Vec leading_eigenvector(const SMatrix& A, std::size_t lead, const Scalar& lambda, std::size_t pivot) {
    SMatrix sub = A.block(lead, lead).shifted(lambda);
    auto ns = sub.nullspace();
    if (ns.size() != 1) throw DegenerateSpectrum("eigenspace of " + lambda.to_string() + " is not one-dimensional");
    Vec v = ns[0];
    if (v[pivot].is_zero()) throw PreconditionError("eigenvector has no leading coefficient");
    Scalar inv = v[pivot].inverse();
    for (auto& x : v) x *= inv;
    v.resize(A.rows(), Scalar(0));
    return v;
}

}  // namespace

EigenSystem eigen_system(const ShiftSystem& sys, int n) {
    RepMatrix rep = rep_matrix(sys, n);
    const SMatrix& A = rep.matrix;
    std::vector<Candidate> cands;

    if (rep.basis == Basis::Monomial) {
        for (int k = 0; k <= n; ++k) {
            std::size_t kk = static_cast<std::size_t>(k);
            Scalar lambda = A(kk, kk);
            // Back-substitution in the upper triangular matrix, v_k = 1.
            Vec v(A.rows(), Scalar(0));
            v[kk] = Scalar(1);
            for (std::size_t j = kk; j-- > 0;) {
                Scalar acc(0);
                for (std::size_t l = j + 1; l <= kk; ++l)
                    if (!v[l].is_zero()) acc += A(j, l) * v[l];
                Scalar d = A(j, j) - lambda;
                if (d.is_zero()) throw DegenerateSpectrum("repeated diagonal entry " + lambda.to_string());
                v[j] = -acc / d;
            }
            cands.push_back({lambda, {k, 0}, std::move(v)});
        }
    } else {
        for (int k = 0; k <= n; ++k) {
            std::size_t r = 2 * static_cast<std::size_t>(k);
            Scalar a = A(r, r), b = A(r, r + 1), c = A(r + 1, r), d = A(r + 1, r + 1);
            Scalar tr = a + d, det = a * d - b * c;
            Scalar disc = tr * tr - Scalar(4) * det, root;
            if (disc.is_zero()) throw DegenerateSpectrum("repeated eigenvalue in diagonal block " + std::to_string(k));
            if (!disc.try_sqrt(root))
                throw PreconditionError("eigenvalues of diagonal block " + std::to_string(k) +
                                        " leave the coefficient field");
            if (root.sign() < 0) root = -root;
            Scalar plus = (tr + root) / Scalar(2), minus = (tr - root) / Scalar(2);
            cands.push_back({plus, {k, +1}, leading_eigenvector(A, r + 2, plus, r)});
            cands.push_back({minus, {k, -1}, leading_eigenvector(A, r + 2, minus, r)});
        }
    }

    for (std::size_t i = 0; i < cands.size(); ++i)
        for (std::size_t j = i + 1; j < cands.size(); ++j)
            if (cands[i].value == cands[j].value)
                throw DegenerateSpectrum("repeated eigenvalue " + cands[i].value.to_string());
    std::stable_sort(cands.begin(), cands.end(), precedes);

    EigenSystem es{sys, rep.basis, n, {}, {}, A, SMatrix(A.rows(), A.rows()), SMatrix()};
    for (std::size_t i = 0; i < cands.size(); ++i) {
        es.eigenvalues.push_back(cands[i].value);
        es.labels.push_back(cands[i].label);
        for (std::size_t r = 0; r < A.rows(); ++r) es.M(r, i) = cands[i].vector[r];
    }
    es.Minv = es.M.inverse();
    return es;
}

std::vector<Scalar> bernoulli_numbers(int n) {
    std::vector<Scalar> B{Scalar(1)};
    for (int m = 1; m <= n; ++m) {
        Scalar acc(0);
        for (int k = 0; k < m; ++k) acc += Scalar(exact::binomial(m + 1, k)) * B[static_cast<std::size_t>(k)];
        B.push_back(-acc / Scalar(m + 1));
    }
    return B;
}

SPoly bernoulli_poly(int n) {
    if (n < 0) throw PreconditionError("negative Bernoulli index");
    auto B = bernoulli_numbers(n);
    Vec c(static_cast<std::size_t>(n) + 1, Scalar(0));
    for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(n - k)] = Scalar(exact::binomial(n, k)) * B[static_cast<std::size_t>(k)];
    return SPoly(c);
}

Vec SpectralDecomposition::reconstruct(const EigenSystem& es) const {
    Vec v(es.M.rows(), Scalar(0));
    for (const Mode& m : modes)
        for (std::size_t r = 0; r < v.size(); ++r)
            if (!es.M(r, m.index).is_zero()) v[r] += m.coefficient * es.M(r, m.index);
    return v;
}

SpectralDecomposition decompose(const EigenSystem& es, const Vec& f) {
    if (f.size() > es.M.rows()) throw DegreeOverflow("observable does not fit the eigen system");
    Vec g = f;
    g.resize(es.M.rows(), Scalar(0));
    SpectralDecomposition d;
    for (std::size_t i = 0; i < es.size(); ++i) {
        Scalar c = es.pair(i, g);
        if (!c.is_zero()) d.modes.push_back({i, es.eigenvalues[i], std::move(c)});
    }
    return d;
}

IterateReport iterate_pf(const EigenSystem& es, const Vec& f, int k) {
    if (k < 0) throw PreconditionError("iteration count must be nonnegative");
    IterateReport rep;
    rep.k = k;
    SpectralDecomposition d = decompose(es, f);
    rep.limit = Scalar(0);
    for (const Mode& m : d.modes) {
        if (m.index == 0) {
            rep.limit = m.coefficient;
        } else if (!rep.rate || compare_abs(m.eigenvalue, *rep.rate) > 0) {
            rep.rate = m.eigenvalue.abs();
        }
        rep.image.modes.push_back({m.index, m.eigenvalue, m.coefficient * m.eigenvalue.pow(k)});
    }
    rep.value = rep.image.reconstruct(es);
    rep.residual = rep.value;
    for (std::size_t r = 0; r < rep.residual.size(); ++r) rep.residual[r] -= rep.limit * es.M(r, 0);
    return rep;
}

Vec VectorResolvent::eval(const Scalar& lambda) const {
    Vec out(dim, Scalar(0));
    for (const Pole& p : poles) {
        Scalar diff = lambda - p.location;
        if (diff.is_zero()) throw PoleHit(p.location.to_string(), p.order);
        Scalar w = diff.pow(p.order).inverse();
        for (std::size_t i = 0; i < dim; ++i) out[i] += w * p.residue[i];
    }
    return out;
}

std::vector<ComplexScalar> VectorResolvent::eval(const ComplexScalar& lambda) const {
    std::vector<ComplexScalar> out(dim, ComplexScalar(Scalar(0)));
    for (const Pole& p : poles) {
        ComplexScalar diff = lambda - ComplexScalar(p.location);
        if (diff.is_zero()) throw PoleHit(p.location.to_string(), p.order);
        ComplexScalar w = diff.pow(p.order).inverse();
        for (std::size_t i = 0; i < dim; ++i) out[i] += w * ComplexScalar(p.residue[i]);
    }
    return out;
}

std::vector<std::complex<double>> VectorResolvent::eval_double(std::complex<double> lambda) const {
    std::vector<std::complex<double>> out(dim, 0.0);
    for (const Pole& p : poles) {
        std::complex<double> w = 1.0 / std::pow(lambda - p.location.to_double(), p.order);
        for (std::size_t i = 0; i < dim; ++i) out[i] += w * p.residue[i].to_double();
    }
    return out;
}

const VectorResolvent::Pole* VectorResolvent::pole_at(const Scalar& lambda) const {
    for (const Pole& p : poles)
        if (p.location == lambda) return &p;
    return nullptr;
}

exact::RationalFunction VectorResolvent::component(std::size_t i) const {
    exact::RationalFunction r;
    for (const Pole& p : poles)
        if (!p.residue[i].is_zero()) r += exact::RationalFunction::pole_term(p.residue[i], p.location, p.order);
    return r;
}

VectorResolvent generalized_resolvent(const EigenSystem& es, const Vec& f) {
    VectorResolvent r;
    r.dim = es.M.rows();
    for (const Mode& m : decompose(es, f).modes) {
        Vec residue(r.dim, Scalar(0));
        for (std::size_t row = 0; row < r.dim; ++row) residue[row] = m.coefficient * es.M(row, m.index);
        r.poles.push_back({m.eigenvalue, 1, std::move(residue)});
    }
    std::stable_sort(r.poles.begin(), r.poles.end(),
                     [](const auto& a, const auto& b) { return compare(a.location, b.location) > 0; });
    return r;
}

RieszResult riesz_projection(const EigenSystem& es, const Vec& f, const Scalar& lambda) {
    RieszResult out;
    out.in_spectrum = es.find(lambda).has_value();
    VectorResolvent r = generalized_resolvent(es, f);
    if (const auto* p = r.pole_at(lambda))
        out.projection = p->residue;
    else
        out.projection = Vec(r.dim, Scalar(0));
    return out;
}

Vec apply_rep(const EigenSystem& es, const Vec& f) {
    Vec g = f;
    g.resize(es.A.cols(), Scalar(0));
    return es.A.apply(g);
}

}  // namespace pfspec::spectra
