#include "pfspec/twosided/twosided.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>

#include "pfspec/errors.hpp"
#include "pfspec/symdyn/shift.hpp"

namespace pfspec::twosided {

using exact::conj;
using exact::Rational;

namespace {

Scalar dyadic(int k) { return Scalar(exact::pow2_neg(k)); }

std::size_t rank_of(const SMatrix& a) {
    bool rational = true;
    for (std::size_t i = 0; i < a.rows() && rational; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).in_rationals()) {
                rational = false;
                break;
            }
    if (!rational) return a.rank();
    exact::QMatrix q(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) q(i, j) = a(i, j).to_rational();
    return exact::rank_fraction_free(q);
}

}  // namespace

TensorCoeffs::TensorCoeffs(int M, int N, std::map<TensorIndex, Scalar> c) : M_(M), N_(N) {
    for (auto& [idx, v] : c) set(idx.i, idx.j, v);
}

TensorCoeffs TensorCoeffs::delta(int i, int j, int M, int N) {
    TensorCoeffs t(M, N);
    t.set(i, j, Scalar(1));
    return t;
}

Scalar TensorCoeffs::at(int i, int j) const {
    auto it = c_.find({i, j});
    return it == c_.end() ? Scalar(0) : it->second;
}

void TensorCoeffs::set(int i, int j, const Scalar& v) {
    if (i < 0 || j < 0 || i > M_ || j > N_)
        throw TruncationTooSmall("coefficient (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") outside truncation M=" + std::to_string(M_) + ", N=" + std::to_string(N_));
    if (v.is_zero())
        c_.erase({i, j});
    else
        c_[{i, j}] = v;
}

int TensorCoeffs::max_i() const {
    int r = -1;
    for (const auto& [idx, v] : c_) r = std::max(r, idx.i);
    return r;
}

int TensorCoeffs::max_j() const {
    int r = -1;
    for (const auto& [idx, v] : c_) r = std::max(r, idx.j);
    return r;
}

BracketTable::BracketTable(int max_degree) : D_(max_degree) {
    auto es = spectra::eigen_system(symdyn::preset("full2-uniform"), D_);
    b_.resize(static_cast<std::size_t>(D_) + 1);
    for (int m = 0; m <= D_; ++m) {
        SPoly phi_m = spectra::bernoulli_poly(m);
        SPoly p = (phi_m.compose_affine(Scalar(0), Scalar(1, 2)) - phi_m.compose_affine(Scalar(1, 2), Scalar(1, 2))) *
                  Scalar(1, 2);
        auto v = spectra::to_basis(spectra::Basis::Monomial, D_, spectra::Observable(observables::PolyObservable{p}));
        for (int a = 0; a < m; ++a) b_[m].push_back(es.pair(static_cast<std::size_t>(a), v));
        for (int a = m; a <= D_; ++a)
            if (!es.pair(static_cast<std::size_t>(a), v).is_zero())
                throw Error("bracket b(" + std::to_string(a) + "," + std::to_string(m) + ") is nonzero");
    }
}

const Scalar& BracketTable::operator()(int a, int m) const {
    static const Scalar zero(0);
    if (m > D_ || a < 0 || m < 0) throw PreconditionError("bracket index outside table");
    if (a >= m) return zero;
    return b_[static_cast<std::size_t>(m)][static_cast<std::size_t>(a)];
}

const BracketTable& brackets(int max_degree) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<BracketTable>> tables;
    int d = std::max(8, (max_degree + 7) / 8 * 8);
    std::lock_guard<std::mutex> lock(mu);
    auto& t = tables[d];
    if (!t) t = std::make_unique<BracketTable>(d);
    return *t;
}

Scalar q1_matrix_element(int m, int n, int m2, int n2) {
    if (m < 0 || n < 0 || m2 < 0 || n2 < 0) throw PreconditionError("negative tensor index");
    if (m2 >= m || n2 <= n) return Scalar(0);
    const BracketTable& b = brackets(std::max({m, n, m2, n2}));
    // Psi side reuses the Phi-side table.
    return b(n, n2) * conj(b(m2, m));
}

std::vector<SparseEntry> TwoSidedOperator::entries() const {
    std::vector<SparseEntry> out;
    for (std::size_t c = 0; c < dim(); ++c)
        for (std::size_t r = 0; r < dim(); ++r)
            if (!matrix(r, c).is_zero()) out.push_back({label(r), label(c), matrix(r, c)});
    return out;
}

std::vector<Scalar> TwoSidedOperator::eigenvalues() const {
    std::vector<Scalar> ev;
    for (std::size_t i = 0; i < dim(); ++i) ev.push_back(matrix(i, i));
    std::sort(ev.begin(), ev.end(), [](const Scalar& a, const Scalar& b) { return exact::compare(a, b) > 0; });
    return ev;
}

TwoSidedOperator build_operator(const Scalar& epsilon, int M, int N) {
    if (M < 0 || N < 0) throw PreconditionError("truncation bounds must be nonnegative");
    TwoSidedOperator op{epsilon, M, N, SMatrix()};
    op.matrix = SMatrix(op.dim(), op.dim());
    for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= N; ++n) {
            std::size_t col = op.index(m, n);
            op.matrix(col, col) = dyadic(m + n);
            if (epsilon.is_zero()) continue;
            for (int i = 0; i < m; ++i)
                for (int j = n + 1; j <= N; ++j) {
                    Scalar q = q1_matrix_element(m, n, i, j);
                    if (!q.is_zero()) op.matrix(op.index(i, j), col) = epsilon * q;
                }
        }
    if (!op.matrix.is_upper_triangular()) throw Error("two-sided operator is not triangular");
    return op;
}

namespace {

JordanReport analyze(const TwoSidedOperator& op, int k) {
    if (k < 0) throw PreconditionError("k must be nonnegative");
    if (op.M < k || op.N < k)
        throw TruncationTooSmall("jordan analysis at k=" + std::to_string(k) + " needs M, N >= k");
    JordanReport rep;
    rep.k = k;
    rep.eigenvalue = dyadic(k);
    rep.M = op.M;
    rep.N = op.N;
    std::size_t n = op.dim();
    SMatrix shifted = op.matrix.shifted(rep.eigenvalue);
    SMatrix power = SMatrix::identity(n);
    rep.ranks.push_back(static_cast<int>(n));
    while (true) {
        power = power * shifted;
        int r = static_cast<int>(rank_of(power));
        if (r == rep.ranks.back()) break;
        rep.ranks.push_back(r);
    }
    rep.algebraic = static_cast<int>(n) - rep.ranks.back();
    rep.geometric = static_cast<int>(n) - (rep.ranks.size() > 1 ? rep.ranks[1] : static_cast<int>(n));
    // at_least[t] = number of blocks of size >= t
    std::vector<int> at_least(rep.ranks.size() + 1, 0);
    for (std::size_t t = 1; t < rep.ranks.size(); ++t) at_least[t] = rep.ranks[t - 1] - rep.ranks[t];
    for (std::size_t t = rep.ranks.size() - 1; t >= 1; --t)
        for (int c = 0; c < at_least[t] - at_least[t + 1]; ++c) rep.blocks.push_back(static_cast<int>(t));
    return rep;
}

}  // namespace

JordanReport jordan_analysis(const TwoSidedOperator& op, int k) {
    JordanReport rep = analyze(op, k);
    JordanReport wider = analyze(build_operator(op.epsilon, op.M, op.N + 2), k);
    rep.stable = wider.algebraic == rep.algebraic && wider.geometric == rep.geometric && wider.blocks == rep.blocks;
    return rep;
}

std::vector<std::vector<Scalar>> eigenvectors(const TwoSidedOperator& op, int k) {
    return op.matrix.shifted(dyadic(k)).nullspace();
}

spectra::VectorResolvent resolvent_q0(const TensorCoeffs& f) {
    spectra::VectorResolvent r;
    r.dim = static_cast<std::size_t>((f.M() + 1) * (f.N() + 1));
    std::map<int, std::vector<Scalar>> by_degree;
    for (const auto& [idx, c] : f.support()) {
        auto& res = by_degree[idx.degree()];
        if (res.empty()) res.assign(r.dim, Scalar(0));
        res[static_cast<std::size_t>(idx.i * (f.N() + 1) + idx.j)] = c;
    }
    for (auto& [d, res] : by_degree) r.poles.push_back({dyadic(d), 1, std::move(res)});
    return r;
}

RationalFunction ak_direct(int k, const TensorCoeffs& f, const TensorCoeffs& g) {
    if (k < 0) throw PreconditionError("k must be nonnegative");
    int jmax = g.max_j();
    // Terms grouped by the multiset of total degrees in the denominator.
    std::map<std::vector<int>, Scalar> terms;
    std::vector<int> degrees;
    std::function<void(int, int, int, const Scalar&)> walk = [&](int step, int i, int j, const Scalar& coeff) {
        degrees.push_back(i + j);
        if (step == k) {
            Scalar d = g.at(i, j);
            if (!d.is_zero()) {
                auto key = degrees;
                std::sort(key.begin(), key.end());
                terms[key] += coeff * conj(d);
            }
        } else {
            for (int i2 = 0; i2 < i; ++i2)
                for (int j2 = j + 1; j2 <= jmax; ++j2) {
                    Scalar q = q1_matrix_element(i, j, i2, j2);
                    if (!q.is_zero()) walk(step + 1, i2, j2, coeff * q);
                }
        }
        degrees.pop_back();
    };
    for (const auto& [idx, c] : f.support()) walk(0, idx.i, idx.j, c);

    RationalFunction total;
    for (const auto& [key, coeff] : terms) {
        if (coeff.is_zero()) continue;
        std::vector<exact::Pole> poles;
        for (int d : key) {
            if (!poles.empty() && poles.back().location == dyadic(d))
                ++poles.back().order;
            else
                poles.push_back({dyadic(d), 1});
        }
        total += RationalFunction(SPoly::constant(coeff), poles);
    }
    return total;
}

RationalFunction ak_matrix(int k, const TensorCoeffs& f, const TensorCoeffs& g, int M, int N) {
    if (k < 0) throw PreconditionError("k must be nonnegative");
    if (f.max_i() > M || f.max_j() > N || g.max_i() > M || g.max_j() > N)
        throw TruncationTooSmall("truncation M=" + std::to_string(M) + ", N=" + std::to_string(N) +
                                 " does not contain the supports of f and g");
    TwoSidedOperator op = build_operator(Scalar(1), M, N);
    std::size_t dim = op.dim();
    std::vector<RationalFunction> resolvent(dim);
    for (std::size_t idx = 0; idx < dim; ++idx)
        resolvent[idx] = RationalFunction::pole_term(Scalar(1), dyadic(op.label(idx).degree()));

    std::vector<RationalFunction> v(dim);
    for (const auto& [idx, c] : f.support()) v[op.index(idx.i, idx.j)] = resolvent[op.index(idx.i, idx.j)] * c;
    for (int step = 0; step < k; ++step) {
        std::vector<RationalFunction> w(dim);
        for (std::size_t col = 0; col < dim; ++col) {
            if (v[col].is_zero()) continue;
            for (std::size_t row = 0; row < col; ++row)
                if (!op.matrix(row, col).is_zero()) w[row] += v[col] * op.matrix(row, col);
        }
        for (std::size_t idx = 0; idx < dim; ++idx)
            if (!w[idx].is_zero()) w[idx] *= resolvent[idx];
        v = std::move(w);
    }
    RationalFunction total;
    for (const auto& [idx, d] : g.support()) total += v[op.index(idx.i, idx.j)] * conj(d);
    return total;
}

RationalFunction perturbation_coefficient(int k, const TensorCoeffs& f, const TensorCoeffs& g) {
    int M = std::max(f.M(), g.M()), N = std::max(f.N(), g.N());
    RationalFunction by_matrix = ak_matrix(k, f, g, M, N);
    RationalFunction by_chains = ak_direct(k, f, g);
    if (!(by_matrix == by_chains))
        throw Error("A_" + std::to_string(k) + " routes disagree: " + by_matrix.to_string() + " vs " +
                    by_chains.to_string());
    return by_matrix;
}

bool regular_below(int k, const RationalFunction& a) {
    for (int l = 0; l < k; ++l)
        if (a.pole_order(dyadic(l)) != 0) return false;
    return true;
}

PoleOrderResult pole_order_check(int k) {
    if (k < 0) throw PreconditionError("k must be nonnegative");
    PoleOrderResult best;
    best.k = k;
    best.order = -1;
    // Small supports around the chain (k,0) -> (k-1,1) -> ... -> (0,k).
    for (int a = k; a <= k + 1; ++a)
        for (int b = 0; b <= 1; ++b)
            for (int c = 0; c <= 1; ++c)
                for (int d = k; d <= k + 1; ++d) {
                    int M = std::max(a, c), N = std::max(b, d);
                    auto f = TensorCoeffs::delta(a, b, M, N);
                    auto g = TensorCoeffs::delta(c, d, M, N);
                    RationalFunction ak = perturbation_coefficient(k, f, g);
                    int order = ak.pole_order(dyadic(k));
                    if (order > best.order) {
                        best.order = order;
                        best.f = f;
                        best.g = g;
                        best.ak = ak;
                    }
                }
    return best;
}

PiecewisePoly PiecewisePoly::from_cylfun(const CylFun& c) {
    PiecewisePoly p;
    p.depth = c.depth();
    for (const auto& [w, v] : c.values()) p.pieces[w] = SPoly::constant(v);
    return p;
}

PiecewisePoly PiecewisePoly::refine(int r) const {
    if (r < depth) throw PreconditionError("refine to a smaller depth");
    PiecewisePoly out;
    out.depth = r;
    for (const auto& [w, p] : pieces) {
        int extra = r - depth;
        for (long s = 0; s < (1L << extra); ++s) {
            auto word = w;
            for (int b = extra - 1; b >= 0; --b) word.push_back(static_cast<int>((s >> b) & 1));
            out.pieces[word] = p;
        }
    }
    return out;
}

Scalar integrate_product(const PiecewisePoly& f, const PiecewisePoly& g) {
    static const symdyn::ShiftSystem full2 = symdyn::preset("full2-uniform");
    int r = std::max(f.depth, g.depth);
    PiecewisePoly a = f.refine(r), b = g.refine(r);
    Scalar total(0);
    for (const auto& [w, p] : a.pieces) {
        auto it = b.pieces.find(w);
        if (it == b.pieces.end()) continue;
        SPoly prim = (p * it->second).antiderivative();
        auto [lo, hi] = symdyn::coding_interval(full2, w);
        total += prim(hi) - prim(lo);
    }
    return total;
}

SeparableFun apply_q1_pointwise(const SeparableFun& f) {
    SeparableFun out;
    // Right half: x -> (1/2)(f(0x) - f(1x)), with h(0x) = h/2 and h(1x) = (1+h)/2.
    const PiecewisePoly& plus = f.plus;
    if (plus.depth == 0) {
        auto it = plus.pieces.find({});
        SPoly p = it == plus.pieces.end() ? SPoly() : it->second;
        out.plus = PiecewisePoly::poly(
            (p.compose_affine(Scalar(0), Scalar(1, 2)) - p.compose_affine(Scalar(1, 2), Scalar(1, 2))) * Scalar(1, 2));
    } else {
        out.plus.depth = plus.depth - 1;
        for (const auto& [w, p] : plus.pieces) {
            std::vector<int> tail(w.begin() + 1, w.end());
            SPoly term = w.front() == 0 ? p.compose_affine(Scalar(0), Scalar(1, 2))
                                        : -(p.compose_affine(Scalar(1, 2), Scalar(1, 2)));
            out.plus.pieces[tail] += term * Scalar(1, 2);
        }
    }
    // Left half read as x = (w0, w-1, ...): x -> (-1)^{x1} f(x2, x3, ...), with h(Sx) = 2h - x1.
    out.minus.depth = f.minus.depth + 1;
    for (const auto& [w, p] : f.minus.pieces)
        for (int s = 0; s <= 1; ++s) {
            std::vector<int> word{s};
            word.insert(word.end(), w.begin(), w.end());
            SPoly q = p.compose_affine(Scalar(-s), Scalar(2));
            out.minus.pieces[word] = s == 0 ? q : -q;
        }
    return out;
}

CylFun dual_representative(int a, int D) {
    if (a < 0 || a > D) throw PreconditionError("dual representative index outside 0..D");
    int r = 0;
    while ((1L << r) < D + 1) ++r;
    std::vector<std::vector<int>> words;
    for (int k = 0; k <= D; ++k) {
        std::vector<int> w;
        for (int b = r - 1; b >= 0; --b) w.push_back((k >> b) & 1);
        words.push_back(w);
    }
    auto D1 = static_cast<std::size_t>(D) + 1;
    SMatrix G(D1, D1);
    for (std::size_t j = 0; j < D1; ++j) {
        PiecewisePoly bj = PiecewisePoly::poly(spectra::bernoulli_poly(static_cast<int>(j)));
        for (std::size_t k = 0; k < D1; ++k) {
            PiecewisePoly ind{r, {{words[k], SPoly::constant(Scalar(1))}}};
            G(j, k) = integrate_product(bj, ind);
        }
    }
    SMatrix Ginv = G.inverse();
    std::map<std::vector<int>, Scalar> values;
    for (std::size_t k = 0; k < D1; ++k) values[words[k]] = Ginv(k, static_cast<std::size_t>(a));
    return CylFun(r, std::move(values));
}

Scalar pair_l2(const SeparableFun& f, const SeparableFun& g) {
    return integrate_product(f.plus, g.plus) * conj(integrate_product(f.minus, g.minus));
}

Scalar q1_pointwise_element(int m, int n, int m2, int n2) {
    int D = std::max({m, n, m2, n2}) + 1;
    SeparableFun source{PiecewisePoly::poly(spectra::bernoulli_poly(m)),
                        PiecewisePoly::from_cylfun(dual_representative(n, D))};
    SeparableFun target{PiecewisePoly::from_cylfun(dual_representative(m2, D)),
                        PiecewisePoly::poly(spectra::bernoulli_poly(n2))};
    return pair_l2(apply_q1_pointwise(source), target);
}

}  // namespace pfspec::twosided
