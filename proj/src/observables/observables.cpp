#include "pfspec/observables/observables.hpp"

#include <algorithm>

#include "pfspec/errors.hpp"

namespace pfspec::observables {

using symdyn::admissible_words;
using symdyn::cylinder_measure;

CylFun::CylFun(int depth, std::map<Word, Scalar> values) : depth_(depth), values_(std::move(values)) {
    if (depth_ < 0) throw PreconditionError("negative cylinder depth");
    for (const auto& [w, v] : values_)
        if (static_cast<int>(w.size()) != depth_) throw PreconditionError("cylinder word length differs from depth");
    prune();
}

CylFun CylFun::constant(const Scalar& c) { return CylFun(0, {{Word{}, c}}); }

CylFun CylFun::indicator(const Word& w) { return CylFun(static_cast<int>(w.size()), {{w, Scalar(1)}}); }

void CylFun::prune() {
    for (auto it = values_.begin(); it != values_.end();)
        it = it->second.is_zero() ? values_.erase(it) : std::next(it);
}

Scalar CylFun::operator()(const Word& w) const {
    if (static_cast<int>(w.size()) < depth_) throw PreconditionError("word shorter than cylinder depth");
    auto it = values_.find(Word(w.begin(), w.begin() + depth_));
    return it == values_.end() ? Scalar(0) : it->second;
}

CylFun CylFun::refine(const ShiftSystem& sys, int r) const {
    if (r < depth_) throw PreconditionError("refinement cannot reduce depth");
    if (r == depth_) return *this;
    std::map<Word, Scalar> out;
    for (const Word& w : admissible_words(sys, r)) {
        Scalar v = (*this)(w);
        if (!v.is_zero()) out.emplace(w, std::move(v));
    }
    return CylFun(r, std::move(out));
}

CylFun& CylFun::operator*=(const Scalar& s) {
    for (auto& [w, v] : values_) v *= s;
    prune();
    return *this;
}

namespace {

template <class Op>
CylFun combine(const ShiftSystem& sys, const CylFun& f, const CylFun& g, Op op) {
    int r = std::max(f.depth(), g.depth());
    std::map<Word, Scalar> out;
    for (const Word& w : admissible_words(sys, r)) out.emplace(w, op(f(w), g(w)));
    return CylFun(r, std::move(out));
}

}  // namespace

CylFun add(const ShiftSystem& sys, const CylFun& f, const CylFun& g) {
    return combine(sys, f, g, [](const Scalar& a, const Scalar& b) { return a + b; });
}

CylFun subtract(const ShiftSystem& sys, const CylFun& f, const CylFun& g) {
    return combine(sys, f, g, [](const Scalar& a, const Scalar& b) { return a - b; });
}

CylFun multiply(const ShiftSystem& sys, const CylFun& f, const CylFun& g) {
    return combine(sys, f, g, [](const Scalar& a, const Scalar& b) { return a * b; });
}

bool equal(const ShiftSystem& sys, const CylFun& f, const CylFun& g) {
    int r = std::max(f.depth(), g.depth());
    return f.refine(sys, r).values() == g.refine(sys, r).values();
}

PolyObservable pf_apply(const ShiftSystem& sys, const PolyObservable& f) {
    if (!sys.is_bernoulli()) throw PreconditionError("polynomial observables need a Bernoulli system");
    const auto& code = sys.coding();
    SPoly out;
    for (int i = 0; i < sys.beta(); ++i)
        out += f.poly.compose_affine(code.offsets[i], code.scales[i]) * sys.weight(i, 0);
    return {out};
}

BlockObservable pf_apply(const ShiftSystem& sys, const BlockObservable& f) {
    if (!sys.is_golden_mean()) throw PreconditionError("block observables belong to the golden-mean system");
    const auto& code = sys.coding();
    const SPoly* q[2] = {&f.q0, &f.q1};
    SPoly out[2];
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) {
            Scalar w = sys.weight(i, j);
            if (!w.is_zero()) out[j] += q[i]->compose_affine(code.offsets[i], code.scales[i]) * w;
        }
    return {out[0], out[1]};
}

CylFun pf_apply(const ShiftSystem& sys, const CylFun& f) {
    if (f.depth() == 0) return f;
    int r = std::max(f.depth() - 1, sys.is_bernoulli() ? 0 : 1);
    std::map<Word, Scalar> out;
    for (const Word& u : admissible_words(sys, r)) {
        Scalar acc(0);
        for (int i = 0; i < sys.beta(); ++i) {
            if (!u.empty() && !sys.allowed(i, u[0])) continue;
            Word iu;
            iu.reserve(u.size() + 1);
            iu.push_back(i);
            iu.insert(iu.end(), u.begin(), u.end());
            if (static_cast<int>(iu.size()) < f.depth()) iu.resize(static_cast<std::size_t>(f.depth()), 0);
            Scalar v = f(iu);
            if (!v.is_zero()) acc += sys.weight(i, u.empty() ? 0 : u[0]) * v;
        }
        if (!acc.is_zero()) out.emplace(u, std::move(acc));
    }
    return CylFun(r, std::move(out));
}

CylFun koopman_apply(const ShiftSystem& sys, const CylFun& f) {
    int r = f.depth() + 1;
    std::map<Word, Scalar> out;
    for (const Word& w : admissible_words(sys, r)) {
        Scalar v = f(Word(w.begin() + 1, w.end()));
        if (!v.is_zero()) out.emplace(w, std::move(v));
    }
    return CylFun(r, std::move(out));
}

Scalar inner_product(const ShiftSystem& sys, const CylFun& f, const CylFun& g) {
    int r = std::max(f.depth(), g.depth());
    Scalar acc(0);
    for (const Word& w : admissible_words(sys, r)) {
        Scalar fv = f(w);
        if (fv.is_zero()) continue;
        Scalar gv = g(w);
        if (gv.is_zero()) continue;
        acc += cylinder_measure(sys, w) * fv * exact::conj(gv);
    }
    return acc;
}

namespace {

SPoly conj_poly(const SPoly& p) {
    std::vector<Scalar> c;
    for (const auto& x : p.coeffs()) c.push_back(exact::conj(x));
    return SPoly(std::move(c));
}

// integral over C[j] of p(h), or over the whole space when j < 0.
Scalar integrate_poly(const ShiftSystem& sys, const SPoly& p, int j) {
    if (p.is_zero()) return Scalar(0);
    Scalar acc(0);
    if (j < 0 && sys.is_bernoulli()) {
        auto m = symdyn::h_moments(sys, p.degree());
        for (int k = 0; k <= p.degree(); ++k) acc += p.coeff(k) * m[static_cast<std::size_t>(k)];
        return acc;
    }
    auto a = symdyn::block_moments(sys, p.degree());
    for (int k = 0; k <= p.degree(); ++k) {
        const auto& ak = a[static_cast<std::size_t>(k)];
        if (j >= 0) {
            acc += p.coeff(k) * ak[static_cast<std::size_t>(j)];
        } else {
            for (const auto& x : ak) acc += p.coeff(k) * x;
        }
    }
    return acc;
}

}  // namespace

Scalar integral(const ShiftSystem& sys, const PolyObservable& f) { return integrate_poly(sys, f.poly, -1); }

Scalar integral(const ShiftSystem& sys, const BlockObservable& f) {
    if (!sys.is_golden_mean()) throw PreconditionError("block observables belong to the golden-mean system");
    return integrate_poly(sys, f.q0, 0) + integrate_poly(sys, f.q1, 1);
}

Scalar inner_product(const ShiftSystem& sys, const PolyObservable& f, const PolyObservable& g) {
    return integral(sys, PolyObservable{f.poly * conj_poly(g.poly)});
}

Scalar inner_product(const ShiftSystem& sys, const BlockObservable& f, const BlockObservable& g) {
    return integral(sys, BlockObservable{f.q0 * conj_poly(g.q0), f.q1 * conj_poly(g.q1)});
}

WalshSystem::WalshSystem(const ShiftSystem& sys) {
    if (!sys.is_bernoulli()) throw PreconditionError("Walsh systems need a Bernoulli measure");
    const int beta = sys.beta();
    const auto& p = sys.measure().probabilities;
    auto dot = [&](const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
        Scalar acc(0);
        for (int i = 0; i < beta; ++i) acc += p[i] * x[i] * y[i];
        return acc;
    };
    psi_.push_back(std::vector<Scalar>(static_cast<std::size_t>(beta), Scalar(1)));
    norm2_.push_back(Scalar(1));
    for (int s = 1; s < beta; ++s) {
        std::vector<Scalar> v(static_cast<std::size_t>(beta), Scalar(0));
        v[s] = Scalar(1);
        std::vector<Scalar> e = v;
        for (int t = 0; t < s; ++t) {
            Scalar c = dot(e, psi_[t]) / norm2_[t];
            for (int i = 0; i < beta; ++i) v[i] -= c * psi_[t][i];
        }
        auto lead = std::find_if(v.begin(), v.end(), [](const Scalar& x) { return !x.is_zero(); });
        Scalar scale = lead->inverse();
        for (auto& x : v) x *= scale;
        norm2_.push_back(dot(v, v));
        psi_.push_back(std::move(v));
    }
}

std::vector<int> WalshSystem::digits(long n) const {
    if (n < 0) throw PreconditionError("negative Walsh index");
    std::vector<int> d;
    for (; n > 0; n /= beta()) d.push_back(static_cast<int>(n % beta()));
    return d;
}

CylFun WalshSystem::function(long n) const {
    auto d = digits(n);
    const int depth = static_cast<int>(d.size());
    std::map<Word, Scalar> values;
    Word w(static_cast<std::size_t>(depth), 0);
    while (true) {
        Scalar v(1);
        for (int k = 0; k < depth; ++k) v *= psi_[d[k]][w[k]];
        if (!v.is_zero()) values.emplace(w, v);
        int k = 0;
        while (k < depth && w[k] == beta() - 1) w[k++] = 0;
        if (k == depth) break;
        ++w[k];
    }
    return CylFun(depth, std::move(values));
}

Scalar WalshSystem::norm2_of(long n) const {
    Scalar acc(1);
    for (int s : digits(n)) acc *= norm2_[s];
    return acc;
}

std::optional<long> walsh_pf_rule(const ShiftSystem& sys, long n) {
    if (!sys.is_bernoulli()) throw PreconditionError("Walsh rules need a Bernoulli measure");
    if (n % sys.beta() != 0) return std::nullopt;
    return n / sys.beta();
}

long walsh_koopman_rule(const ShiftSystem& sys, long n) {
    if (!sys.is_bernoulli()) throw PreconditionError("Walsh rules need a Bernoulli measure");
    return n * sys.beta();
}

WalshSeries walsh_pf_apply(const ShiftSystem& sys, const WalshSeries& f) {
    WalshSeries out;
    for (const auto& [n, c] : f) {
        auto m = walsh_pf_rule(sys, n);
        if (!m) continue;
        auto [it, fresh] = out.emplace(*m, c);
        if (!fresh) it->second += c;
    }
    return out;
}

Scalar walsh_norm2(const ShiftSystem& sys, const WalshSeries& f) {
    WalshSystem ws(sys);
    Scalar acc(0);
    for (const auto& [n, c] : f) acc += c.norm2() * ws.norm2_of(n);
    return acc;
}

namespace {

void require_defect_domain(const ShiftSystem& sys, const ComplexScalar& z, int n) {
    if (!(sys.is_uniform() && sys.beta() == 2)) throw PreconditionError("the defect identity needs the uniform 2-shift");
    if (!z.norm2().is_one()) throw PreconditionError("z must lie on the unit circle");
    if (z == ComplexScalar(Scalar(1))) throw PreconditionError("z must differ from 1");
    if (n < 1) throw PreconditionError("n must be positive");
}

}  // namespace

WalshSeries approx_eigenfunction(const ShiftSystem& sys, const ComplexScalar& z, int n) {
    require_defect_domain(sys, z, n);
    WalshSeries f;
    ComplexScalar zk(Scalar(1));
    for (int k = 0; k < n; ++k) {
        f.emplace(1L << k, zk);
        zk *= z;
    }
    return f;
}

Scalar approx_eigenfunction_defect(const ShiftSystem& sys, const ComplexScalar& z, int n) {
    WalshSeries f = approx_eigenfunction(sys, z, n);
    WalshSeries g;
    for (const auto& [k, c] : f) g.emplace(k, z * c);
    for (const auto& [k, c] : walsh_pf_apply(sys, f)) {
        auto [it, fresh] = g.emplace(k, -c);
        if (!fresh) it->second -= c;
    }
    return walsh_norm2(sys, g) / Scalar(n);
}

}  // namespace pfspec::observables
