#include "pfspec/symdyn/shift.hpp"

#include <algorithm>
#include <map>

#include "pfspec/errors.hpp"
#include "pfspec/exact/matrix.hpp"
#include "pfspec/exact/rational.hpp"

namespace pfspec::symdyn {

using exact::Rational;

MeasureSpec MeasureSpec::bernoulli(std::vector<Scalar> p) {
    MeasureSpec m;
    m.kind = MeasureKind::Bernoulli;
    m.probabilities = std::move(p);
    return m;
}

MeasureSpec MeasureSpec::markov(std::vector<std::vector<Scalar>> p, std::vector<Scalar> pi) {
    MeasureSpec m;
    m.kind = MeasureKind::Markov;
    m.transition = std::move(p);
    m.stationary = std::move(pi);
    return m;
}

ShiftSystem::ShiftSystem(std::string name, int beta, std::vector<std::vector<int>> adjacency, MeasureSpec measure,
                         Sidedness sidedness)
    : name_(std::move(name)),
      beta_(beta),
      adjacency_(std::move(adjacency)),
      measure_(std::move(measure)),
      sidedness_(sidedness) {
    validate();
    build_coding();
}

void ShiftSystem::validate() {
    if (beta_ < 2) throw ConfigError("beta must be at least 2");
    if (static_cast<int>(adjacency_.size()) != beta_) throw ConfigError("adjacency must be beta x beta");
    for (const auto& row : adjacency_) {
        if (static_cast<int>(row.size()) != beta_) throw ConfigError("adjacency must be beta x beta");
        bool any = false;
        for (int a : row) {
            if (a != 0 && a != 1) throw ConfigError("adjacency entries must be 0 or 1");
            any = any || a == 1;
        }
        if (!any) throw ConfigError("adjacency has a dead state");
    }

    if (measure_.kind == MeasureKind::Bernoulli) {
        if (static_cast<int>(measure_.probabilities.size()) != beta_)
            throw ConfigError("Bernoulli measure needs beta probabilities");
        if (!is_full()) throw ConfigError("Bernoulli measures require the full shift");
        Scalar sum(0);
        for (const auto& p : measure_.probabilities) {
            if (p.sign() <= 0) throw ConfigError("probabilities must be positive");
            sum += p;
        }
        if (!sum.is_one()) throw ConfigError("probabilities must sum to 1");
        return;
    }

    const auto& P = measure_.transition;
    const auto& pi = measure_.stationary;
    if (static_cast<int>(P.size()) != beta_ || static_cast<int>(pi.size()) != beta_)
        throw ConfigError("Markov measure needs a beta x beta transition matrix and a stationary vector");
    Scalar total(0);
    for (int i = 0; i < beta_; ++i) {
        if (static_cast<int>(P[i].size()) != beta_) throw ConfigError("transition matrix must be beta x beta");
        if (pi[i].sign() <= 0) throw ConfigError("stationary vector must be positive");
        total += pi[i];
        Scalar row(0);
        for (int j = 0; j < beta_; ++j) {
            if (P[i][j].sign() < 0) throw ConfigError("transition probabilities must be nonnegative");
            if (P[i][j].is_zero() != (adjacency_[i][j] == 0))
                throw ConfigError("transition matrix must vanish exactly where adjacency does");
            row += P[i][j];
        }
        if (!row.is_one()) throw ConfigError("transition rows must sum to 1");
    }
    if (!total.is_one()) throw ConfigError("stationary vector must sum to 1");
    for (int j = 0; j < beta_; ++j) {
        Scalar s(0);
        for (int i = 0; i < beta_; ++i) s += pi[i] * P[i][j];
        if (!(s == pi[j])) throw ConfigError("stationary vector is not invariant: pi P != pi");
    }
}

void ShiftSystem::build_coding() {
    if (measure_.kind == MeasureKind::Bernoulli) {
        Scalar acc(0);
        for (const auto& p : measure_.probabilities) {
            coding_.offsets.push_back(acc);
            coding_.scales.push_back(p);
            acc += p;
        }
        return;
    }
    golden_ = beta_ == 2 && adjacency_ == std::vector<std::vector<int>>{{1, 1}, {1, 0}};
    if (!golden_) throw ConfigError("Markov systems are supported only on the golden-mean subshift");
    Scalar inv = exact::phi().inverse();
    coding_.offsets = {Scalar(0), inv};
    coding_.scales = {inv, inv};
}

bool ShiftSystem::is_full() const {
    for (const auto& row : adjacency_)
        for (int a : row)
            if (a == 0) return false;
    return true;
}

bool ShiftSystem::is_uniform() const {
    if (!is_bernoulli()) return false;
    Scalar u(Rational(1, beta_));
    return std::all_of(measure_.probabilities.begin(), measure_.probabilities.end(),
                       [&](const Scalar& p) { return p == u; });
}

const Scalar& ShiftSystem::initial(int i) const {
    return is_bernoulli() ? measure_.probabilities.at(i) : measure_.stationary.at(i);
}

const Scalar& ShiftSystem::transition(int i, int j) const {
    return is_bernoulli() ? measure_.probabilities.at(j) : measure_.transition.at(i).at(j);
}

Scalar ShiftSystem::weight(int i, int j) const {
    if (is_bernoulli()) return measure_.probabilities.at(i);
    if (!allowed(i, j)) return Scalar(0);
    return initial(i) * transition(i, j) / initial(j);
}

bool ShiftSystem::admissible(const Word& w) const {
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k] < 0 || w[k] >= beta_) return false;
        if (k > 0 && !allowed(w[k - 1], w[k])) return false;
    }
    return true;
}

void ShiftSystem::require_admissible(const Word& w) const {
    if (admissible(w)) return;
    std::string s;
    for (int x : w) s += std::to_string(x) + ",";
    if (!s.empty()) s.pop_back();
    throw InadmissibleWord("inadmissible word [" + s + "] for system " + name_);
}

ShiftSystem full_shift(std::vector<Scalar> probabilities, Sidedness sidedness) {
    int beta = static_cast<int>(probabilities.size());
    std::string name = "full" + std::to_string(beta);
    bool uniform = std::all_of(probabilities.begin(), probabilities.end(),
                               [&](const Scalar& p) { return p == Scalar(Rational(1, beta)); });
    name += uniform ? "-uniform" : "-weighted";
    return ShiftSystem(name, beta, std::vector<std::vector<int>>(beta, std::vector<int>(beta, 1)),
                       MeasureSpec::bernoulli(std::move(probabilities)), sidedness);
}

ShiftSystem golden_mean() {
    Scalar inv = exact::phi().inverse();
    Scalar inv2 = inv * inv;
    Scalar norm = (exact::phi().pow(2) + Scalar(1)).inverse();
    return ShiftSystem("golden-mean", 2, {{1, 1}, {1, 0}},
                       MeasureSpec::markov({{inv, inv2}, {Scalar(1), Scalar(0)}},
                                           {norm * exact::phi().pow(2), norm}));
}

std::vector<std::string> preset_names() {
    return {"full2-uniform", "fullbeta-uniform", "fullbeta-weighted", "golden-mean", "twosided-full2"};
}

ShiftSystem preset(const std::string& name) {
    if (name == "full2-uniform") {
        ShiftSystem s = full_shift({Scalar(1, 2), Scalar(1, 2)});
        return ShiftSystem(name, 2, s.adjacency(), s.measure());
    }
    if (name == "fullbeta-uniform")
        return ShiftSystem(name, 3, {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}},
                           MeasureSpec::bernoulli({Scalar(1, 3), Scalar(1, 3), Scalar(1, 3)}));
    if (name == "fullbeta-weighted")
        return ShiftSystem(name, 3, {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}},
                           MeasureSpec::bernoulli({Scalar(1, 2), Scalar(1, 4), Scalar(1, 4)}));
    if (name == "golden-mean") return golden_mean();
    if (name == "twosided-full2")
        return ShiftSystem(name, 2, {{1, 1}, {1, 1}}, MeasureSpec::bernoulli({Scalar(1, 2), Scalar(1, 2)}),
                           Sidedness::TwoSided);
    throw ConfigError("unknown preset '" + name + "'");
}

std::vector<Word> admissible_words(const ShiftSystem& sys, int length) {
    std::vector<Word> out{Word{}};
    for (int k = 0; k < length; ++k) {
        std::vector<Word> next;
        for (const Word& w : out)
            for (int s = 0; s < sys.beta(); ++s)
                if (w.empty() || sys.allowed(w.back(), s)) {
                    Word x = w;
                    x.push_back(s);
                    next.push_back(std::move(x));
                }
        out = std::move(next);
    }
    return out;
}

Scalar cylinder_measure(const ShiftSystem& sys, const Word& w) {
    sys.require_admissible(w);
    if (w.empty()) return Scalar(1);
    Scalar m = sys.initial(w[0]);
    for (std::size_t k = 1; k < w.size(); ++k) m *= sys.transition(w[k - 1], w[k]);
    return m;
}

Affine cylinder_affine(const ShiftSystem& sys, const Word& w) {
    Affine f;
    for (int s : w) f = f.then(sys.coding().offsets.at(s), sys.coding().scales.at(s));
    return f;
}

Scalar h_of_eventually_periodic(const ShiftSystem& sys, const Word& w, const Word& prefix, const Word& cycle) {
    if (cycle.empty()) throw PreconditionError("empty tail cycle");
    Affine c = cylinder_affine(sys, cycle);
    Scalar fixed = c.offset / (Scalar(1) - c.scale);
    Word head = w;
    head.insert(head.end(), prefix.begin(), prefix.end());
    return cylinder_affine(sys, head)(fixed);
}

// Each symbol determines its greedy successor, so the first repeated symbol
// closes the cycle.
std::pair<Word, Word> extremal_tail(const ShiftSystem& sys, int last, bool maximal) {
    auto next = [&](int state) {
        int pick = -1;
        for (int s = 0; s < sys.beta(); ++s) {
            if (state >= 0 && !sys.allowed(state, s)) continue;
            pick = s;
            if (!maximal) break;
        }
        return pick;
    };
    Word seq;
    std::map<int, std::size_t> first;
    int x = next(last);
    while (first.find(x) == first.end()) {
        first.emplace(x, seq.size());
        seq.push_back(x);
        x = next(x);
    }
    auto cut = seq.begin() + static_cast<std::ptrdiff_t>(first[x]);
    return {Word(seq.begin(), cut), Word(cut, seq.end())};
}

std::pair<Scalar, Scalar> coding_interval(const ShiftSystem& sys, const Word& w) {
    sys.require_admissible(w);
    int last = w.empty() ? -1 : w.back();
    auto [pa, ca] = extremal_tail(sys, last, false);
    auto [pb, cb] = extremal_tail(sys, last, true);
    return {h_of_eventually_periodic(sys, w, pa, ca), h_of_eventually_periodic(sys, w, pb, cb)};
}

std::vector<Scalar> h_moments(const ShiftSystem& sys, int nmax) {
    if (!sys.is_bernoulli()) throw PreconditionError("h_moments requires a Bernoulli measure");
    const auto& p = sys.measure().probabilities;
    const auto& c = sys.coding().offsets;
    std::vector<Scalar> m{Scalar(1)};
    for (int n = 1; n <= nmax; ++n) {
        Scalar rhs(0);
        for (int k = 0; k < n; ++k) {
            Scalar inner(0);
            for (std::size_t i = 0; i < p.size(); ++i) inner += p[i].pow(k + 1) * c[i].pow(n - k);
            rhs += Scalar(exact::binomial(n, k)) * inner * m[static_cast<std::size_t>(k)];
        }
        Scalar diag(1);
        for (const auto& pi : p) diag -= pi.pow(n + 1);
        m.push_back(rhs / diag);
    }
    return m;
}

std::vector<std::vector<Scalar>> block_moments(const ShiftSystem& sys, int nmax) {
    const int beta = sys.beta();
    const auto& c = sys.coding().offsets;
    const auto& s = sys.coding().scales;
    std::vector<std::vector<Scalar>> a;
    std::vector<Scalar> a0;
    for (int j = 0; j < beta; ++j) a0.push_back(sys.initial(j));
    a.push_back(std::move(a0));
    for (int n = 1; n <= nmax; ++n) {
        // a_n^(i) = sum_j w_ij sum_k C(n,k) c_i^(n-k) s_i^k a_k^(j)
        exact::SMatrix sysm(static_cast<std::size_t>(beta), static_cast<std::size_t>(beta) + 1);
        for (int i = 0; i < beta; ++i) {
            sysm(i, i) += Scalar(1);
            Scalar rhs(0);
            for (int j = 0; j < beta; ++j) {
                Scalar w = sys.weight(i, j);
                if (w.is_zero()) continue;
                sysm(i, j) -= w * s[i].pow(n);
                for (int k = 0; k < n; ++k)
                    rhs += w * Scalar(exact::binomial(n, k)) * c[i].pow(n - k) * s[i].pow(k) *
                           a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            }
            sysm(i, beta) = rhs;
        }
        auto piv = sysm.rref();
        if (static_cast<int>(piv.size()) != beta || static_cast<int>(piv.back()) != beta - 1)
            throw PreconditionError("singular moment recurrence");
        std::vector<Scalar> an;
        for (int i = 0; i < beta; ++i) an.push_back(sysm(i, beta));
        a.push_back(std::move(an));
    }
    return a;
}

}  // namespace pfspec::symdyn
