#include "check.hpp"

#include <functional>
#include <random>

#include "pfspec/conjugacy/conjugacy.hpp"
#include "pfspec/errors.hpp"
#include "pfspec/observables/observables.hpp"
#include "pfspec/spectra/spectra.hpp"
#include "pfspec/twosided/twosided.hpp"

namespace pfspec::tools {

namespace {

using exact::ComplexScalar;
using exact::phi;
using exact::Scalar;
using exact::SPoly;
using symdyn::preset;
using symdyn::Word;

CheckResult field_axioms() {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-20, 20);
    auto rnd = [&] {
        int den = d(rng);
        return Scalar(d(rng), den == 0 ? 1 : den) + Scalar(d(rng), 7) * phi();
    };
    for (int t = 0; t < 200; ++t) {
        Scalar a = rnd(), b = rnd(), c = rnd();
        if (!((a * b) * c == a * (b * c)) || !(a * (b + c) == a * b + a * c)) return {"", false, "associativity"};
        if (!a.is_zero() && !(a * a.inverse() == Scalar(1))) return {"", false, "inverse"};
    }
    for (int n = 0; n <= 50; ++n)
        if (!(phi().pow(n) * phi().pow(-n) == Scalar(1))) return {"", false, "phi power " + std::to_string(n)};
    return {"", true, "200 random triples, phi^n phi^-n for n <= 50"};
}

CheckResult cylinder_additivity() {
    for (const auto& name : symdyn::preset_names()) {
        auto sys = preset(name);
        for (int len = 0; len <= 6; ++len)
            for (const Word& w : symdyn::admissible_words(sys, len)) {
                Scalar sum(0);
                for (int j = 0; j < sys.beta(); ++j) {
                    Word x = w;
                    x.push_back(j);
                    if (sys.admissible(x)) sum += symdyn::cylinder_measure(sys, x);
                }
                if (!(sum == symdyn::cylinder_measure(sys, w))) return {"", false, name};
            }
    }
    return {"", true, "all presets, |w| <= 6"};
}

CheckResult coding_consistency() {
    for (const char* name : {"full2-uniform", "fullbeta-uniform", "golden-mean"}) {
        auto sys = preset(name);
        auto rho = conjugacy::invariant_density(conjugacy::matched_map(sys));
        for (int len = 1; len <= 8; ++len)
            for (const Word& w : symdyn::admissible_words(sys, len)) {
                auto [a, b] = symdyn::coding_interval(sys, w);
                if (!(rho.integral(a, b) == symdyn::cylinder_measure(sys, w))) return {"", false, name};
            }
    }
    return {"", true, "integral of rho over h(C[w]) equals mu(C[w]), |w| <= 8"};
}

CheckResult eigen_equations() {
    for (const auto& name : symdyn::preset_names()) {
        auto es = spectra::eigen_system(preset(name), 12);
        for (std::size_t i = 0; i < es.size(); ++i) {
            auto v = es.eigenvector(i);
            auto av = spectra::apply_rep(es, v);
            for (std::size_t r = 0; r < v.size(); ++r)
                if (!(av[r] == es.eigenvalues[i] * v[r])) return {"", false, name + " eigen-equation"};
        }
        if (!(es.Minv * es.M == exact::SMatrix::identity(es.size()))) return {"", false, name + " biorthogonality"};
    }
    return {"", true, "all presets, n = 12"};
}

CheckResult bernoulli_identification() {
    auto es = spectra::eigen_system(preset("full2-uniform"), 10);
    for (int n = 0; n <= 10; ++n) {
        auto idx = es.find(spectra::ModeLabel{n, 0});
        auto f = std::get<observables::PolyObservable>(es.eigenfunction(*idx));
        if (!(f.poly == spectra::bernoulli_poly(n))) return {"", false, "Phi_" + std::to_string(n)};
        SPoly b = spectra::bernoulli_poly(n);
        SPoly raabe = b * Scalar(1, 2) + b.compose_affine(Scalar(1, 2), Scalar(1)) * Scalar(1, 2) -
                      b.compose_affine(Scalar(0), Scalar(2)) * exact::pow2_neg(n);
        if (!raabe.is_zero()) return {"", false, "Raabe n = " + std::to_string(n)};
    }
    return {"", true, "n <= 10"};
}

CheckResult weighted_eigenvalues() {
    for (const auto& p : std::vector<std::vector<Scalar>>{{Scalar(1, 3), Scalar(2, 3)},
                                                          {Scalar(1, 2), Scalar(1, 4), Scalar(1, 4)}}) {
        auto es = spectra::eigen_system(symdyn::full_shift(p), 12);
        for (int n = 0; n <= 12; ++n) {
            Scalar s(0);
            for (const auto& q : p) s += q.pow(n + 1);
            if (!(es.A(static_cast<std::size_t>(n), static_cast<std::size_t>(n)) == s))
                return {"", false, "n = " + std::to_string(n)};
        }
    }
    return {"", true, "p = (1/3, 2/3) and (1/2, 1/4, 1/4), n <= 12"};
}

CheckResult golden_closure() {
    for (int n : {0, 4, 8}) {
        auto es = spectra::eigen_system(preset("golden-mean"), n);
        std::vector<Scalar> want;
        for (int k = 0; k <= n; ++k) {
            want.push_back(phi().pow(-k));
            want.push_back(-phi().pow(-k - 2));
        }
        auto got = es.eigenvalues;
        auto less = [](const Scalar& a, const Scalar& b) { return exact::compare(a, b) < 0; };
        std::sort(want.begin(), want.end(), less);
        std::sort(got.begin(), got.end(), less);
        if (got != want) return {"", false, "n = " + std::to_string(n)};
    }
    return {"", true, "n in {0, 4, 8}"};
}

CheckResult adjointness() {
    std::mt19937_64 rng(5);
    for (const auto& name : symdyn::preset_names()) {
        auto sys = preset(name);
        for (int t = 0; t < 5; ++t) {
            auto random = [&](int depth) {
                std::map<Word, Scalar> v;
                for (const Word& w : symdyn::admissible_words(sys, depth))
                    v.emplace(w, Scalar(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 7) + 1));
                return observables::CylFun(depth, std::move(v));
            };
            auto f = random(3), g = random(2);
            Scalar lhs = observables::inner_product(sys, observables::pf_apply(sys, f), g);
            Scalar rhs = observables::inner_product(sys, f, observables::koopman_apply(sys, g));
            if (!(lhs == rhs)) return {"", false, name};
        }
    }
    return {"", true, "5 random pairs per preset"};
}

CheckResult walsh_orthonormality() {
    auto sys = preset("full2-uniform");
    observables::WalshSystem ws(sys);
    for (long n = 0; n <= 64; ++n)
        for (long m = 0; m <= 64; ++m) {
            Scalar ip = observables::inner_product(sys, ws.function(n), ws.function(m));
            if (!(ip == Scalar(n == m ? 1 : 0))) return {"", false, std::to_string(n) + "," + std::to_string(m)};
        }
    return {"", true, "n, m <= 64"};
}

CheckResult approximate_eigenfunctions() {
    auto sys = preset("full2-uniform");
    for (const ComplexScalar& z : {ComplexScalar(Scalar(-1)), ComplexScalar::i(), ComplexScalar(Scalar(3, 5), Scalar(4, 5))})
        for (int n = 1; n <= 32; ++n)
            if (!(observables::approx_eigenfunction_defect(sys, z, n) * Scalar(n) == Scalar(1)))
                return {"", false, z.to_string() + " n = " + std::to_string(n)};
    return {"", true, "z in {-1, i, 3/5 + 4i/5}, n <= 32"};
}

CheckResult resolvent_consistency() {
    for (const char* name : {"full2-uniform", "fullbeta-weighted", "golden-mean"}) {
        auto es = spectra::eigen_system(preset(name), 6);
        spectra::Vec f(es.size());
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = Scalar(static_cast<long>(i) + 1, 3);
        auto r = spectra::generalized_resolvent(es, f);
        for (const Scalar& lam : {Scalar(2), Scalar(-3, 7), Scalar(7, 5)}) {
            auto x = r.eval(lam);
            auto vx = spectra::apply_rep(es, x);
            for (std::size_t i = 0; i < f.size(); ++i)
                if (!(lam * x[i] - vx[i] == f[i])) return {"", false, name};
        }
    }
    return {"", true, "three presets, lambda in {2, -3/7, 7/5}"};
}

CheckResult semiconjugacy() {
    for (const char* name : {"full2-uniform", "fullbeta-uniform", "golden-mean"}) {
        auto sys = preset(name);
        if (!conjugacy::semiconjugacy_check(sys, conjugacy::matched_map(sys), 8).ok()) return {"", false, name};
    }
    return {"", true, "depth 8"};
}

CheckResult twosided_spectrum() {
    auto base = twosided::build_operator(Scalar(0), 6, 6).eigenvalues();
    for (const Scalar& e : {Scalar(1, 2), Scalar(1)})
        if (twosided::build_operator(e, 6, 6).eigenvalues() != base) return {"", false, "eps = " + e.to_string()};
    for (int k = 0; k <= 2; ++k) {
        auto rep = twosided::jordan_analysis(twosided::build_operator(Scalar(1), k + 4, k + 4), k);
        if (rep.algebraic != k + 1 || rep.geometric != 1 || !rep.stable) return {"", false, "k = " + std::to_string(k)};
    }
    return {"", true, "eps in {0, 1/2, 1}; Jordan blocks for k <= 2"};
}

CheckResult ak_routes() {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 6; ++t) {
        twosided::TensorCoeffs f(3, 3), g(3, 3);
        for (int c = 0; c < 3; ++c) {
            f.set(static_cast<int>(rng() % 4), static_cast<int>(rng() % 4), Scalar(static_cast<long>(rng() % 5) + 1));
            g.set(static_cast<int>(rng() % 4), static_cast<int>(rng() % 4), Scalar(static_cast<long>(rng() % 5) + 1));
        }
        for (int k = 0; k <= 2; ++k) {
            auto a = twosided::perturbation_coefficient(k, f, g);
            if (!twosided::regular_below(k, a)) return {"", false, "pole below 2^-k"};
        }
    }
    for (int k = 0; k <= 2; ++k)
        if (twosided::pole_order_check(k).order != k + 1) return {"", false, "pole order k = " + std::to_string(k)};
    return {"", true, "6 random pairs, k <= 2"};
}

}  // namespace

std::vector<CheckResult> run_checks() {
    std::vector<std::pair<std::string, std::function<CheckResult()>>> suite = {
        {"field axioms", field_axioms},
        {"cylinder additivity", cylinder_additivity},
        {"coding consistency", coding_consistency},
        {"eigen-equation and biorthogonality", eigen_equations},
        {"Bernoulli identification and Raabe identity", bernoulli_identification},
        {"weighted diagonal eigenvalues", weighted_eigenvalues},
        {"golden eigenvalue closure", golden_closure},
        {"adjointness", adjointness},
        {"Walsh orthonormality", walsh_orthonormality},
        {"approximate eigenfunction defect", approximate_eigenfunctions},
        {"resolvent consistency", resolvent_consistency},
        {"semiconjugacy", semiconjugacy},
        {"two-sided spectrum and Jordan structure", twosided_spectrum},
        {"A_k routes and regularity", ak_routes},
    };
    std::vector<CheckResult> out;
    for (auto& [name, fn] : suite) {
        CheckResult r;
        try {
            r = fn();
        } catch (const std::exception& e) {
            r = {"", false, e.what()};
        }
        r.name = name;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace pfspec::tools
