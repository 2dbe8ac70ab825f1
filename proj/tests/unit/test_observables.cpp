#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pfspec/errors.hpp"
#include "pfspec/observables/observables.hpp"

using namespace pfspec;
using namespace pfspec::observables;
using exact::phi;
using symdyn::preset;

namespace {

CylFun random_cylfun(const ShiftSystem& sys, std::mt19937_64& rng, int depth) {
    std::map<Word, Scalar> v;
    for (const Word& w : symdyn::admissible_words(sys, depth))
        if (rng() % 4 != 0) v.emplace(w, Scalar(oracle::random_rational(rng, 6)));
    return CylFun(depth, std::move(v));
}

}  // namespace

TEST(PfApply, PolyExamples) {
    auto s = preset("full2-uniform");
    PolyObservable h{SPoly({Scalar(0), Scalar(1)})};
    EXPECT_EQ(pf_apply(s, h).poly, SPoly({Scalar(1, 4), Scalar(1, 2)}));
    PolyObservable one{SPoly::constant(Scalar(1))};
    for (const char* name : {"full2-uniform", "fullbeta-uniform", "fullbeta-weighted"})
        EXPECT_EQ(pf_apply(preset(name), one).poly, one.poly);
}

TEST(PfApply, WeightedHFormula) {
    // V h = (sum p_i^2) h + sum_{i<j} p_i p_j
    auto s = preset("fullbeta-weighted");
    const auto& p = s.measure().probabilities;
    Scalar sq(0), cross(0);
    for (int i = 0; i < 3; ++i) {
        sq += p[i] * p[i];
        for (int j = i + 1; j < 3; ++j) cross += p[i] * p[j];
    }
    PolyObservable h{SPoly({Scalar(0), Scalar(1)})};
    EXPECT_EQ(pf_apply(s, h).poly, SPoly({cross, sq}));
}

TEST(PfApply, GoldenBlockColumnsAreQ0) {
    auto g = preset("golden-mean");
    Scalar i = phi().inverse();
    BlockObservable e0{SPoly::constant(Scalar(1)), SPoly()};
    BlockObservable e1{SPoly(), SPoly::constant(Scalar(1))};
    auto v0 = pf_apply(g, e0);
    auto v1 = pf_apply(g, e1);
    EXPECT_EQ(v0.q0, SPoly::constant(i));
    EXPECT_EQ(v0.q1, SPoly::constant(Scalar(1)));
    EXPECT_EQ(v1.q0, SPoly::constant(i * i));
    EXPECT_TRUE(v1.q1.is_zero());
    EXPECT_THROW(pf_apply(preset("full2-uniform"), e0), PreconditionError);
}

TEST(PfApply, NeverRaisesDegree) {
    std::mt19937_64 rng(3);
    for (const char* name : {"full2-uniform", "fullbeta-uniform", "fullbeta-weighted"}) {
        auto s = preset(name);
        for (int deg = 0; deg <= 8; ++deg) {
            std::vector<Scalar> c;
            for (int k = 0; k <= deg; ++k) c.push_back(oracle::random_rational(rng));
            c.back() = Scalar(1);
            EXPECT_LE(pf_apply(s, PolyObservable{SPoly(c)}).poly.degree(), deg);
        }
    }
}

TEST(PfApply, CylFunMatchesPolyOnCylinderAverages) {
    // V 1_{C[w]} evaluated pointwise by the cylinder formula, compared with the
    // weight sum done by hand for the golden-mean system.
    auto g = preset("golden-mean");
    CylFun f = CylFun::indicator({1, 0});
    CylFun v = pf_apply(g, f);
    // (V f)(w) = sum_i weight(i, w1) f(i w): only i = 1 with w1 = 0 contributes.
    Scalar w10 = g.initial(1) * g.transition(1, 0) / g.initial(0);
    EXPECT_EQ(v(Word{0}), w10);
    EXPECT_EQ(v(Word{1}), Scalar(0));
}

TEST(Koopman, WalshDoubling) {
    auto s = preset("full2-uniform");
    WalshSystem ws(s);
    EXPECT_TRUE(equal(s, koopman_apply(s, ws.function(1)), ws.function(2)));
    EXPECT_TRUE(equal(s, koopman_apply(s, ws.function(3)), ws.function(6)));
    EXPECT_TRUE(equal(s, koopman_apply(s, CylFun::constant(Scalar(1))), CylFun::constant(Scalar(1))));
    for (long n = 0; n < 40; ++n)
        EXPECT_TRUE(equal(s, koopman_apply(s, ws.function(n)), ws.function(walsh_koopman_rule(s, n))));
}

TEST(Adjointness, RandomCylFunsOnAllPresets) {
    std::mt19937_64 rng(17);
    for (const auto& name : symdyn::preset_names()) {
        auto s = preset(name);
        for (int trial = 0; trial < 12; ++trial) {
            int df = static_cast<int>(rng() % 6), dg = static_cast<int>(rng() % 6);
            CylFun f = random_cylfun(s, rng, df), g = random_cylfun(s, rng, dg);
            EXPECT_EQ(inner_product(s, pf_apply(s, f), g), inner_product(s, f, koopman_apply(s, g))) << name;
        }
    }
}

TEST(InnerProduct, Examples) {
    auto s = preset("full2-uniform");
    WalshSystem ws(s);
    EXPECT_EQ(inner_product(s, ws.function(2), ws.function(2)), Scalar(1));
    EXPECT_EQ(inner_product(s, ws.function(1), ws.function(2)), Scalar(0));
    PolyObservable h{SPoly({Scalar(0), Scalar(1)})}, one{SPoly::constant(Scalar(1))};
    EXPECT_EQ(inner_product(s, h, one), Scalar(1, 2));
}

TEST(InnerProduct, BlockMatchesCylinderRefinementForIndicators) {
    auto g = preset("golden-mean");
    BlockObservable c0{SPoly::constant(Scalar(1)), SPoly()};
    BlockObservable c1{SPoly(), SPoly::constant(Scalar(1))};
    EXPECT_EQ(inner_product(g, c0, c0), symdyn::cylinder_measure(g, Word{0}));
    EXPECT_EQ(inner_product(g, c1, c0), Scalar(0));
    EXPECT_EQ(integral(g, BlockObservable{SPoly::constant(Scalar(1)), SPoly::constant(Scalar(1))}), Scalar(1));
}

TEST(Walsh, OrthonormalOnUniformTwoShift) {
    auto s = preset("full2-uniform");
    WalshSystem ws(s);
    for (long n = 0; n <= 64; ++n)
        for (long m = 0; m <= 64; ++m)
            EXPECT_EQ(inner_product(s, ws.function(n), ws.function(m)), Scalar(n == m ? 1 : 0)) << n << "," << m;
}

TEST(Walsh, OrthogonalWithTrackedNormsOnBetaShifts) {
    for (const char* name : {"fullbeta-uniform", "fullbeta-weighted"}) {
        auto s = preset(name);
        WalshSystem ws(s);
        for (long n = 0; n <= 64; n += 1)
            for (long m = n; m <= 64; m += 3) {
                Scalar ip = inner_product(s, ws.function(n), ws.function(m));
                EXPECT_EQ(ip, n == m ? ws.norm2_of(n) : Scalar(0)) << name << " " << n << "," << m;
            }
        for (int t = 0; t < ws.beta(); ++t) EXPECT_TRUE(ws.norm2(t).is_rational());
    }
}

TEST(Walsh, PfRule) {
    auto s = preset("full2-uniform");
    EXPECT_EQ(walsh_pf_rule(s, 2), 1);
    EXPECT_EQ(walsh_pf_rule(s, 1), std::nullopt);
    EXPECT_EQ(walsh_pf_rule(s, 0), 0);
    // The rule agrees with the cylinder action, on every Bernoulli preset.
    for (const char* name : {"full2-uniform", "fullbeta-uniform", "fullbeta-weighted"}) {
        auto sys = preset(name);
        WalshSystem ws(sys);
        for (long n = 0; n <= 60; ++n) {
            CylFun v = pf_apply(sys, ws.function(n));
            auto r = walsh_pf_rule(sys, n);
            CylFun expected = r ? ws.function(*r) : CylFun::constant(Scalar(0));
            EXPECT_TRUE(equal(sys, v, expected)) << name << " " << n;
        }
    }
}

TEST(ApproxEigenfunction, Examples) {
    auto s = preset("full2-uniform");
    ComplexScalar minus1(Scalar(-1)), i = ComplexScalar::i();
    EXPECT_EQ(approx_eigenfunction_defect(s, minus1, 4), Scalar(1, 4));
    EXPECT_EQ(approx_eigenfunction_defect(s, minus1, 1), Scalar(1));
    EXPECT_EQ(approx_eigenfunction_defect(s, i, 5), Scalar(1, 5));
    EXPECT_THROW(approx_eigenfunction_defect(s, ComplexScalar(Scalar(1)), 3), PreconditionError);
    EXPECT_THROW(approx_eigenfunction_defect(s, ComplexScalar(Scalar(1, 2)), 3), PreconditionError);
}

TEST(ApproxEigenfunction, DefectTimesNIsOne) {
    auto s = preset("full2-uniform");
    // 3/5 + 4/5 i is also exactly on the unit circle.
    std::vector<ComplexScalar> zs{ComplexScalar(Scalar(-1)), ComplexScalar::i(), -ComplexScalar::i(),
                                  ComplexScalar(Scalar(3, 5), Scalar(4, 5))};
    for (const auto& z : zs)
        for (int n = 1; n <= 32; ++n) EXPECT_TRUE((approx_eigenfunction_defect(s, z, n) * Scalar(n)).is_one());
}

TEST(ApproxEigenfunction, CylinderCrossCheckForMinusOne) {
    // Build f_n sqrt(n) as an explicit cylinder function and apply the
    // cylinder Perron-Frobenius action instead of the Walsh rule.
    auto s = preset("full2-uniform");
    WalshSystem ws(s);
    for (int n = 1; n <= 7; ++n) {
        CylFun f = CylFun::constant(Scalar(0));
        Scalar zk(1);
        for (int k = 0; k < n; ++k, zk = -zk) f = add(s, f, ws.function(1L << k) * zk);
        CylFun g = subtract(s, f * Scalar(-1), pf_apply(s, f));
        EXPECT_EQ(inner_product(s, g, g) / Scalar(n), Scalar(1, n));
    }
}
