#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "pfspec/errors.hpp"
#include "pfspec/io/config.hpp"
#include "pfspec/io/fspec.hpp"
#include "pfspec/io/json.hpp"

using namespace pfspec;
using namespace pfspec::io;
using exact::phi;
using symdyn::preset;

namespace {

// Emit, re-parse from text, emit again: the two texts must agree byte for byte.
template <class T, class Parse>
T round_trip(const T& value, Parse parse) {
    std::string text = to_json(value).dump();
    T back = parse(json::parse(text));
    EXPECT_EQ(to_json(back).dump(), text);
    return back;
}

}  // namespace

TEST(Json, Scalars) {
    EXPECT_EQ(to_json(Scalar(1)), "1/1");
    EXPECT_EQ(to_json(Scalar(-3, 6)), "-1/2");
    for (const Scalar& s : {Scalar(7, 3), phi(), phi().inverse().pow(5) * Scalar(-2, 9), Scalar(0)}) {
        Scalar back = scalar_from_json(to_json(s));
        EXPECT_EQ(back, s);
        EXPECT_EQ(back.to_string(), s.to_string());
    }
    EXPECT_THROW(scalar_from_json(json(0.5)), ConfigError);
    EXPECT_THROW(scalar_from_json(json("1/0")), ConfigError);
}

TEST(Json, Observables) {
    observables::PolyObservable p{SPoly({Scalar(1, 2), Scalar(0), phi()})};
    EXPECT_EQ(round_trip(p, poly_observable_from_json), p);
    observables::BlockObservable b{SPoly({Scalar(1)}), SPoly({Scalar(0), Scalar(-1, 3)})};
    EXPECT_EQ(round_trip(b, block_observable_from_json), b);
    observables::CylFun c(2, {{{0, 1}, Scalar(1, 2)}, {{1, 1}, Scalar(-4)}});
    auto back = round_trip(c, cylfun_from_json);
    EXPECT_TRUE(observables::equal(preset("full2-uniform"), back, c));
    EXPECT_THROW(cylfun_from_json(json::parse(R"({"depth":1,"values":{},"x":1})")), ConfigError);
}

TEST(Json, SystemsRoundTripAndValidate) {
    for (const auto& name : symdyn::preset_names()) {
        auto sys = preset(name);
        auto back = round_trip(sys, system_from_json);
        EXPECT_EQ(back.beta(), sys.beta());
        EXPECT_EQ(back.is_golden_mean(), sys.is_golden_mean());
    }
    auto bad = to_json(preset("full2-uniform"));
    bad["colour"] = "red";
    EXPECT_THROW(system_from_json(bad), ConfigError);
    auto bad_measure = to_json(preset("full2-uniform"));
    bad_measure["measure"]["probabilities"] = json::array({"1/2", "1/3"});
    EXPECT_THROW(system_from_json(bad_measure), ConfigError);
    auto bad_extra = to_json(preset("full2-uniform"));
    bad_extra["measure"]["stationary"] = json::array({"1/2", "1/2"});
    EXPECT_THROW(system_from_json(bad_extra), ConfigError);
}

TEST(Json, LoadSystemFromFile) {
    auto path = std::filesystem::temp_directory_path() / "pfspec_io_system.json";
    {
        std::ofstream out(path);
        out << R"({"beta": 2, "adjacency": [[1,1],[1,1]],
                   "measure": {"kind": "bernoulli", "probabilities": ["1/3", "2/3"]}})";
    }
    auto sys = load_system(path.string());
    EXPECT_EQ(sys.measure().probabilities[1], Scalar(2, 3));
    EXPECT_EQ(load_system("golden-mean").name(), "golden-mean");
    EXPECT_THROW(load_system("no-such-preset"), ConfigError);
    std::filesystem::remove(path);
}

TEST(Json, EigenSystem) {
    for (const char* name : {"full2-uniform", "fullbeta-weighted", "golden-mean"}) {
        auto es = spectra::eigen_system(preset(name), 5);
        auto back = round_trip(es, eigen_system_from_json);
        EXPECT_EQ(back.eigenvalues, es.eigenvalues);
        EXPECT_EQ(back.M, es.M);
        EXPECT_EQ(back.Minv, es.Minv);
        EXPECT_EQ(back.A, es.A) << name;
    }
    auto j = to_json(spectra::eigen_system(preset("full2-uniform"), 4));
    EXPECT_EQ(j["eigenvalues"], json::parse(R"(["1/1","1/2","1/4","1/8","1/16"])"));
}

TEST(Json, Resolvent) {
    auto es = spectra::eigen_system(preset("golden-mean"), 3);
    auto f = spectra::to_basis(es.basis, es.degree, observables::BlockObservable{SPoly({Scalar(0), Scalar(1)}),
                                                                                SPoly({Scalar(2)})});
    auto r = spectra::generalized_resolvent(es, f);
    auto back = round_trip(r, resolvent_from_json);
    EXPECT_EQ(back.eval(Scalar(3)), r.eval(Scalar(3)));
}

TEST(Json, TwoSided) {
    auto op = twosided::build_operator(Scalar(1, 2), 3, 4);
    auto back = round_trip(op, operator_from_json);
    EXPECT_EQ(back.matrix, op.matrix);
    EXPECT_EQ(back.epsilon, op.epsilon);

    auto rep = twosided::jordan_analysis(twosided::build_operator(Scalar(1), 6, 6), 2);
    auto rb = round_trip(rep, jordan_from_json);
    EXPECT_EQ(rb.blocks, rep.blocks);
    EXPECT_EQ(rb.stable, rep.stable);
    EXPECT_EQ(to_json(rep)["truncation"], json::parse(R"({"M":6,"N":6})"));

    auto po = twosided::pole_order_check(1);
    auto pb = round_trip(po, pole_order_from_json);
    EXPECT_EQ(pb.ak, po.ak);
    EXPECT_EQ(pb.f, po.f);
}

TEST(RunConfig, RoundTripAndArgs) {
    auto j = json::parse(R"({"system":"golden-mean","command":"twosided jordan",
                             "params":{"k":2,"eps":"1","strict":true},"format":"json","seed":5})");
    auto c = run_config_from_json(j);
    EXPECT_EQ(to_json(run_config_from_json(to_json(c))).dump(), to_json(c).dump());
    std::vector<std::string> want{"twosided", "jordan", "--system", "golden-mean", "--eps", "1", "--k", "2",
                                  "--strict", "--format", "json", "--seed", "5"};
    EXPECT_EQ(to_args(c), want);
}

TEST(RunConfig, RejectsUnknownFields) {
    EXPECT_THROW(run_config_from_json(json::parse(R"({"command":"spectrum","sytem":"x"})")), ConfigError);
    EXPECT_THROW(run_config_from_json(json::parse(R"({"command":"spectra"})")), ConfigError);
    EXPECT_THROW(run_config_from_json(json::parse(R"({"command":"spectrum","format":"xml"})")), ConfigError);
    EXPECT_THROW(run_config_from_json(json::parse(R"({"command":"spectrum","params":{"n":1.5}})")), ConfigError);
}

TEST(FSpec, Atoms) {
    auto full2 = preset("full2-uniform");
    auto golden = preset("golden-mean");
    using observables::BlockObservable;
    using observables::PolyObservable;
    EXPECT_EQ(std::get<PolyObservable>(parse_fspec("h", full2)).poly, SPoly({Scalar(0), Scalar(1)}));
    EXPECT_EQ(std::get<PolyObservable>(parse_fspec("h^3", full2)).poly, SPoly::monomial(3));
    EXPECT_EQ(std::get<PolyObservable>(parse_fspec("-1/2*h", full2)).poly, SPoly({Scalar(0), Scalar(-1, 2)}));
    EXPECT_EQ(std::get<PolyObservable>(parse_fspec("poly:1/3,0,2", full2)).poly, SPoly({Scalar(1, 3), Scalar(0), Scalar(2)}));
    EXPECT_EQ(std::get<PolyObservable>(parse_fspec("Phi_2", full2)).poly, spectra::bernoulli_poly(2));
    auto b = std::get<BlockObservable>(parse_fspec("h", golden));
    EXPECT_EQ(b.q0, b.q1);
    auto blk = std::get<BlockObservable>(parse_fspec("block:1|0,1", golden));
    EXPECT_EQ(blk.q1, SPoly::monomial(1));
    EXPECT_EQ(std::get<BlockObservable>(parse_fspec("Phi_0+", golden)), (BlockObservable{SPoly({Scalar(1)}), SPoly({Scalar(1)})}));
    EXPECT_EQ(observable_degree(parse_fspec("h^4", full2)), 4);
}

TEST(FSpec, Malformed) {
    auto full2 = preset("full2-uniform");
    auto golden = preset("golden-mean");
    for (const char* bad : {"", "x", "h^", "h^a", "poly:", "poly:1,,2", "Phi_", "Phi_1+", "block:1|2", "2*"})
        EXPECT_THROW(parse_fspec(bad, full2), ConfigError) << bad;
    EXPECT_THROW(parse_fspec("Phi_1", golden), ConfigError);
    EXPECT_THROW(parse_fspec("block:1", golden), ConfigError);
}
