#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "check.hpp"
#include "pfspec/conjugacy/conjugacy.hpp"
#include "pfspec/errors.hpp"
#include "pfspec/io/config.hpp"
#include "pfspec/io/fspec.hpp"
#include "pfspec/io/json.hpp"
#include "pfspec/twosided/twosided.hpp"

using namespace pfspec;
using io::json;
using exact::Scalar;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kConfig = 2;
constexpr int kPrecondition = 3;
constexpr int kUnstable = 4;

struct Common {
    std::string system = "full2-uniform";
    std::string output;
    std::string format;
    int threads = 1;
    bool strict = false;
};

void emit(const Common& c, const std::string& text) {
    if (c.output.empty() || c.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(c.output);
    if (!out) throw ConfigError("cannot write " + c.output);
    out << text;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string format_or(const Common& c, const std::string& fallback) {
    std::string f = c.format.empty() ? fallback : c.format;
    if (f != "json" && f != "csv") throw ConfigError("format must be json or csv");
    return f;
}

json labels_json(const spectra::EigenSystem& es) {
    json a = json::array();
    for (const auto& l : es.labels) a.push_back(l.to_string());
    return a;
}

spectra::EigenSystem system_for(const Common& c, const spectra::Observable& f, int n) {
    auto sys = io::load_system(c.system);
    int deg = io::observable_degree(f);
    if (n < 0) n = deg;
    if (n < deg) throw PreconditionError("truncation degree " + std::to_string(n) + " is below the observable degree");
    return spectra::eigen_system(sys, n);
}

std::string fmt_double(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

/// "a:b:count" with exact endpoints.
std::vector<Scalar> parse_grid(const std::string& g) {
    auto c1 = g.find(':');
    auto c2 = g.find(':', c1 == std::string::npos ? 0 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) throw ConfigError("grid must be a:b:count");
    Scalar a = Scalar::parse(g.substr(0, c1)), b = Scalar::parse(g.substr(c1 + 1, c2 - c1 - 1));
    int n = 0;
    try {
        n = std::stoi(g.substr(c2 + 1));
    } catch (const std::exception&) {
        throw ConfigError("grid count must be an integer");
    }
    if (n < 1 || n > 100000) throw ConfigError("grid count must be in 1..100000");
    std::vector<Scalar> pts;
    for (int i = 0; i < n; ++i) pts.push_back(n == 1 ? a : a + (b - a) * Scalar(i, n - 1));
    return pts;
}

int cmd_spectrum(const Common& c, int n) {
    auto es = spectra::eigen_system(io::load_system(c.system), n);
    emit(c, dump({{"system", es.system.name()},
                  {"n", n},
                  {"labels", labels_json(es)},
                  {"eigenvalues", io::to_json(es.eigenvalues)}}));
    return kOk;
}

int cmd_eigenfunctions(const Common& c, int n) {
    emit(c, dump(io::to_json(spectra::eigen_system(io::load_system(c.system), n))));
    return kOk;
}

int cmd_decompose(const Common& c, const std::string& fspec, int n) {
    auto sys = io::load_system(c.system);
    auto f = io::parse_fspec(fspec, sys);
    auto es = system_for(c, f, n);
    auto d = spectra::decompose(es, f);
    json modes = json::array();
    for (const auto& m : d.modes)
        modes.push_back({{"label", es.labels[m.index].to_string()},
                         {"eigenvalue", io::to_json(m.eigenvalue)},
                         {"coefficient", io::to_json(m.coefficient)}});
    emit(c, dump({{"system", sys.name()}, {"f", fspec}, {"n", es.degree}, {"modes", modes}}));
    return kOk;
}

int cmd_iterate(const Common& c, const std::string& fspec, int k, int n) {
    if (k < 0) throw PreconditionError("k must be nonnegative");
    auto sys = io::load_system(c.system);
    auto f = io::parse_fspec(fspec, sys);
    auto es = system_for(c, f, n);
    auto vec = spectra::to_basis(es.basis, es.degree, f);
    auto d = spectra::decompose(es, vec);
    json traj = json::array();
    for (int t = 0; t <= k; ++t) {
        json row = json::array();
        for (const auto& m : d.modes) row.push_back(io::to_json(m.coefficient * m.eigenvalue.pow(t)));
        traj.push_back(row);
    }
    json labels = json::array(), eigs = json::array();
    for (const auto& m : d.modes) {
        labels.push_back(es.labels[m.index].to_string());
        eigs.push_back(io::to_json(m.eigenvalue));
    }
    auto rep = spectra::iterate_pf(es, vec, k);
    emit(c, dump({{"system", sys.name()},
                  {"f", fspec},
                  {"n", es.degree},
                  {"k", k},
                  {"labels", labels},
                  {"eigenvalues", eigs},
                  {"trajectory", traj},
                  {"limit", io::to_json(rep.limit)},
                  {"rate", rep.rate ? json(io::to_json(*rep.rate)) : json(nullptr)},
                  {"value", io::to_json(rep.value)},
                  {"residual", io::to_json(rep.residual)}}));
    return kOk;
}

int cmd_resolvent(const Common& c, const std::string& fspec, int n, const std::vector<std::string>& lambdas,
                  const std::string& grid, const std::string& csv_path) {
    auto sys = io::load_system(c.system);
    auto f = io::parse_fspec(fspec, sys);
    auto es = system_for(c, f, n);
    auto r = spectra::generalized_resolvent(es, spectra::to_basis(es.basis, es.degree, f));

    std::vector<Scalar> pts;
    for (const auto& l : lambdas) pts.push_back(Scalar::parse(l));
    if (!grid.empty()) {
        auto g = parse_grid(grid);
        pts.insert(pts.end(), g.begin(), g.end());
    }
    std::ostringstream csv;
    csv << "lambda,lambda_value,index,label,value,status\n";
    for (const auto& lam : pts) {
        if (const auto* p = r.pole_at(lam)) {
            csv << lam.to_string() << ',' << fmt_double(lam.to_double()) << ",,,,pole order " << p->order << '\n';
            continue;
        }
        auto v = r.eval(lam);
        for (std::size_t i = 0; i < v.size(); ++i)
            csv << lam.to_string() << ',' << fmt_double(lam.to_double()) << ',' << i << ','
                << spectra::basis_label(es.basis, i) << ',' << fmt_double(v[i].to_double()) << ",ok\n";
    }
    json out = io::to_json(r);
    json basis = json::array();
    for (std::size_t i = 0; i < r.dim; ++i) basis.push_back(spectra::basis_label(es.basis, i));
    json table = {{"system", sys.name()}, {"f", fspec}, {"n", es.degree}, {"basis", basis}, {"poles", out["poles"]}};
    if (!csv_path.empty()) write_file(csv_path, csv.str());
    emit(c, format_or(c, "json") == "csv" ? csv.str() : dump(table));
    return kOk;
}

int cmd_jordan(const Common& c, int k, const std::string& eps, int M, int N) {
    if (k < 0) throw PreconditionError("k must be nonnegative");
    if (M < 0) M = k + 4;
    if (N < 0) N = k + 4;
    auto op = twosided::build_operator(Scalar::parse(eps), M, N);
    auto rep = twosided::jordan_analysis(op, k);
    emit(c, dump(io::to_json(rep)));
    if (c.strict && !rep.stable) {
        std::cerr << "pfspec: Jordan structure changes when N grows to " << N + 2 << "\n";
        return kUnstable;
    }
    return kOk;
}

int cmd_ak_poles(const Common& c, int k) {
    auto res = twosided::pole_order_check(k);
    json j = io::to_json(res);
    j["regular_below"] = twosided::regular_below(k, res.ak);
    emit(c, dump(j));
    return kOk;
}

int cmd_operator(const Common& c, const std::string& eps, int M, int N) {
    emit(c, dump(io::to_json(twosided::build_operator(Scalar::parse(eps), M, N))));
    return kOk;
}

int cmd_simulate(const Common& c, const std::string& map, long samples, int bins, std::uint64_t seed, int iterations,
                 const std::string& summary_path) {
    auto rep = conjugacy::histogram_simulation(conjugacy::IntervalMap::parse(map), samples, bins, seed, iterations,
                                               c.threads);
    if (!summary_path.empty()) write_file(summary_path, dump(io::summary_json(rep)));
    emit(c, format_or(c, "csv") == "csv" ? conjugacy::histogram_csv(rep) : dump(io::summary_json(rep)));
    return kOk;
}

int cmd_check(const Common& c) {
    auto results = tools::run_checks();
    json list = json::array();
    bool ok = true;
    for (const auto& r : results) {
        list.push_back({{"name", r.name}, {"ok", r.ok}, {"detail", r.detail}});
        ok = ok && r.ok;
    }
    emit(c, dump({{"ok", ok}, {"checks", list}}));
    return ok ? kOk : kCheckFailed;
}

int run(const std::vector<std::string>& args, bool allow_config) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a != "--config" && a.rfind("--config=", 0) != 0) continue;
        if (!allow_config) throw ConfigError("run configs cannot be nested");
        std::string path = a == "--config" ? (i + 1 < args.size() ? args[i + 1] : "") : a.substr(9);
        if (args.size() != (a == "--config" ? 2u : 1u))
            throw ConfigError("--config cannot be combined with other arguments");
        return run(io::to_args(io::load_run_config(path)), false);
    }

    CLI::App app{"Exact spectral analysis of Perron-Frobenius operators on shift spaces", "pfspec"};
    app.require_subcommand(1);
    app.fallthrough();
    Common c;
    std::string config;
    if (allow_config)
        app.add_option("--config", config, "Run the command stored in a JSON run config (alone)");
    app.add_option("--system", c.system, "Preset name or path of a JSON system config")->capture_default_str();
    app.add_option("-o,--output", c.output, "Output file (default: stdout)");
    app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", c.threads, "Worker threads for simulation and checks")->check(CLI::PositiveNumber);
    app.add_flag("--strict", c.strict, "Treat truncation instability as failure (exit 4)");

    int n = -1, k = 0, M = -1, N = -1, bins = 20, iterations = 24;
    long samples = 1000000;
    std::uint64_t seed = 1;
    std::string fspec, eps = "1", grid, csv_path, map = "golden", summary_path;
    std::vector<std::string> lambdas;

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the degree-n representation");
    spectrum->add_option("--n", n, "Polynomial degree")->required()->check(CLI::NonNegativeNumber);
    auto* eigenf = app.add_subcommand("eigenfunctions", "Eigenvalues, eigenfunctions and dual functionals");
    eigenf->add_option("--n", n, "Polynomial degree")->required()->check(CLI::NonNegativeNumber);

    auto* decompose = app.add_subcommand("decompose", "Spectral decomposition of an observable");
    decompose->add_option("--f", fspec, "Observable")->required();
    decompose->add_option("--n", n, "Degree (default: degree of f)");

    auto* resolvent = app.add_subcommand("resolvent", "Generalized resolvent: exact pole table and grid values");
    resolvent->add_option("--f", fspec, "Observable")->required();
    resolvent->add_option("--n", n, "Degree (default: degree of f)");
    resolvent->add_option("--lambda", lambdas, "Exact evaluation point (repeatable)");
    resolvent->add_option("--grid", grid, "Evaluation grid a:b:count with exact endpoints");
    resolvent->add_option("--csv", csv_path, "Also write the grid CSV here");

    auto* iterate = app.add_subcommand("iterate", "Coefficient trajectory of V^t f, t = 0..k");
    iterate->add_option("--f", fspec, "Observable")->required();
    iterate->add_option("--k", k, "Number of iterations")->required();
    iterate->add_option("--n", n, "Degree (default: degree of f)");

    auto* twosided = app.add_subcommand("twosided", "Two-sided full 2-shift operator V(eps) = Q0 + eps Q1");
    twosided->require_subcommand(1);
    twosided->fallthrough();
    auto* jordan = twosided->add_subcommand("jordan", "Jordan structure at eigenvalue 2^-k");
    jordan->add_option("--k", k, "Eigenvalue exponent")->required();
    jordan->add_option("--eps", eps, "Perturbation parameter (exact)")->capture_default_str();
    jordan->add_option("--M", M, "Phi truncation (default k+4)");
    jordan->add_option("--N", N, "Psi truncation (default k+4)");
    auto* ak = twosided->add_subcommand("ak-poles", "Pole order of A_k at 2^-k");
    ak->add_option("--k", k, "Order of the perturbation coefficient")->required()->check(CLI::NonNegativeNumber);
    auto* oper = twosided->add_subcommand("operator", "Sparse truncated operator matrix");
    oper->add_option("--eps", eps, "Perturbation parameter (exact)")->capture_default_str();
    oper->add_option("--M", M, "Phi truncation")->required()->check(CLI::NonNegativeNumber);
    oper->add_option("--N", N, "Psi truncation")->required()->check(CLI::NonNegativeNumber);

    auto* simulate = app.add_subcommand("simulate", "Histogram of iterated interval-map orbits");
    simulate->add_option("--map", map, "renyiB or golden")->capture_default_str();
    simulate->add_option("--samples", samples, "Number of orbits (>= 10000)")->capture_default_str();
    simulate->add_option("--bins", bins, "Number of bins")->capture_default_str();
    simulate->add_option("--seed", seed, "PRNG seed")->capture_default_str();
    simulate->add_option("--iterations", iterations, "Burn-in iterations per orbit")->capture_default_str();
    simulate->add_option("--summary", summary_path, "Also write the JSON summary here");

    auto* check = app.add_subcommand("check", "Run the invariant suite");

    // A run config may carry a seed for any command; only simulate consumes it.
    for (auto* sub : {spectrum, eigenf, decompose, resolvent, iterate, check})
        sub->add_option("--seed", seed, "Ignored by this command");
    for (auto* sub : {jordan, ak, oper}) sub->add_option("--seed", seed, "Ignored by this command");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    if (spectrum->parsed()) return cmd_spectrum(c, n);
    if (eigenf->parsed()) return cmd_eigenfunctions(c, n);
    if (decompose->parsed()) return cmd_decompose(c, fspec, n);
    if (resolvent->parsed()) return cmd_resolvent(c, fspec, n, lambdas, grid, csv_path);
    if (iterate->parsed()) return cmd_iterate(c, fspec, k, n);
    if (jordan->parsed()) return cmd_jordan(c, k, eps, M, N);
    if (ak->parsed()) return cmd_ak_poles(c, k);
    if (oper->parsed()) return cmd_operator(c, eps, M, N);
    if (simulate->parsed()) return cmd_simulate(c, map, samples, bins, seed, iterations, summary_path);
    if (check->parsed()) return cmd_check(c);
    return kConfig;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return run(args, true);
    } catch (const ConfigError& e) {
        std::cerr << "pfspec: config error: " << e.what() << "\n";
        return kConfig;
    } catch (const Error& e) {
        std::cerr << "pfspec: " << e.what() << "\n";
        return kPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "pfspec: " << e.what() << "\n";
        return kPrecondition;
    }
}
