#include "pfspec/io/json.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "pfspec/errors.hpp"

namespace pfspec::io {

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(where + ": missing field '" + key + "'");
    return *it;
}

int int_field(const json& j, const char* key, const std::string& where) {
    const json& v = field(j, key, where);
    if (!v.is_number_integer()) throw ConfigError(where + ": field '" + std::string(key) + "' must be an integer");
    return v.get<int>();
}

std::string word_key(const symdyn::Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s;
}

symdyn::Word parse_word(const std::string& s) {
    symdyn::Word w;
    if (s.empty()) return w;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw ConfigError("malformed word '" + s + "'");
        w.push_back(std::stoi(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return w;
}

std::string basis_name(spectra::Basis b) { return b == spectra::Basis::Monomial ? "monomial" : "block"; }

spectra::Basis parse_basis(const std::string& s) {
    if (s == "monomial") return spectra::Basis::Monomial;
    if (s == "block") return spectra::Basis::Block;
    throw ConfigError("unknown basis '" + s + "'");
}

spectra::ModeLabel parse_label(const std::string& s) {
    spectra::ModeLabel l;
    std::size_t comma = s.find(',');
    std::string n = s.substr(0, comma);
    if (n.empty() || !std::all_of(n.begin(), n.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ConfigError("malformed mode label '" + s + "'");
    l.n = std::stoi(n);
    if (comma != std::string::npos) {
        std::string b = s.substr(comma + 1);
        if (b == "+")
            l.branch = 1;
        else if (b == "-")
            l.branch = -1;
        else
            throw ConfigError("malformed mode label '" + s + "'");
    }
    return l;
}

}  // namespace

void require_keys(const json& j, const std::vector<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw ConfigError(where + ": unknown field '" + it.key() + "'");
}

json to_json(const Scalar& s) { return s.to_string(); }

Scalar scalar_from_json(const json& j) {
    if (!j.is_string()) throw ConfigError("scalars must be strings, got " + j.dump());
    return Scalar::parse(j.get<std::string>());
}

json to_json(const std::vector<Scalar>& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back(to_json(s));
    return a;
}

std::vector<Scalar> scalars_from_json(const json& j) {
    if (!j.is_array()) throw ConfigError("expected an array of scalars");
    std::vector<Scalar> v;
    for (const auto& e : j) v.push_back(scalar_from_json(e));
    return v;
}

json to_json(const SPoly& p) { return to_json(p.coeffs()); }
SPoly poly_from_json(const json& j) { return SPoly(scalars_from_json(j)); }

json to_json(const observables::PolyObservable& f) { return to_json(f.poly); }
observables::PolyObservable poly_observable_from_json(const json& j) { return {poly_from_json(j)}; }

json to_json(const observables::BlockObservable& f) { return json::array({to_json(f.q0), to_json(f.q1)}); }

observables::BlockObservable block_observable_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ConfigError("block observable must be two coefficient arrays");
    return {poly_from_json(j[0]), poly_from_json(j[1])};
}

json to_json(const observables::CylFun& f) {
    json values = json::object();
    for (const auto& [w, v] : f.values()) values[word_key(w)] = to_json(v);
    return json{{"depth", f.depth()}, {"values", values}};
}

observables::CylFun cylfun_from_json(const json& j) {
    require_keys(j, {"depth", "values"}, "cylinder function");
    const json& values = field(j, "values", "cylinder function");
    if (!values.is_object()) throw ConfigError("cylinder function: values must be an object");
    std::map<symdyn::Word, Scalar> v;
    for (auto it = values.begin(); it != values.end(); ++it) v.emplace(parse_word(it.key()), scalar_from_json(it.value()));
    return observables::CylFun(int_field(j, "depth", "cylinder function"), std::move(v));
}

json to_json(const symdyn::ShiftSystem& sys) {
    json measure;
    const auto& m = sys.measure();
    if (m.kind == symdyn::MeasureKind::Bernoulli) {
        measure = {{"kind", "bernoulli"}, {"probabilities", to_json(m.probabilities)}};
    } else {
        json rows = json::array();
        for (const auto& r : m.transition) rows.push_back(to_json(r));
        measure = {{"kind", "markov"}, {"transition", rows}, {"stationary", to_json(m.stationary)}};
    }
    return json{{"name", sys.name()},
                {"beta", sys.beta()},
                {"adjacency", sys.adjacency()},
                {"measure", measure},
                {"sidedness", sys.sidedness() == symdyn::Sidedness::OneSided ? "one-sided" : "two-sided"}};
}

symdyn::ShiftSystem system_from_json(const json& j) {
    const std::string where = "system config";
    require_keys(j, {"name", "beta", "adjacency", "measure", "sidedness"}, where);
    std::string name = j.contains("name") ? j["name"].get<std::string>() : "custom";
    int beta = int_field(j, "beta", where);
    const json& adj = field(j, "adjacency", where);
    std::vector<std::vector<int>> adjacency;
    if (!adj.is_array()) throw ConfigError(where + ": adjacency must be an array of arrays");
    for (const auto& row : adj) {
        if (!row.is_array()) throw ConfigError(where + ": adjacency must be an array of arrays");
        std::vector<int> r;
        for (const auto& e : row) {
            if (!e.is_number_integer() || (e.get<int>() != 0 && e.get<int>() != 1))
                throw ConfigError(where + ": adjacency entries must be 0 or 1");
            r.push_back(e.get<int>());
        }
        adjacency.push_back(std::move(r));
    }
    const json& mj = field(j, "measure", where);
    require_keys(mj, {"kind", "probabilities", "transition", "stationary"}, where + " measure");
    std::string kind = field(mj, "kind", where).get<std::string>();
    symdyn::MeasureSpec measure;
    if (kind == "bernoulli") {
        if (mj.contains("transition") || mj.contains("stationary"))
            throw ConfigError(where + ": bernoulli measure takes only 'probabilities'");
        measure = symdyn::MeasureSpec::bernoulli(scalars_from_json(field(mj, "probabilities", where)));
    } else if (kind == "markov") {
        if (mj.contains("probabilities")) throw ConfigError(where + ": markov measure takes 'transition' and 'stationary'");
        std::vector<std::vector<Scalar>> p;
        const json& t = field(mj, "transition", where);
        if (!t.is_array()) throw ConfigError(where + ": transition must be an array of arrays");
        for (const auto& row : t) p.push_back(scalars_from_json(row));
        measure = symdyn::MeasureSpec::markov(std::move(p), scalars_from_json(field(mj, "stationary", where)));
    } else {
        throw ConfigError(where + ": unknown measure kind '" + kind + "'");
    }
    auto side = symdyn::Sidedness::OneSided;
    if (j.contains("sidedness")) {
        std::string s = j["sidedness"].get<std::string>();
        if (s == "two-sided")
            side = symdyn::Sidedness::TwoSided;
        else if (s != "one-sided")
            throw ConfigError(where + ": sidedness must be 'one-sided' or 'two-sided'");
    }
    return symdyn::ShiftSystem(name, beta, std::move(adjacency), std::move(measure), side);
}

symdyn::ShiftSystem load_system(const std::string& preset_or_path) {
    auto names = symdyn::preset_names();
    if (std::find(names.begin(), names.end(), preset_or_path) != names.end()) return symdyn::preset(preset_or_path);
    if (!std::filesystem::is_regular_file(preset_or_path))
        throw ConfigError("'" + preset_or_path + "' is neither a preset nor a readable config file");
    std::ifstream in(preset_or_path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("cannot parse " + preset_or_path + ": " + e.what());
    }
    return system_from_json(j);
}

json to_json(const spectra::EigenSystem& es) {
    json labels = json::array(), polys = json::array(), duals = json::array();
    for (std::size_t i = 0; i < es.size(); ++i) {
        labels.push_back(es.labels[i].to_string());
        polys.push_back(to_json(es.eigenvector(i)));
        duals.push_back(to_json(es.dual(i)));
    }
    return json{{"system", to_json(es.system)},
                {"basis", basis_name(es.basis)},
                {"degree", es.degree},
                {"labels", labels},
                {"eigenvalues", to_json(es.eigenvalues)},
                {"eigenpolys", polys},
                {"duals", duals}};
}

spectra::EigenSystem eigen_system_from_json(const json& j) {
    const std::string where = "eigen system";
    require_keys(j, {"system", "basis", "degree", "labels", "eigenvalues", "eigenpolys", "duals"}, where);
    spectra::EigenSystem es{system_from_json(field(j, "system", where))};
    es.basis = parse_basis(field(j, "basis", where).get<std::string>());
    es.degree = int_field(j, "degree", where);
    es.eigenvalues = scalars_from_json(field(j, "eigenvalues", where));
    for (const auto& l : field(j, "labels", where)) es.labels.push_back(parse_label(l.get<std::string>()));
    std::size_t n = es.eigenvalues.size();
    if (es.labels.size() != n || spectra::basis_size(es.basis, es.degree) != n)
        throw ConfigError(where + ": sizes do not match the basis");
    const json& polys = field(j, "eigenpolys", where);
    const json& duals = field(j, "duals", where);
    if (polys.size() != n || duals.size() != n) throw ConfigError(where + ": sizes do not match the basis");
    es.M = SMatrix(n, n);
    es.Minv = SMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto col = scalars_from_json(polys[i]);
        auto row = scalars_from_json(duals[i]);
        if (col.size() != n || row.size() != n) throw ConfigError(where + ": vector length mismatch");
        for (std::size_t r = 0; r < n; ++r) {
            es.M(r, i) = col[r];
            es.Minv(i, r) = row[r];
        }
    }
    SMatrix D(n, n);
    for (std::size_t i = 0; i < n; ++i) D(i, i) = es.eigenvalues[i];
    es.A = es.M * D * es.Minv;
    return es;
}

json to_json(const spectra::VectorResolvent& r) {
    json poles = json::array();
    for (const auto& p : r.poles)
        poles.push_back({{"location", to_json(p.location)}, {"order", p.order}, {"residue", to_json(p.residue)}});
    return json{{"dim", r.dim}, {"poles", poles}};
}

spectra::VectorResolvent resolvent_from_json(const json& j) {
    require_keys(j, {"dim", "poles"}, "resolvent");
    spectra::VectorResolvent r;
    r.dim = static_cast<std::size_t>(int_field(j, "dim", "resolvent"));
    for (const auto& p : field(j, "poles", "resolvent")) {
        require_keys(p, {"location", "order", "residue"}, "resolvent pole");
        r.poles.push_back({scalar_from_json(field(p, "location", "resolvent pole")), int_field(p, "order", "resolvent pole"),
                           scalars_from_json(field(p, "residue", "resolvent pole"))});
        if (r.poles.back().residue.size() != r.dim) throw ConfigError("resolvent pole: residue length mismatch");
    }
    return r;
}

json to_json(const exact::RationalFunction& r) {
    json poles = json::array();
    for (const auto& p : r.poles()) poles.push_back({{"location", to_json(p.location)}, {"order", p.order}});
    return json{{"numerator", to_json(r.numerator())}, {"poles", poles}};
}

exact::RationalFunction ratfun_from_json(const json& j) {
    require_keys(j, {"numerator", "poles"}, "rational function");
    std::vector<exact::Pole> poles;
    for (const auto& p : field(j, "poles", "rational function")) {
        require_keys(p, {"location", "order"}, "pole");
        poles.push_back({scalar_from_json(field(p, "location", "pole")), int_field(p, "order", "pole")});
    }
    return exact::RationalFunction(poly_from_json(field(j, "numerator", "rational function")), std::move(poles));
}

json to_json(const twosided::TensorCoeffs& c) {
    json coeffs = json::array();
    for (const auto& [idx, v] : c.support()) coeffs.push_back({{"i", idx.i}, {"j", idx.j}, {"value", to_json(v)}});
    return json{{"M", c.M()}, {"N", c.N()}, {"coeffs", coeffs}};
}

twosided::TensorCoeffs tensor_from_json(const json& j) {
    require_keys(j, {"M", "N", "coeffs"}, "tensor coefficients");
    twosided::TensorCoeffs c(int_field(j, "M", "tensor coefficients"), int_field(j, "N", "tensor coefficients"));
    for (const auto& e : field(j, "coeffs", "tensor coefficients")) {
        require_keys(e, {"i", "j", "value"}, "tensor coefficient");
        c.set(int_field(e, "i", "tensor coefficient"), int_field(e, "j", "tensor coefficient"),
              scalar_from_json(field(e, "value", "tensor coefficient")));
    }
    return c;
}

json to_json(const twosided::TwoSidedOperator& op) {
    json entries = json::array();
    for (const auto& e : op.entries())
        entries.push_back(
            {{"i", e.row.i}, {"j", e.row.j}, {"m", e.col.i}, {"n", e.col.j}, {"value", to_json(e.value)}});
    return json{{"epsilon", to_json(op.epsilon)}, {"M", op.M}, {"N", op.N}, {"entries", entries}};
}

twosided::TwoSidedOperator operator_from_json(const json& j) {
    const std::string where = "operator";
    require_keys(j, {"epsilon", "M", "N", "entries"}, where);
    twosided::TwoSidedOperator op;
    op.epsilon = scalar_from_json(field(j, "epsilon", where));
    op.M = int_field(j, "M", where);
    op.N = int_field(j, "N", where);
    if (op.M < 0 || op.N < 0) throw ConfigError(where + ": negative truncation");
    op.matrix = SMatrix(op.dim(), op.dim());
    for (const auto& e : field(j, "entries", where)) {
        require_keys(e, {"i", "j", "m", "n", "value"}, "operator entry");
        int i = int_field(e, "i", where), jj = int_field(e, "j", where);
        int m = int_field(e, "m", where), n = int_field(e, "n", where);
        if (i < 0 || i > op.M || m < 0 || m > op.M || jj < 0 || jj > op.N || n < 0 || n > op.N)
            throw ConfigError(where + ": entry outside the truncation");
        op.matrix(op.index(i, jj), op.index(m, n)) = scalar_from_json(field(e, "value", where));
    }
    return op;
}

json to_json(const twosided::JordanReport& r) {
    return json{{"k", r.k},
                {"eigenvalue", to_json(r.eigenvalue)},
                {"algebraic", r.algebraic},
                {"geometric", r.geometric},
                {"blocks", r.blocks},
                {"truncation", {{"M", r.M}, {"N", r.N}}},
                {"stable", r.stable},
                {"ranks", r.ranks}};
}

twosided::JordanReport jordan_from_json(const json& j) {
    const std::string where = "jordan report";
    require_keys(j, {"k", "eigenvalue", "algebraic", "geometric", "blocks", "truncation", "stable", "ranks"}, where);
    twosided::JordanReport r;
    r.k = int_field(j, "k", where);
    r.eigenvalue = scalar_from_json(field(j, "eigenvalue", where));
    r.algebraic = int_field(j, "algebraic", where);
    r.geometric = int_field(j, "geometric", where);
    r.blocks = field(j, "blocks", where).get<std::vector<int>>();
    const json& t = field(j, "truncation", where);
    require_keys(t, {"M", "N"}, where + " truncation");
    r.M = int_field(t, "M", where);
    r.N = int_field(t, "N", where);
    r.stable = field(j, "stable", where).get<bool>();
    if (j.contains("ranks")) r.ranks = j["ranks"].get<std::vector<int>>();
    return r;
}

json to_json(const twosided::PoleOrderResult& r) {
    return json{{"k", r.k}, {"order", r.order}, {"f", to_json(r.f)}, {"g", to_json(r.g)}, {"ak", to_json(r.ak)}};
}

twosided::PoleOrderResult pole_order_from_json(const json& j) {
    const std::string where = "pole order result";
    require_keys(j, {"k", "order", "f", "g", "ak"}, where);
    return {int_field(j, "k", where), int_field(j, "order", where), tensor_from_json(field(j, "f", where)),
            tensor_from_json(field(j, "g", where)), ratfun_from_json(field(j, "ak", where))};
}

json to_json(const conjugacy::SemiconjugacyReport& r) {
    json failures = json::array();
    for (const auto& w : r.failures) failures.push_back(word_key(w));
    return json{{"depth", r.depth}, {"words_checked", r.words_checked}, {"ok", r.ok()}, {"failures", failures}};
}

json summary_json(const conjugacy::HistogramReport& r) {
    return json{{"map", r.map},
                {"samples", r.samples},
                {"bins", r.bins},
                {"seed", r.seed},
                {"iterations", r.iterations},
                {"sup_rel_error", r.sup_rel_error}};
}

}  // namespace pfspec::io
