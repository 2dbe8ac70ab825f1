#include "pfspec/io/fspec.hpp"

#include <algorithm>
#include <sstream>

#include "pfspec/errors.hpp"

namespace pfspec::io {

namespace {

using exact::Scalar;
using exact::SPoly;

int parse_index(const std::string& s, const std::string& text) {
    if (s.empty() || s.size() > 4 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ConfigError("malformed observable '" + text + "'");
    return std::stoi(s);
}

SPoly parse_coeffs(const std::string& list, const std::string& text) {
    std::vector<Scalar> c;
    std::stringstream ss(list);
    for (std::string tok; std::getline(ss, tok, ',');) {
        if (tok.empty()) throw ConfigError("empty coefficient in '" + text + "'");
        c.push_back(Scalar::parse(tok));
    }
    if (c.empty()) throw ConfigError("no coefficients in '" + text + "'");
    return SPoly(std::move(c));
}

spectra::Observable lift(const symdyn::ShiftSystem& sys, const SPoly& p) {
    if (sys.is_golden_mean()) return observables::BlockObservable{p, p};
    return observables::PolyObservable{p};
}

spectra::Observable scale(spectra::Observable f, const Scalar& c) {
    if (auto* p = std::get_if<observables::PolyObservable>(&f)) {
        p->poly = p->poly * c;
    } else {
        auto& b = std::get<observables::BlockObservable>(f);
        b.q0 = b.q0 * c;
        b.q1 = b.q1 * c;
    }
    return f;
}

spectra::Observable parse_atom(const std::string& a, const std::string& text, const symdyn::ShiftSystem& sys) {
    if (a == "1") return lift(sys, SPoly::constant(Scalar(1)));
    if (a == "h") return lift(sys, SPoly::monomial(1));
    if (a.rfind("h^", 0) == 0) return lift(sys, SPoly::monomial(parse_index(a.substr(2), text)));
    if (a.rfind("poly:", 0) == 0) return lift(sys, parse_coeffs(a.substr(5), text));
    if (a.rfind("block:", 0) == 0) {
        if (!sys.is_golden_mean()) throw ConfigError("block observables need the golden-mean system");
        std::string body = a.substr(6);
        auto bar = body.find('|');
        if (bar == std::string::npos) throw ConfigError("block observable needs '|' in '" + text + "'");
        return observables::BlockObservable{parse_coeffs(body.substr(0, bar), text),
                                            parse_coeffs(body.substr(bar + 1), text)};
    }
    if (a.rfind("Phi_", 0) == 0) {
        std::string rest = a.substr(4);
        int branch = 0;
        if (!rest.empty() && (rest.back() == '+' || rest.back() == '-')) {
            branch = rest.back() == '+' ? 1 : -1;
            rest.pop_back();
        }
        int n = parse_index(rest, text);
        if (sys.is_golden_mean() && branch == 0) throw ConfigError("golden-mean eigenfunctions need a sign: Phi_n+ or Phi_n-");
        if (!sys.is_golden_mean() && branch != 0) throw ConfigError("signed eigenfunctions exist only on the golden-mean system");
        auto es = spectra::eigen_system(sys, n);
        auto idx = es.find(spectra::ModeLabel{n, branch});
        if (!idx) throw ConfigError("no eigenfunction " + a);
        return es.eigenfunction(*idx);
    }
    throw ConfigError("malformed observable '" + text + "'");
}

}  // namespace

spectra::Observable parse_fspec(const std::string& text, const symdyn::ShiftSystem& sys) {
    auto star = text.find('*');
    if (star == std::string::npos) return parse_atom(text, text, sys);
    Scalar c = Scalar::parse(text.substr(0, star));
    return scale(parse_atom(text.substr(star + 1), text, sys), c);
}

int observable_degree(const spectra::Observable& f) {
    int d = std::visit(
        [](const auto& o) {
            if constexpr (std::is_same_v<std::decay_t<decltype(o)>, observables::PolyObservable>)
                return o.poly.degree();
            else
                return o.degree();
        },
        f);
    return std::max(d, 0);
}

}  // namespace pfspec::io
