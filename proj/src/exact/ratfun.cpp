#include "pfspec/exact/ratfun.hpp"

#include <algorithm>

#include "pfspec/errors.hpp"

namespace pfspec::exact {

namespace {

void sort_poles(std::vector<Pole>& poles) {
    std::sort(poles.begin(), poles.end(),
              [](const Pole& a, const Pole& b) { return compare(a.location, b.location) > 0; });
}

std::vector<Pole> merged_max(const std::vector<Pole>& a, const std::vector<Pole>& b) {
    std::vector<Pole> out = a;
    for (const Pole& p : b) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const Pole& q) { return q.location == p.location; });
        if (it == out.end())
            out.push_back(p);
        else
            it->order = std::max(it->order, p.order);
    }
    sort_poles(out);
    return out;
}

}  // namespace

Scalar PartialFractions::eval(const Scalar& x) const {
    Scalar acc = polynomial_part(x);
    for (const Term& t : terms) {
        Scalar diff = x - t.location;
        if (diff.is_zero()) {
            int order = 0;
            for (std::size_t j = 0; j < t.coeffs.size(); ++j)
                if (!t.coeffs[j].is_zero()) order = static_cast<int>(j) + 1;
            if (order > 0) throw PoleHit(t.location.to_string(), order);
            continue;
        }
        Scalar inv = diff.inverse();
        Scalar power = inv;
        for (const Scalar& c : t.coeffs) {
            acc += c * power;
            power *= inv;
        }
    }
    return acc;
}

RationalFunction::RationalFunction(SPoly numerator, std::vector<Pole> poles)
    : num_(std::move(numerator)), poles_(std::move(poles)) {
    std::vector<Pole> merged;
    for (const Pole& p : poles_) {
        if (p.order < 0) throw PreconditionError("negative pole order");
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const Pole& q) { return q.location == p.location; });
        if (it == merged.end())
            merged.push_back(p);
        else
            it->order += p.order;
    }
    poles_ = std::move(merged);
    canonicalize();
}

RationalFunction RationalFunction::pole_term(const Scalar& coeff, const Scalar& location, int order) {
    return RationalFunction(SPoly::constant(coeff), {Pole{location, order}});
}

void RationalFunction::canonicalize() {
    if (num_.is_zero()) {
        poles_.clear();
        return;
    }
    for (Pole& p : poles_) {
        while (p.order > 0 && num_(p.location).is_zero()) {
            num_ = num_.divmod(SPoly::linear_factor(p.location)).first;
            --p.order;
        }
    }
    poles_.erase(std::remove_if(poles_.begin(), poles_.end(), [](const Pole& p) { return p.order == 0; }),
                 poles_.end());
    sort_poles(poles_);
}

SPoly RationalFunction::denominator() const {
    SPoly d = SPoly::constant(Scalar(1));
    for (const Pole& p : poles_) d = d * SPoly::linear_factor(p.location).pow(p.order);
    return d;
}

int RationalFunction::pole_order(const Scalar& location) const {
    for (const Pole& p : poles_)
        if (p.location == location) return p.order;
    return 0;
}

SPoly RationalFunction::lifted_numerator(const std::vector<Pole>& target) const {
    SPoly n = num_;
    for (const Pole& t : target) {
        int extra = t.order - pole_order(t.location);
        if (extra > 0) n = n * SPoly::linear_factor(t.location).pow(extra);
    }
    return n;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    std::vector<Pole> common = merged_max(poles_, o.poles_);
    num_ = lifted_numerator(common) + o.lifted_numerator(common);
    poles_ = std::move(common);
    canonicalize();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) {
    std::vector<Pole> common = merged_max(poles_, o.poles_);
    num_ = lifted_numerator(common) - o.lifted_numerator(common);
    poles_ = std::move(common);
    canonicalize();
    return *this;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
    std::vector<Pole> all = poles_;
    all.insert(all.end(), o.poles_.begin(), o.poles_.end());
    *this = RationalFunction(num_ * o.num_, std::move(all));
    return *this;
}

RationalFunction& RationalFunction::operator*=(const Scalar& s) {
    num_ *= s;
    if (num_.is_zero()) poles_.clear();
    return *this;
}

Scalar RationalFunction::eval(const Scalar& x) const {
    Scalar den(1);
    for (const Pole& p : poles_) {
        Scalar diff = x - p.location;
        if (diff.is_zero()) throw PoleHit(p.location.to_string(), p.order);
        den *= diff.pow(p.order);
    }
    return num_(x) / den;
}

ComplexScalar RationalFunction::eval(const ComplexScalar& x) const {
    ComplexScalar den(Scalar(1));
    for (const Pole& p : poles_) {
        ComplexScalar diff = x - ComplexScalar(p.location);
        if (diff.is_zero()) throw PoleHit(p.location.to_string(), p.order);
        den *= diff.pow(p.order);
    }
    return num_.eval<ComplexScalar>(x) / den;
}

std::complex<double> RationalFunction::eval_double(std::complex<double> x) const {
    std::complex<double> n = 0.0;
    const auto& c = num_.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) n = n * x + it->to_double();
    std::complex<double> d = 1.0;
    for (const Pole& p : poles_) d *= std::pow(x - p.location.to_double(), p.order);
    return n / d;
}

PartialFractions RationalFunction::partial_fractions() const {
    PartialFractions pf;
    pf.polynomial_part = num_.divmod(denominator()).first;
    for (const Pole& p : poles_) {
        SPoly rest = SPoly::constant(Scalar(1));
        for (const Pole& q : poles_)
            if (!(q.location == p.location)) rest = rest * SPoly::linear_factor(q.location).pow(q.order);
        // Laurent expansion in t = x - p of num / ((t^order) * rest(p + t)).
        SPoly n = num_.taylor_shift(p.location);
        SPoly d = rest.taylor_shift(p.location);
        std::vector<Scalar> series;
        Scalar d0_inv = d.coeff(0).inverse();
        for (int k = 0; k < p.order; ++k) {
            Scalar acc = n.coeff(k);
            for (int j = 1; j <= k; ++j) acc -= d.coeff(j) * series[static_cast<std::size_t>(k - j)];
            series.push_back(acc * d0_inv);
        }
        PartialFractions::Term term{p.location, std::vector<Scalar>(static_cast<std::size_t>(p.order))};
        for (int m = 1; m <= p.order; ++m)
            term.coeffs[static_cast<std::size_t>(m - 1)] = series[static_cast<std::size_t>(p.order - m)];
        pf.terms.push_back(std::move(term));
    }
    return pf;
}

RationalFunction RationalFunction::from_partial_fractions(const PartialFractions& pf) {
    RationalFunction r(pf.polynomial_part);
    for (const auto& t : pf.terms)
        for (std::size_t j = 0; j < t.coeffs.size(); ++j)
            if (!t.coeffs[j].is_zero()) r += pole_term(t.coeffs[j], t.location, static_cast<int>(j) + 1);
    return r;
}

std::string RationalFunction::to_string() const {
    std::string out = "[" + num_.to_string("λ") + "]";
    for (const Pole& p : poles_)
        out += " / (λ - " + p.location.to_string() + ")^" + std::to_string(p.order);
    return out;
}

}  // namespace pfspec::exact
