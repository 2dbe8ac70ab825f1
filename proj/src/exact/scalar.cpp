#include "pfspec/exact/scalar.hpp"

#include <ostream>

#include "pfspec/errors.hpp"

namespace pfspec::exact {

namespace {

constexpr std::string_view kSqrt = "√";

long parse_radicand(std::string_view s) {
    if (s.empty()) throw ConfigError("missing radicand");
    long d = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw ConfigError("malformed radicand '" + std::string(s) + "'");
        d = d * 10 + (c - '0');
        if (d > 1'000'000) throw ConfigError("radicand too large");
    }
    return d;
}

}  // namespace

Scalar Scalar::parse(std::string_view text) {
    auto root = text.find(kSqrt);
    if (root == std::string_view::npos) return Scalar(Rational::parse(text));
    long d = parse_radicand(text.substr(root + kSqrt.size()));
    std::string_view head = text.substr(0, root);
    // head = "<a>+<c>" or "<a>-<c>"; the split sign is the first one past position 0.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = 1; i < head.size(); ++i) {
        if (head[i] == '+' || head[i] == '-') {
            split = i;
            break;
        }
    }
    if (split == std::string_view::npos)
        throw ConfigError("malformed quadratic scalar '" + std::string(text) + "'");
    Rational a = Rational::parse(head.substr(0, split));
    Rational b = Rational::parse(head.substr(split + 1));
    if (head[split] == '-') b = -b;
    return Scalar(QuadExt(a, b, d));
}

QuadExt Scalar::as_quad(long d) const {
    if (is_rational()) return QuadExt(rational(), Rational(0), d);
    return quad();
}

bool Scalar::in_rationals() const { return is_rational() || quad().is_rational(); }

Rational Scalar::to_rational() const {
    if (is_rational()) return rational();
    if (!quad().is_rational()) throw PreconditionError("scalar " + to_string() + " is irrational");
    return quad().a();
}

bool Scalar::is_zero() const {
    return is_rational() ? rational().is_zero() : quad().is_zero();
}

bool Scalar::is_one() const {
    return is_rational() ? rational().is_one() : (quad().a().is_one() && quad().b().is_zero());
}

int Scalar::sign() const { return is_rational() ? rational().sign() : quad().sign(); }

Scalar Scalar::inverse() const {
    if (is_rational()) return Scalar(rational().inverse());
    return Scalar(quad().inverse());
}

Scalar Scalar::pow(long exponent) const {
    if (is_rational()) return Scalar(rational().pow(exponent));
    return Scalar(quad().pow(exponent));
}

bool Scalar::try_sqrt(Scalar& root) const {
    if (is_rational()) {
        Rational r;
        if (rational().try_sqrt(r)) {
            root = Scalar(r);
            return true;
        }
        QuadExt q;
        if (as_quad(5).try_sqrt(q)) {
            root = Scalar(q);
            return true;
        }
        return false;
    }
    QuadExt q;
    if (!quad().try_sqrt(q)) return false;
    root = Scalar(q);
    return true;
}

double Scalar::to_double() const { return is_rational() ? rational().to_double() : quad().to_double(); }

std::string Scalar::to_string() const {
    return is_rational() ? rational().to_string() : quad().to_string();
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (is_rational() && o.is_rational()) {
        std::get<Rational>(v_) += o.rational();
    } else {
        long d = is_rational() ? o.quad().d() : quad().d();
        QuadExt q = as_quad(d);
        q += o.as_quad(d);
        v_ = std::move(q);
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    if (is_rational() && o.is_rational()) {
        std::get<Rational>(v_) -= o.rational();
    } else {
        long d = is_rational() ? o.quad().d() : quad().d();
        QuadExt q = as_quad(d);
        q -= o.as_quad(d);
        v_ = std::move(q);
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (is_rational() && o.is_rational()) {
        std::get<Rational>(v_) *= o.rational();
    } else {
        long d = is_rational() ? o.quad().d() : quad().d();
        QuadExt q = as_quad(d);
        q *= o.as_quad(d);
        v_ = std::move(q);
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (is_rational() && o.is_rational()) {
        std::get<Rational>(v_) /= o.rational();
    } else {
        long d = is_rational() ? o.quad().d() : quad().d();
        QuadExt q = as_quad(d);
        q /= o.as_quad(d);
        v_ = std::move(q);
    }
    return *this;
}

Scalar Scalar::operator-() const {
    if (is_rational()) return Scalar(-rational());
    return Scalar(-quad());
}

bool operator==(const Scalar& x, const Scalar& y) {
    if (x.is_rational() && y.is_rational()) return x.rational() == y.rational();
    long d = x.is_rational() ? y.quad().d() : x.quad().d();
    return x.as_quad(d) == y.as_quad(d);
}

int compare(const Scalar& x, const Scalar& y) { return (x - y).sign(); }

int compare_abs(const Scalar& x, const Scalar& y) { return compare(x.abs(), y.abs()); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar phi() { return Scalar(QuadExt::golden()); }

}  // namespace pfspec::exact
