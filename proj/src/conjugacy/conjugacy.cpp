#include "pfspec/conjugacy/conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "pfspec/errors.hpp"

namespace pfspec::conjugacy {

using exact::phi;

IntervalMap::IntervalMap(Kind k, int beta) : kind_(k), beta_(beta) {
    if (k == Kind::Renyi) {
        if (beta < 2) throw ConfigError("Renyi map needs beta >= 2");
        slope_d_ = beta;
        for (int b = 0; b < beta; ++b)
            branches_.push_back({Scalar(b, beta), Scalar(b + 1, beta), Scalar(beta), Scalar(b)});
    } else {
        slope_d_ = phi().to_double();
        Scalar inv = phi().inverse();
        branches_.push_back({Scalar(0), inv, phi(), Scalar(0)});
        branches_.push_back({inv, Scalar(1), phi(), Scalar(1)});
    }
}

IntervalMap IntervalMap::renyi(int beta) { return IntervalMap(Kind::Renyi, beta); }
IntervalMap IntervalMap::golden() { return IntervalMap(Kind::GoldenMult, 2); }

IntervalMap IntervalMap::parse(const std::string& name) {
    if (name == "golden") return golden();
    if (name.rfind("renyi", 0) == 0 && name.size() > 5) {
        std::string digits = name.substr(5);
        if (std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
            digits.size() < 4)
            return renyi(std::stoi(digits));
    }
    throw ConfigError("unknown map '" + name + "' (expected renyiN or golden)");
}

std::string IntervalMap::name() const { return kind_ == Kind::GoldenMult ? "golden" : "renyi" + std::to_string(beta_); }

Scalar IntervalMap::apply(const Scalar& x) const {
    if (exact::compare(x, Scalar(0)) < 0 || exact::compare(x, Scalar(1)) > 0)
        throw PreconditionError("point outside [0, 1]");
    for (const auto& b : branches_)
        if (exact::compare(x, b.right) <= 0) return b(x);
    return branches_.back()(x);
}

double IntervalMap::apply(double x) const {
    if (kind_ == Kind::Renyi) {
        double y = x * slope_d_;
        double k = std::ceil(y) - 1;
        if (k < 0) k = 0;
        return y - k;
    }
    // x * phi - 1 with a single rounding.
    double y = x * slope_d_;
    return y > 1.0 ? std::fma(x, slope_d_, -1.0) : y;
}

Scalar DensitySpec::operator()(const Scalar& x) const {
    for (const auto& p : pieces)
        if (exact::compare(x, p.right) <= 0 && exact::compare(x, p.left) >= 0) return p.value;
    throw PreconditionError("point outside the density support");
}

Scalar DensitySpec::integral(const Scalar& a, const Scalar& b) const {
    Scalar total(0);
    for (const auto& p : pieces) {
        Scalar lo = exact::compare(a, p.left) > 0 ? a : p.left;
        Scalar hi = exact::compare(b, p.right) < 0 ? b : p.right;
        if (exact::compare(lo, hi) < 0) total += (hi - lo) * p.value;
    }
    return total;
}

double DensitySpec::integral(double a, double b) const {
    double total = 0;
    for (const auto& p : pieces) {
        double lo = std::max(a, p.left.to_double()), hi = std::min(b, p.right.to_double());
        if (lo < hi) total += (hi - lo) * p.value.to_double();
    }
    return total;
}

DensitySpec transfer(const IntervalMap& map, const DensitySpec& rho) {
    std::vector<Scalar> cuts{Scalar(0), Scalar(1)};
    for (const auto& b : map.branches()) {
        cuts.push_back(b(b.left));
        cuts.push_back(b(b.right));
        for (const auto& p : rho.pieces)
            for (const Scalar& e : {p.left, p.right})
                if (exact::compare(e, b.left) >= 0 && exact::compare(e, b.right) <= 0) cuts.push_back(b(e));
    }
    for (const auto& p : rho.pieces) cuts.push_back(p.left);
    std::sort(cuts.begin(), cuts.end(), [](const Scalar& x, const Scalar& y) { return exact::compare(x, y) < 0; });
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    DensitySpec out;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        if (exact::compare(cuts[k], Scalar(0)) < 0 || exact::compare(cuts[k + 1], Scalar(1)) > 0) continue;
        Scalar mid = (cuts[k] + cuts[k + 1]) * Scalar(1, 2);
        Scalar v(0);
        for (const auto& b : map.branches()) {
            Scalar y = (mid + b.offset) / b.slope;
            if (exact::compare(y, b.left) > 0 && exact::compare(y, b.right) < 0) v += rho(y) / b.slope;
        }
        if (!out.pieces.empty() && out.pieces.back().value == v)
            out.pieces.back().right = cuts[k + 1];
        else
            out.pieces.push_back({cuts[k], cuts[k + 1], v});
    }
    return out;
}

bool is_invariant(const IntervalMap& map, const DensitySpec& rho) {
    DensitySpec t = transfer(map, rho);
    for (const auto& p : t.pieces) {
        Scalar mid = (p.left + p.right) * Scalar(1, 2);
        if (!(rho(mid) == p.value)) return false;
    }
    return true;
}

DensitySpec invariant_density(const IntervalMap& map) {
    DensitySpec rho;
    if (map.kind() == IntervalMap::Kind::Renyi) {
        rho.pieces.push_back({Scalar(0), Scalar(1), Scalar(1)});
    } else {
        Scalar norm = (phi().pow(2) + Scalar(1)).inverse();
        rho.pieces.push_back({Scalar(0), phi().inverse(), phi().pow(3) * norm});
        rho.pieces.push_back({phi().inverse(), Scalar(1), phi().pow(2) * norm});
    }
    if (!is_invariant(map, rho)) throw Error("density is not invariant under " + map.name());
    if (!(rho.integral(Scalar(0), Scalar(1)) == Scalar(1))) throw Error("density does not integrate to 1");
    return rho;
}

IntervalMap matched_map(const ShiftSystem& sys) {
    if (sys.is_golden_mean()) return IntervalMap::golden();
    if (sys.is_bernoulli() && sys.is_uniform()) return IntervalMap::renyi(sys.beta());
    throw ConfigError("no interval map is paired with system '" + sys.name() + "'");
}

SemiconjugacyReport semiconjugacy_check(const ShiftSystem& sys, const IntervalMap& map, int depth) {
    IntervalMap expected = matched_map(sys);
    if (expected.kind() != map.kind() || expected.beta() != map.beta())
        throw ConfigError("map " + map.name() + " does not match system '" + sys.name() + "'");
    SemiconjugacyReport rep;
    rep.depth = depth;
    for (int len = 1; len <= depth; ++len)
        for (const Word& w : symdyn::admissible_words(sys, len)) {
            ++rep.words_checked;
            const auto& branch = map.branches()[static_cast<std::size_t>(w.front())];
            Word rest(w.begin() + 1, w.end());
            bool good = true;
            for (bool maximal : {false, true}) {
                auto [prefix, cycle] = symdyn::extremal_tail(sys, w.back(), maximal);
                Scalar x = symdyn::h_of_eventually_periodic(sys, w, prefix, cycle);
                Scalar y = symdyn::h_of_eventually_periodic(sys, rest, prefix, cycle);
                if (!(branch(x) == y)) good = false;
                // Interior points follow the same branch under the exact map.
                if (!maximal) {
                    auto [lo, hi] = symdyn::coding_interval(sys, w);
                    Scalar mid = (lo + hi) * Scalar(1, 2);
                    if (!(map.apply(mid) == branch(mid))) good = false;
                }
            }
            if (!good) rep.failures.push_back(w);
        }
    return rep;
}

HistogramReport histogram_simulation(const IntervalMap& map, long samples, int bins, std::uint64_t seed,
                                     int iterations, int threads) {
    if (samples < 10000) throw PreconditionError("histogram simulation needs at least 10^4 samples");
    if (bins < 1) throw PreconditionError("bins must be positive");
    if (iterations < 0) throw PreconditionError("iterations must be nonnegative");
    constexpr long chunk = 1L << 16;
    long nchunks = (samples + chunk - 1) / chunk;
    std::vector<std::vector<long>> counts(static_cast<std::size_t>(nchunks), std::vector<long>(bins, 0));

    auto run_chunk = [&](long c) {
        std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(c)};
        std::mt19937_64 rng(ss);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        long n = std::min(chunk, samples - c * chunk);
        auto& out = counts[static_cast<std::size_t>(c)];
        for (long s = 0; s < n; ++s) {
            double x = u(rng);
            for (int it = 0; it < iterations; ++it) x = map.apply(x);
            int b = static_cast<int>(x * bins);
            out[static_cast<std::size_t>(std::clamp(b, 0, bins - 1))]++;
        }
    };
    int nt = std::max(1, std::min<int>(threads, static_cast<int>(nchunks)));
    if (nt == 1) {
        for (long c = 0; c < nchunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&, t] {
                for (long c = t; c < nchunks; c += nt) run_chunk(c);
            });
        for (auto& th : pool) th.join();
    }

    HistogramReport rep{map.name(), samples, bins, seed, iterations, {}, 0.0};
    DensitySpec rho = invariant_density(map);
    for (int b = 0; b < bins; ++b) {
        HistogramBin bin;
        bin.left = static_cast<double>(b) / bins;
        bin.right = static_cast<double>(b + 1) / bins;
        for (const auto& c : counts) bin.count += c[static_cast<std::size_t>(b)];
        double width = bin.right - bin.left;
        bin.empirical_density = static_cast<double>(bin.count) / static_cast<double>(samples) / width;
        // With no iterations the starts are still uniform.
        bin.exact_density = iterations == 0 ? 1.0 : rho.integral(bin.left, bin.right) / width;
        bin.rel_error = std::abs(bin.empirical_density - bin.exact_density) / bin.exact_density;
        rep.sup_rel_error = std::max(rep.sup_rel_error, bin.rel_error);
        rep.table.push_back(bin);
    }
    return rep;
}

std::string histogram_csv(const HistogramReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "bin_left,bin_right,count,empirical_density,exact_density,rel_error\n";
    for (const auto& b : r.table)
        os << b.left << ',' << b.right << ',' << b.count << ',' << b.empirical_density << ',' << b.exact_density << ','
           << b.rel_error << '\n';
    return os.str();
}

}  // namespace pfspec::conjugacy
