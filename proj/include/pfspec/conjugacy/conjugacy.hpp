#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pfspec/exact/scalar.hpp"
#include "pfspec/symdyn/shift.hpp"

namespace pfspec::conjugacy {

using exact::Scalar;
using symdyn::ShiftSystem;
using symdyn::Word;

/// Piecewise-linear expanding map of [0, 1]; branch b is x -> slope * x - offset on [left, right].
class IntervalMap {
public:
    enum class Kind { Renyi, GoldenMult };

    struct Branch {
        Scalar left;
        Scalar right;
        Scalar slope;
        Scalar offset;

        Scalar operator()(const Scalar& x) const { return slope * x - offset; }
    };

    static IntervalMap renyi(int beta);
    static IntervalMap golden();
    /// "renyi2", "renyi3", ..., or "golden".
    static IntervalMap parse(const std::string& name);

    Kind kind() const { return kind_; }
    int beta() const { return beta_; }
    std::string name() const;
    const std::vector<Branch>& branches() const { return branches_; }

    /// Exact image; a point shared by two branches goes to the left one.
    Scalar apply(const Scalar& x) const;
    double apply(double x) const;

private:
    IntervalMap(Kind k, int beta);

    Kind kind_;
    int beta_;
    double slope_d_;
    std::vector<Branch> branches_;
};

struct DensityPiece {
    Scalar left;
    Scalar right;
    Scalar value;
};

/// Piecewise-constant density on [0, 1]; pieces are contiguous and ordered.
struct DensitySpec {
    std::vector<DensityPiece> pieces;

    /// Value on the piece containing x (left piece at breakpoints).
    Scalar operator()(const Scalar& x) const;
    Scalar integral(const Scalar& a, const Scalar& b) const;
    double integral(double a, double b) const;
};

/// Exact transfer operator of a piecewise-constant density.
DensitySpec transfer(const IntervalMap& map, const DensitySpec& rho);
bool is_invariant(const IntervalMap& map, const DensitySpec& rho);

/// The invariant density, checked for exact invariance before it is returned.
DensitySpec invariant_density(const IntervalMap& map);

/// The interval map semiconjugate to the system under its coding map.
IntervalMap matched_map(const ShiftSystem& sys);

struct SemiconjugacyReport {
    int depth = 0;
    long words_checked = 0;
    std::vector<Word> failures;
    bool ok() const { return failures.empty(); }
};

/**
 * For each admissible w with 1 <= |w| <= depth, apply the branch of w_1 to both
 * extremal points h(w t) and compare with h(shift(w) t) for the same tails t.
 */
SemiconjugacyReport semiconjugacy_check(const ShiftSystem& sys, const IntervalMap& map, int depth);

struct HistogramBin {
    double left = 0;
    double right = 0;
    long count = 0;
    double empirical_density = 0;
    double exact_density = 0;
    double rel_error = 0;
};

struct HistogramReport {
    std::string map;
    long samples = 0;
    int bins = 0;
    std::uint64_t seed = 0;
    int iterations = 0;
    std::vector<HistogramBin> table;
    double sup_rel_error = 0;
};

/**
 * Iterate the map `iterations` times from seeded uniform starts and bin the
 * endpoints. Orbits are split into fixed chunks with independent seeds, so the
 * result does not depend on `threads`.
 */
HistogramReport histogram_simulation(const IntervalMap& map, long samples, int bins, std::uint64_t seed,
                                     int iterations = 24, int threads = 1);

std::string histogram_csv(const HistogramReport& r);

}  // namespace pfspec::conjugacy
