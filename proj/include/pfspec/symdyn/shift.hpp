#pragma once

#include <string>
#include <vector>

#include "pfspec/exact/scalar.hpp"

namespace pfspec::symdyn {

using exact::Scalar;

/// A finite word over the alphabet {0, ..., beta-1}.
using Word = std::vector<int>;

enum class Sidedness { OneSided, TwoSided };
enum class MeasureKind { Bernoulli, Markov };

struct MeasureSpec {
    MeasureKind kind = MeasureKind::Bernoulli;
    std::vector<Scalar> probabilities;             // Bernoulli
    std::vector<std::vector<Scalar>> transition;   // Markov P
    std::vector<Scalar> stationary;                // Markov pi

    static MeasureSpec bernoulli(std::vector<Scalar> p);
    static MeasureSpec markov(std::vector<std::vector<Scalar>> p, std::vector<Scalar> pi);
};

/**
 * Self-similarity data of the coding map h: h(i*w) = offset_i + scale_i * h(w).
 * Bernoulli systems use cumulative probabilities and p_i; the golden-mean
 * system uses offsets (0, 1/phi) and scale 1/phi for both symbols.
 */
struct CodingMap {
    std::vector<Scalar> offsets;
    std::vector<Scalar> scales;
};

/// Affine map x -> offset + scale * x, the coding map restricted to a cylinder.
struct Affine {
    Scalar offset{0};
    Scalar scale{1};

    Scalar operator()(const Scalar& x) const { return offset + scale * x; }
    /// (*this) o (c + s x)
    Affine then(const Scalar& c, const Scalar& s) const { return {offset + scale * c, scale * s}; }
};

class ShiftSystem {
public:
    /// Validates every invariant; throws ConfigError on violation.
    ShiftSystem(std::string name, int beta, std::vector<std::vector<int>> adjacency, MeasureSpec measure,
                Sidedness sidedness = Sidedness::OneSided);

    const std::string& name() const noexcept { return name_; }
    int beta() const noexcept { return beta_; }
    const std::vector<std::vector<int>>& adjacency() const noexcept { return adjacency_; }
    bool allowed(int i, int j) const { return adjacency_[i][j] != 0; }
    const MeasureSpec& measure() const noexcept { return measure_; }
    Sidedness sidedness() const noexcept { return sidedness_; }
    const CodingMap& coding() const noexcept { return coding_; }

    bool is_full() const;
    bool is_bernoulli() const noexcept { return measure_.kind == MeasureKind::Bernoulli; }
    bool is_uniform() const;
    bool is_golden_mean() const noexcept { return golden_; }

    /// pi_i (p_i for Bernoulli).
    const Scalar& initial(int i) const;
    /// p_ij (p_j for Bernoulli).
    const Scalar& transition(int i, int j) const;
    /// pi_i p_ij / pi_j: weight of f(i*w) in (V f)(w) for w in C[j].
    Scalar weight(int i, int j) const;

    bool admissible(const Word& w) const;
    void require_admissible(const Word& w) const;

private:
    void validate();
    void build_coding();

    std::string name_;
    int beta_;
    std::vector<std::vector<int>> adjacency_;
    MeasureSpec measure_;
    Sidedness sidedness_;
    CodingMap coding_;
    bool golden_ = false;
};

/// Cylinder C[i_1..i_r] (start index 1 for one-sided systems).
struct Cylinder {
    Word word;
    int start = 1;
};

/// Built-in presets: full2-uniform, fullbeta-uniform, fullbeta-weighted, golden-mean, twosided-full2.
ShiftSystem preset(const std::string& name);
std::vector<std::string> preset_names();

/// Uniform or weighted full shift on beta symbols.
ShiftSystem full_shift(std::vector<Scalar> probabilities, Sidedness sidedness = Sidedness::OneSided);
ShiftSystem golden_mean();

/// All admissible words of the given length, in lexicographic order.
std::vector<Word> admissible_words(const ShiftSystem& sys, int length);

Scalar cylinder_measure(const ShiftSystem& sys, const Word& w);
inline Scalar cylinder_measure(const ShiftSystem& sys, const Cylinder& c) { return cylinder_measure(sys, c.word); }

/// The affine map x -> h(w * omega) as a function of x = h(omega).
Affine cylinder_affine(const ShiftSystem& sys, const Word& w);

/// Lexicographically minimal (or maximal) admissible tail after symbol `last`
/// (-1: none), as a transient prefix and a cycle.
std::pair<Word, Word> extremal_tail(const ShiftSystem& sys, int last, bool maximal);

/// Interval [a, b] = h(C[w]).
std::pair<Scalar, Scalar> coding_interval(const ShiftSystem& sys, const Word& w);
inline std::pair<Scalar, Scalar> coding_interval(const ShiftSystem& sys, const Cylinder& c) {
    return coding_interval(sys, c.word);
}

/// h evaluated at w followed by the eventually periodic tail prefix + cycle^inf.
Scalar h_of_eventually_periodic(const ShiftSystem& sys, const Word& w, const Word& prefix, const Word& cycle);

/// m_n = integral of h^n, n = 0..nmax, for Bernoulli systems.
std::vector<Scalar> h_moments(const ShiftSystem& sys, int nmax);

/**
 * a[n][j] = integral over C[j] of h^n, n = 0..nmax, obtained by splitting the
 * self-similarity over the first symbol and solving a beta x beta system per n.
 */
std::vector<std::vector<Scalar>> block_moments(const ShiftSystem& sys, int nmax);

}  // namespace pfspec::symdyn
