#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "folkreg/graph.hpp"
#include "folkreg/host.hpp"
#include "folkreg/rational.hpp"
#include "folkreg/vertex_set.hpp"

namespace folkreg {

enum class Verdict { Regular, Irregular, ProbablyRegular };

char verdict_letter(Verdict v);

/// Witness of irregularity: subsets with |X'| > eps|X|, |Y'| > eps|Y| whose
/// density deviates from the full pair's by strictly more than eps.
struct PairWitness {
    VertexSet x;
    VertexSet y;
    Rational deviation;
};

struct PairStats {
    Rational density;
    Verdict verdict = Verdict::ProbablyRegular;
    std::optional<PairWitness> witness;
};

struct RegularityParams {
    enum class Mode { Faithful, Practical };
    enum class VerdictMode { Auto, ExhaustiveOnly, SampledOnly };

    Rational epsilon{1, 4};
    int min_classes = 1;            // m: class count of the initial partition
    int max_rounds = 8;             // refinement steps before giving up
    int class_size_floor = 1;       // practical mode never cuts classes below this
    Mode mode = Mode::Practical;
    VerdictMode verdict_mode = VerdictMode::Auto;
    int sample_trials = 16;
    int exhaustive_cap = 14;        // per-side cap of the exhaustive check
    int practical_growth = 2;       // practical-mode class multiplier per round
    uint64_t seed = 0;
    int threads = 1;

    /// Throws ArgumentError unless epsilon is in (0, 1/2] and the integer
    /// knobs are sane.
    void validate() const;
};

/// Exact eps-regularity decision by enumeration. Sides must not exceed `cap`
/// vertices (CapacityError otherwise). Verdict is Regular iff no subset pair
/// (X' of A, Y' of B) with |X'| > eps|A| and |Y'| > eps|B| deviates by more
/// than eps; otherwise Irregular with a maximal-deviation witness.
PairStats check_pair_exhaustive(const DenseGraph& g, const VertexSet& a, const VertexSet& b,
                                const Rational& eps, int cap = 14);

/// One-sided sampling surrogate: probes structured splits (pivot
/// neighborhoods, degree splits) and random large subsets. Returns Irregular
/// only with a witness verified by exact density arithmetic, otherwise
/// ProbablyRegular. Deterministic in the seed.
PairStats check_pair_sampled(const DenseGraph& g, const VertexSet& a, const VertexSet& b,
                             const Rational& eps, int trials, uint64_t seed);

/// Defect Cauchy-Schwarz test oracle: given values d_1..d_s and 1 <= t < s
/// with (1/s)*sum d_i = (1/t)*sum_{i<=t} d_i + delta, decides whether
///   (1/s)*sum d_i^2 >= ((1/s)*sum d_i)^2 + t*delta^2/(s-t).
/// Must hold on every valid input. Throws ArgumentError when the supplied
/// delta disagrees with the data by more than 1e-12.
bool defect_cauchy_schwarz_check(const std::vector<Rational>& d, int t, const Rational& delta);

} // namespace folkreg
