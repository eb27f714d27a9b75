#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "folkreg/graph.hpp"
#include "folkreg/rational.hpp"
#include "folkreg/vertex_set.hpp"

namespace folkreg {

/// Exact backtracking proper coloring with at most `delta` colors (values
/// 0..delta-1), ascending vertices, lowest color first. Requires the maximum
/// degree of g to be at most delta; throws InfeasibleError naming the Brooks
/// obstruction (complete component of order delta+1, or odd cycle when
/// delta = 2) when no coloring exists.
std::vector<int> proper_coloring(const DenseGraph& g, int delta);

/// The graph to embed together with its proper coloring.
struct TargetGraph {
    DenseGraph graph;
    int delta = 0;            // degree bound the coloring was built for
    std::vector<int> phi;     // proper coloring, values in 0..delta-1

    static TargetGraph with_proper_coloring(DenseGraph g, int delta);

    /// Throws StateError unless phi is a proper coloring with < delta colors.
    void validate() const;
};

/// All vertices of A with at least (d - eps)|Y| neighbors in Y, by exact
/// rational comparison. When (A, B) is eps-regular with density d, Y is a
/// subset of B and |Y| > eps|B|, the result keeps at least (1-eps)|A|
/// vertices of A (checked by tests, not assumed here).
VertexSet good_vertex_set(const DenseGraph& g, const VertexSet& a, const VertexSet& y,
                          const Rational& d, const Rational& eps);

struct EmbeddingStep {
    int vertex = 0;            // u_i processed at this step
    int image = -1;            // chosen v_i
    int candidates = 0;        // candidate pool size the image was drawn from
    bool ledger_ok = true;     // per-step target-set size bound held
};

/// State of the inductive embedding: clusters C_1..C_delta, per-vertex
/// target sets Y_i, chosen images v_i.
struct EmbeddingState {
    std::vector<VertexSet> clusters;
    std::vector<VertexSet> targets;   // Y_i, kept free of chosen images
    std::vector<int> images;          // -1 while unchosen
    int steps_done = 0;
    std::vector<EmbeddingStep> history;

    bool complete() const;
};

struct FailureTrace {
    int step = 0;                     // 0-based index of the starving vertex
    std::vector<int> target_sizes;    // |Y_j| at the moment of starvation

    std::string to_line() const;      // "fail step=<i> candidates=0 targets=<csv>"
};

struct EmbedOptions {
    /// When true the per-step size ledger is enforced (throws StateError on
    /// violation); callers set it only after certifying every cluster pair
    /// eps-regular with the exhaustive check.
    bool certified = false;
    /// Seeded-random image choice instead of lowest-index (for success-rate
    /// experiments); lowest-index keeps runs reproducible without a seed.
    bool randomized = false;
    uint64_t seed = 0;
};

/// Inductive target-set embedding of T into the clusters inside the ambient
/// graph g. Processes vertices in ascending order; at each step the image is
/// drawn from the target set filtered through good_vertex_set against every
/// future neighbor's target set, and future neighbors' target sets shrink to
/// the image's neighborhood. Chosen images are removed from all target sets
/// of the same cluster immediately, so images stay distinct. Deterministic
/// unless randomized.
std::variant<EmbeddingState, FailureTrace> embed(const TargetGraph& t, const DenseGraph& g,
                                                 const std::vector<VertexSet>& clusters,
                                                 const Rational& eps, const Rational& d_floor,
                                                 const EmbedOptions& opts = {});

/// Soundness check from raw adjacency only: images distinct, each in its
/// phi-cluster, and every target edge mapped onto an edge of g. Throws
/// ArgumentError when the state is incomplete.
bool verify_embedding(const TargetGraph& t, const EmbeddingState& state, const DenseGraph& g);

} // namespace folkreg
