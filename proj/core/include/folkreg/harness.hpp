#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "folkreg/embedding.hpp"
#include "folkreg/host.hpp"
#include "folkreg/partition.hpp"
#include "folkreg/rational.hpp"
#include "folkreg/turan.hpp"

namespace folkreg {

/// Known small multicolor Ramsey numbers R_r(K_delta); the pipeline looks up
/// p here instead of pretending to compute it.
std::optional<int> known_ramsey(int delta, int r);

struct PipelineConfig {
    int delta = 3;            // max degree of embeddable targets
    int r = 2;                // colors
    int p = 6;                // parts; intended p >= R_r(K_delta)
    Rational epsilon{1, 10};
    int m = 2;                // initial classes per part
    int part_size = 48;
    RegularityParams::Mode refine_mode = RegularityParams::Mode::Practical;
    // sampled even for small classes: exact small-pair checks declare nearly
    // everything irregular at desk-scale epsilon, which starves the reduced
    // graph; the sampler is the honest scalable surrogate here
    RegularityParams::VerdictMode verdict_mode = RegularityParams::VerdictMode::SampledOnly;
    int sample_trials = 8;
    int max_rounds = 2;
    int class_size_floor = 2;
    int practical_growth = 2;
    int clique_retries = 12;  // alternative cluster cliques tried after an embed failure
    uint64_t seed = 0;
    int threads = 1;
    bool strict_epsilon = false; // enforce eps <= min(1/p^2, 1/m)
    bool randomized_embed = false;

    RegularityParams regularity_params() const;
    void validate() const;
};

/// Cluster graph of a partition: nodes are the non-exceptional classes, an
/// edge joins two classes of distinct parts when their verdict is
/// non-Irregular in every color of the table; edges carry exact per-color
/// densities. Throws StateError on missing verdicts.
ReducedGraph reduced_graph(const PartiteHost& host, const Partition& p,
                           const VerdictTable& verdicts);

struct DensityCliqueOutcome {
    bool found = false;
    int color = -1;                        // color of the monochromatic K_delta
    std::vector<int> nodes;                // delta reduced-graph node ids
    std::vector<std::vector<int>> pair_color; // color assigned to each clique pair (by position)
};

/// The majority-density Ramsey step: each pair of the p-clique is assigned
/// the lowest color whose density is at least 1/r (one exists for complete
/// hosts, where per-pair densities over the colors sum to 1), then the
/// r-colored K_p is searched exhaustively for a monochromatic K_delta.
/// Lexicographically least clique wins. found = false carries the coloring
/// back to the caller (p below the Ramsey number is an expected outcome).
DensityCliqueOutcome density_color_clique(const ReducedGraph& f, const std::vector<int>& clique,
                                          int delta, int r);

struct StageRow {
    std::string name;
    bool ok = false;
    long long ms = 0;
    std::string note;
};

struct PipelineReport {
    std::vector<StageRow> stages;
    RefinementReport refinement;
    std::optional<Partition> partition; // absorbed near-equitable partition
    Rational q_final;
    int final_k = 0;
    int reduced_nodes = 0;
    long long reduced_edges = 0;
    int cliques_tried = 0;
    std::vector<int> clique;               // winning transversal (node ids)
    DensityCliqueOutcome colorstep;
    std::vector<int> embed_clusters;       // node ids hosting the embedding
    std::optional<EmbeddingState> embedding;
    std::optional<FailureTrace> failure;
    std::vector<int> target_coloring;      // phi of the target
    bool verified = false;
    bool success = false;

    /// Structured text form; one "stage <name> status=.. ms=.." line per
    /// stage followed by stage payloads. with_timings=false zeroes the ms
    /// column so two runs of the same inputs compare byte-identical.
    std::string to_text(bool with_timings = true) const;
};

/// End-to-end run: multicolor regularity partition, exceptional absorption,
/// reduced graph, transversal clique search, density-threshold Ramsey step,
/// proper coloring of the target, and greedy embedding into the chosen
/// clusters of the winning color (d_floor = 1/r). Any reported success has
/// already passed verify_embedding against the monochrome subgraph.
PipelineReport run_pipeline(const PartiteHost& host, const DenseGraph& target,
                            const PipelineConfig& cfg);

/// Largest epsilon on the grid 2^-1 .. 2^-20 satisfying
/// (1 - delta*eps) * (1/r - eps)^delta * m >= 1, additionally capped by
/// min(1/p^2, 1/m) when p is given. Throws InfeasibleError when the grid has
/// no admissible point (then m must grow).
Rational feasible_epsilon(int delta, int r, int m, std::optional<int> p = {});

} // namespace folkreg
