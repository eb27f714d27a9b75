#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "folkreg/graph.hpp"
#include "folkreg/vertex_set.hpp"

namespace folkreg {

/// p-partite vertex layout over a DenseGraph with only cross-part edges, plus
/// an optional r-coloring of those edges. Parts occupy contiguous global
/// index ranges. Immutable after construction.
class PartiteHost {
public:
    /// Uncolored host. Every edge must cross parts.
    PartiteHost(std::vector<int> part_sizes, DenseGraph graph);

    /// Colored host: edge_colors[i] is the color of edges()[i] of `graph`, in
    /// the canonical (u < v, ascending) edge order.
    PartiteHost(std::vector<int> part_sizes, DenseGraph graph, int num_colors,
                const std::vector<int>& edge_colors);

    int part_count() const { return static_cast<int>(part_sizes_.size()); }
    int order() const { return graph_.order(); }
    int part_size(int s) const { return part_sizes_[s]; }
    const std::vector<int>& part_sizes() const { return part_sizes_; }

    /// Half-open global index range [begin, end) of part s (0-based s).
    std::pair<int, int> part_range(int s) const {
        return {part_begin_[s], part_begin_[s] + part_sizes_[s]};
    }
    int part_of(int v) const;
    VertexSet part_set(int s) const {
        auto [b, e] = part_range(s);
        return VertexSet::range(order(), b, e);
    }

    const DenseGraph& graph() const { return graph_; }

    bool colored() const { return !color_graphs_.empty(); }
    int color_count() const { return static_cast<int>(color_graphs_.size()); }

    /// Graph holding exactly the edges of one color. Requires a coloring.
    const DenseGraph& monochrome_subgraph(int color) const;

    /// Color of an existing edge; requires a coloring.
    int color_of(int u, int v) const;

    /// True when every cross-part pair of vertices is an edge.
    bool is_complete() const;

private:
    void init_ranges();

    std::vector<int> part_sizes_;
    std::vector<int> part_begin_;
    DenseGraph graph_;
    std::vector<DenseGraph> color_graphs_;
};

/// Complete p-partite host with part_size vertices per part and each cross
/// edge colored uniformly at random among r colors; deterministic in seed.
PartiteHost random_host(int p, int part_size, int r, uint64_t seed);

} // namespace folkreg
