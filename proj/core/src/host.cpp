#include "folkreg/host.hpp"

#include <algorithm>

#include "folkreg/prng.hpp"

namespace folkreg {

void PartiteHost::init_ranges() {
    if (part_sizes_.size() < 2) throw ArgumentError("host needs at least 2 parts");
    part_begin_.resize(part_sizes_.size());
    int at = 0;
    for (size_t s = 0; s < part_sizes_.size(); ++s) {
        if (part_sizes_[s] < 1) throw ArgumentError("empty part");
        part_begin_[s] = at;
        at += part_sizes_[s];
    }
    if (at != graph_.order()) throw ArgumentError("part sizes do not sum to graph order");
    for (auto [u, v] : graph_.edges())
        if (part_of(u) == part_of(v)) throw ArgumentError("edge inside a part");
}

PartiteHost::PartiteHost(std::vector<int> part_sizes, DenseGraph graph)
    : part_sizes_(std::move(part_sizes)), graph_(std::move(graph)) {
    init_ranges();
}

PartiteHost::PartiteHost(std::vector<int> part_sizes, DenseGraph graph, int num_colors,
                         const std::vector<int>& edge_colors)
    : part_sizes_(std::move(part_sizes)), graph_(std::move(graph)) {
    init_ranges();
    if (num_colors < 1) throw ArgumentError("color count must be >= 1");
    auto es = graph_.edges();
    if (edge_colors.size() != es.size())
        throw ArgumentError("one color per edge required");
    color_graphs_.assign(num_colors, DenseGraph(graph_.order()));
    for (size_t i = 0; i < es.size(); ++i) {
        int c = edge_colors[i];
        if (c < 0 || c >= num_colors) throw ArgumentError("edge color out of range");
        color_graphs_[c].add_edge(es[i].first, es[i].second);
    }
}

int PartiteHost::part_of(int v) const {
    auto it = std::upper_bound(part_begin_.begin(), part_begin_.end(), v);
    return static_cast<int>(it - part_begin_.begin()) - 1;
}

const DenseGraph& PartiteHost::monochrome_subgraph(int color) const {
    if (!colored()) throw StateError("host has no coloring");
    if (color < 0 || color >= color_count()) throw ArgumentError("color id out of range");
    return color_graphs_[color];
}

int PartiteHost::color_of(int u, int v) const {
    if (!colored()) throw StateError("host has no coloring");
    for (int c = 0; c < color_count(); ++c)
        if (color_graphs_[c].has_edge(u, v)) return c;
    throw ArgumentError("not an edge of the host");
}

bool PartiteHost::is_complete() const {
    long long want = 0;
    for (int s = 0; s < part_count(); ++s)
        for (int t = s + 1; t < part_count(); ++t)
            want += static_cast<long long>(part_sizes_[s]) * part_sizes_[t];
    return graph_.edge_count() == want;
}

PartiteHost random_host(int p, int part_size, int r, uint64_t seed) {
    if (p < 2) throw ArgumentError("p must be >= 2");
    if (part_size < 1) throw ArgumentError("part_size must be >= 1");
    if (r < 1) throw ArgumentError("r must be >= 1");
    int n = p * part_size;
    DenseGraph g(n);
    std::vector<int> colors;
    std::mt19937_64 rng(derive_seed(seed, 0x605f));
    // canonical u < v ascending order keeps the coloring aligned with edges()
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (u / part_size == v / part_size) continue;
            g.add_edge(u, v);
            colors.push_back(draw_below(rng, r));
        }
    }
    return PartiteHost(std::vector<int>(p, part_size), std::move(g), r, colors);
}

} // namespace folkreg
