#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "folkreg/rational.hpp"
#include "folkreg/vertex_set.hpp"

namespace folkreg {

/// Dense undirected simple graph over vertices 0..n-1 with a symmetric
/// bit-adjacency matrix. Graphs are built once and then treated as immutable;
/// reads are safe from any number of threads.
class DenseGraph {
public:
    DenseGraph() : n_(0), words_per_row_(0), m_(0) {}
    explicit DenseGraph(int n);
    DenseGraph(int n, const std::vector<std::pair<int, int>>& edges);

    int order() const { return n_; }
    long long edge_count() const { return m_; }

    /// Rejects loops and duplicate edges.
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const {
        return (row(u)[v >> 6] >> (v & 63)) & 1u;
    }

    int degree(int v) const;

    /// |N(v) ∩ S|.
    int degree_into(int v, const VertexSet& s) const;

    /// N(v) ∩ S.
    VertexSet neighbors_in(int v, const VertexSet& s) const;
    VertexSet neighborhood(int v) const;

    /// Number of edges with one end in X and the other in Y; X, Y must be
    /// disjoint (unchecked here, callers validate).
    long long edges_between(const VertexSet& x, const VertexSet& y) const;

    std::vector<std::pair<int, int>> edges() const;

    std::span<const uint64_t> row(int v) const {
        return {data_.data() + static_cast<size_t>(v) * words_per_row_,
                static_cast<size_t>(words_per_row_)};
    }

private:
    std::span<uint64_t> mutable_row(int v) {
        return {data_.data() + static_cast<size_t>(v) * words_per_row_,
                static_cast<size_t>(words_per_row_)};
    }

    int n_;
    int words_per_row_;
    long long m_;
    std::vector<uint64_t> data_;
};

/// d(X,Y) = e(X,Y) / (|X||Y|) as an exact rational. X and Y must be disjoint
/// and nonempty.
Rational density(const DenseGraph& g, const VertexSet& x, const VertexSet& y);

/// Uniform random simple graph on n vertices with maximum degree at most
/// max_degree, deterministic in the seed. The result is always properly
/// max_degree-colorable (draws are retried past Brooks obstructions), so it
/// can serve directly as an embedding target.
DenseGraph random_bounded_degree_graph(int n, int max_degree, uint64_t seed);

} // namespace folkreg
