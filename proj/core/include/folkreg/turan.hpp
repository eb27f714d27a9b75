#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "folkreg/rational.hpp"

namespace folkreg {

struct ReducedEdgeLabel {
    std::vector<Rational> densities; // one per color
    bool regular = true;
};

/// Graph on the clusters of a partition: p parts with k cluster nodes each,
/// node id = part * k + cluster, edges only between distinct parts, every
/// edge labeled.
class ReducedGraph {
public:
    ReducedGraph(int parts, int clusters_per_part);

    int parts() const { return p_; }
    int clusters_per_part() const { return k_; }
    int node_count() const { return p_ * k_; }
    int node(int s, int i) const { return s * k_ + i; }
    int part_of(int id) const { return id / k_; }
    int cluster_of(int id) const { return id % k_; }

    void add_edge(int a, int b, ReducedEdgeLabel label);
    bool has_edge(int a, int b) const;
    const ReducedEdgeLabel& label(int a, int b) const;
    long long edge_count() const { return m_; }

private:
    int p_;
    int k_;
    long long m_;
    std::vector<char> adj_;
    std::vector<ReducedEdgeLabel> labels_;
};

/// t_p(k) = (C(p,2) - 1) * k^2, the maximum edge count of a K_p-free
/// subgraph of the complete p-partite graph with k vertices per part.
long long turan_bound(int p, int k);

/// Independent check of turan_bound by exhaustive enumeration over all edge
/// subsets of K_p(k), testing every transversal p-clique. Refuses instances
/// with more than 24 cross edges (CapacityError).
long long max_kp_free_oracle(int p, int k);

/// K_p(k) minus the k^2 edges between parts 0 and 1: a K_p-free subgraph
/// witnessing the lower bound, with exactly turan_bound(p, k) edges.
ReducedGraph extremal_construction(int p, int k);

/// First transversal clique (one cluster per part, pairwise adjacent under
/// `keep`) in deterministic backtracking order, or nullopt. Whenever the
/// filtered edge count exceeds turan_bound(p, k), a clique exists and is
/// found.
std::optional<std::vector<int>> find_cluster_clique(
    const ReducedGraph& f, const std::function<bool(int, int)>& keep);

/// Enumerates transversal cliques in ascending lexicographic order of node
/// ids; `visit` returns false to stop early. Returns true when the
/// enumeration ran to completion.
bool for_each_cluster_clique(const ReducedGraph& f, const std::function<bool(int, int)>& keep,
                             const std::function<bool(const std::vector<int>&)>& visit);

} // namespace folkreg
