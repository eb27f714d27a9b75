#include "folkreg/turan.hpp"

#include <bit>
#include <cstdint>

#include "folkreg/errors.hpp"

namespace folkreg {

ReducedGraph::ReducedGraph(int parts, int clusters_per_part)
    : p_(parts), k_(clusters_per_part), m_(0) {
    if (parts < 2) throw ArgumentError("reduced graph needs at least 2 parts");
    if (clusters_per_part < 1) throw ArgumentError("need at least 1 cluster per part");
    size_t n = static_cast<size_t>(node_count());
    adj_.assign(n * n, 0);
    labels_.resize(n * n);
}

void ReducedGraph::add_edge(int a, int b, ReducedEdgeLabel label) {
    if (a < 0 || b < 0 || a >= node_count() || b >= node_count())
        throw ArgumentError("reduced node out of range");
    if (part_of(a) == part_of(b)) throw ArgumentError("no edges inside a part");
    if (has_edge(a, b)) throw ArgumentError("duplicate reduced edge");
    size_t n = node_count();
    adj_[a * n + b] = adj_[b * n + a] = 1;
    labels_[a * n + b] = label;
    labels_[b * n + a] = std::move(label);
    ++m_;
}

bool ReducedGraph::has_edge(int a, int b) const {
    return adj_[static_cast<size_t>(a) * node_count() + b];
}

const ReducedEdgeLabel& ReducedGraph::label(int a, int b) const {
    if (!has_edge(a, b)) throw ArgumentError("label of a non-edge");
    return labels_[static_cast<size_t>(a) * node_count() + b];
}

long long turan_bound(int p, int k) {
    if (p < 2) throw ArgumentError("p must be >= 2");
    if (k < 1) throw ArgumentError("k must be >= 1");
    long long pairs = static_cast<long long>(p) * (p - 1) / 2;
    return (pairs - 1) * k * k;
}

long long max_kp_free_oracle(int p, int k) {
    if (p < 2) throw ArgumentError("p must be >= 2");
    if (k < 1) throw ArgumentError("k must be >= 1");
    long long pairs = static_cast<long long>(p) * (p - 1) / 2;
    long long num_edges = pairs * k * k;
    if (num_edges > 24)
        throw CapacityError("K_" + std::to_string(p) + "(" + std::to_string(k) + ") has " +
                            std::to_string(num_edges) + " cross edges; the oracle caps at 24");

    // enumerate the cross edges of K_p(k) in a fixed order
    int n = p * k;
    std::vector<int> edge_index(static_cast<size_t>(n) * n, -1);
    int e = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (u / k == v / k) continue;
            edge_index[static_cast<size_t>(u) * n + v] = e;
            edge_index[static_cast<size_t>(v) * n + u] = e;
            ++e;
        }

    // edge masks of all transversal p-cliques (one vertex per part)
    std::vector<uint32_t> cliques;
    std::vector<int> pick(p, 0);
    for (;;) {
        uint32_t mask = 0;
        for (int s = 0; s < p; ++s)
            for (int t = s + 1; t < p; ++t) {
                int u = s * k + pick[s], v = t * k + pick[t];
                mask |= 1u << edge_index[static_cast<size_t>(u) * n + v];
            }
        cliques.push_back(mask);
        int s = p - 1;
        while (s >= 0 && pick[s] == k - 1) pick[s--] = 0;
        if (s < 0) break;
        ++pick[s];
    }

    long long best = 0;
    uint32_t total = static_cast<uint32_t>(1u << num_edges);
    for (uint32_t mask = 0; mask < total; ++mask) {
        if (std::popcount(mask) <= best) continue; // cannot improve
        bool has_clique = false;
        for (uint32_t cm : cliques)
            if ((mask & cm) == cm) {
                has_clique = true;
                break;
            }
        if (!has_clique) best = std::popcount(mask);
    }
    return best;
}

ReducedGraph extremal_construction(int p, int k) {
    ReducedGraph g(p, k);
    for (int s = 0; s < p; ++s)
        for (int t = s + 1; t < p; ++t) {
            if (s == 0 && t == 1) continue; // the deleted part pair
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    g.add_edge(g.node(s, i), g.node(t, j), {{Rational(1)}, true});
        }
    return g;
}

namespace {

bool clique_rec(const ReducedGraph& f, const std::function<bool(int, int)>& keep,
                std::vector<int>& chosen, int part,
                const std::function<bool(const std::vector<int>&)>& visit, bool& keep_going) {
    if (part == f.parts()) {
        keep_going = visit(chosen);
        return !keep_going;
    }
    for (int i = 0; i < f.clusters_per_part(); ++i) {
        int node = f.node(part, i);
        bool ok = true;
        for (int prev : chosen)
            if (!f.has_edge(prev, node) || !keep(prev, node)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        chosen.push_back(node);
        bool stop = clique_rec(f, keep, chosen, part + 1, visit, keep_going);
        chosen.pop_back();
        if (stop) return true;
    }
    return false;
}

} // namespace

bool for_each_cluster_clique(const ReducedGraph& f, const std::function<bool(int, int)>& keep,
                             const std::function<bool(const std::vector<int>&)>& visit) {
    std::vector<int> chosen;
    chosen.reserve(f.parts());
    bool keep_going = true;
    clique_rec(f, keep, chosen, 0, visit, keep_going);
    return keep_going;
}

std::optional<std::vector<int>> find_cluster_clique(const ReducedGraph& f,
                                                    const std::function<bool(int, int)>& keep) {
    std::optional<std::vector<int>> found;
    for_each_cluster_clique(f, keep, [&](const std::vector<int>& clique) {
        found = clique;
        return false;
    });
    return found;
}

} // namespace folkreg
