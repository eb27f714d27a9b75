#include "folkreg/embedding.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "folkreg/prng.hpp"

namespace folkreg {

namespace {

bool coloring_rec(const DenseGraph& g, std::vector<int>& col, int v, int delta) {
    if (v == g.order()) return true;
    for (int c = 0; c < delta; ++c) {
        bool ok = true;
        for (int u = 0; u < v && ok; ++u)
            if (col[u] == c && g.has_edge(u, v)) ok = false;
        if (!ok) continue;
        col[v] = c;
        if (coloring_rec(g, col, v + 1, delta)) return true;
        col[v] = -1;
    }
    return false;
}

// connected component of v
std::vector<int> component_of(const DenseGraph& g, int v) {
    std::vector<int> comp{v}, stack{v};
    std::vector<char> seen(g.order(), 0);
    seen[v] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w = 0; w < g.order(); ++w)
            if (!seen[w] && g.has_edge(u, w)) {
                seen[w] = 1;
                comp.push_back(w);
                stack.push_back(w);
            }
    }
    std::sort(comp.begin(), comp.end());
    return comp;
}

std::string brooks_obstruction(const DenseGraph& g, int delta) {
    std::vector<char> visited(g.order(), 0);
    for (int v = 0; v < g.order(); ++v) {
        if (visited[v]) continue;
        auto comp = component_of(g, v);
        for (int u : comp) visited[u] = 1;
        int sz = static_cast<int>(comp.size());
        if (sz == delta + 1) {
            bool complete = true;
            for (size_t i = 0; i < comp.size() && complete; ++i)
                for (size_t j = i + 1; j < comp.size() && complete; ++j)
                    complete = g.has_edge(comp[i], comp[j]);
            if (complete)
                return "component {" + std::to_string(comp[0]) + "..} is a complete graph on " +
                       std::to_string(sz) + " vertices";
        }
        if (delta == 2 && sz % 2 == 1 && sz >= 3) {
            bool cycle = true;
            for (int u : comp) cycle = cycle && g.degree(u) == 2;
            if (cycle)
                return "component {" + std::to_string(comp[0]) + "..} is an odd cycle of length " +
                       std::to_string(sz);
        }
    }
    return "no proper coloring with the requested number of colors";
}

} // namespace

std::vector<int> proper_coloring(const DenseGraph& g, int delta) {
    if (delta < 1) throw ArgumentError("need at least one color");
    for (int v = 0; v < g.order(); ++v)
        if (g.degree(v) > delta)
            throw ArgumentError("vertex " + std::to_string(v) + " has degree " +
                                std::to_string(g.degree(v)) + " > " + std::to_string(delta));
    std::vector<int> col(g.order(), -1);
    if (coloring_rec(g, col, 0, delta)) return col;
    throw InfeasibleError("no " + std::to_string(delta) +
                          "-coloring exists: " + brooks_obstruction(g, delta));
}

TargetGraph TargetGraph::with_proper_coloring(DenseGraph g, int delta) {
    TargetGraph t;
    t.phi = proper_coloring(g, delta);
    t.graph = std::move(g);
    t.delta = delta;
    return t;
}

void TargetGraph::validate() const {
    if (static_cast<int>(phi.size()) != graph.order())
        throw StateError("coloring size does not match the target order");
    for (int v = 0; v < graph.order(); ++v)
        if (phi[v] < 0 || phi[v] >= delta) throw StateError("coloring value out of range");
    for (auto [u, v] : graph.edges())
        if (phi[u] == phi[v]) throw StateError("coloring is not proper");
}

VertexSet good_vertex_set(const DenseGraph& g, const VertexSet& a, const VertexSet& y,
                          const Rational& d, const Rational& eps) {
    if (a.empty() || y.empty()) throw ArgumentError("good_vertex_set on an empty set");
    if (!a.disjoint_with(y)) throw ArgumentError("good_vertex_set on overlapping sets");
    Rational threshold = (d - eps) * Rational(y.size());
    VertexSet out(a.universe());
    for (int v : a.to_vector())
        if (Rational(g.degree_into(v, y)) >= threshold) out.add(v);
    return out;
}

bool EmbeddingState::complete() const {
    return std::all_of(images.begin(), images.end(), [](int v) { return v >= 0; });
}

std::string FailureTrace::to_line() const {
    std::ostringstream os;
    os << "fail step=" << step << " candidates=0 targets=";
    for (size_t i = 0; i < target_sizes.size(); ++i) {
        if (i) os << ",";
        os << target_sizes[i];
    }
    return os.str();
}

std::variant<EmbeddingState, FailureTrace> embed(const TargetGraph& t, const DenseGraph& g,
                                                 const std::vector<VertexSet>& clusters,
                                                 const Rational& eps, const Rational& d_floor,
                                                 const EmbedOptions& opts) {
    t.validate();
    if (clusters.empty()) throw ArgumentError("no clusters supplied");
    for (size_t i = 0; i < clusters.size(); ++i) {
        if (clusters[i].empty()) throw ArgumentError("empty cluster");
        for (size_t j = i + 1; j < clusters.size(); ++j)
            if (!clusters[i].disjoint_with(clusters[j]))
                throw ArgumentError("clusters overlap");
    }
    int n = t.graph.order();
    for (int v = 0; v < n; ++v)
        if (t.phi[v] >= static_cast<int>(clusters.size()))
            throw ArgumentError("coloring uses more clusters than supplied");

    EmbeddingState st;
    st.clusters = clusters;
    st.images.assign(n, -1);
    st.targets.reserve(n);
    for (int v = 0; v < n; ++v) st.targets.push_back(clusters[t.phi[v]]);

    std::vector<int> restrictions(n, 0);
    std::mt19937_64 rng(derive_seed(opts.seed, 0xe3bed));

    for (int i = 0; i < n; ++i) {
        std::vector<int> future;
        int embedded_nbrs = 0;
        for (int j = 0; j < n; ++j) {
            if (!t.graph.has_edge(i, j)) continue;
            if (j > i) future.push_back(j);
            else ++embedded_nbrs;
        }

        VertexSet cand = st.targets[i];
        for (int j : future)
            cand = cand.intersect(good_vertex_set(g, st.targets[i], st.targets[j], d_floor, eps));

        if (cand.empty()) {
            FailureTrace trace;
            trace.step = i;
            trace.target_sizes.reserve(n);
            for (int v = 0; v < n; ++v)
                trace.target_sizes.push_back(st.images[v] >= 0 ? 0 : st.targets[v].size());
            return trace;
        }

        // per-step size ledger: |Y_i^i| >= (1 - d2*eps)(d_floor - eps)^d1 |Y_i^0|
        Rational bound = (Rational(1) - Rational(static_cast<long long>(future.size())) * eps) *
                         (d_floor - eps).pow(static_cast<unsigned>(embedded_nbrs)) *
                         Rational(clusters[t.phi[i]].size());
        bool ledger_ok = Rational(cand.size()) >= bound;
        if (!ledger_ok && opts.certified)
            throw StateError("target-set ledger violated at step " + std::to_string(i));

        int v;
        if (opts.randomized) {
            auto pool = cand.to_vector();
            v = pool[draw_below(rng, static_cast<int>(pool.size()))];
        } else {
            v = cand.first();
        }
        st.images[i] = v;
        st.history.push_back({i, v, cand.size(), ledger_ok});
        ++st.steps_done;

        for (int j = i + 1; j < n; ++j) {
            if (st.images[j] >= 0) continue;
            if (t.graph.has_edge(i, j)) {
                st.targets[j] = g.neighbors_in(v, st.targets[j]);
                if (++restrictions[j] > t.delta)
                    throw StateError("target set restricted more than delta times");
            }
            if (t.phi[j] == t.phi[i]) st.targets[j].remove(v);
        }
    }
    return st;
}

bool verify_embedding(const TargetGraph& t, const EmbeddingState& state, const DenseGraph& g) {
    if (!state.complete()) throw ArgumentError("embedding incomplete");
    int n = t.graph.order();
    if (static_cast<int>(state.images.size()) != n) throw ArgumentError("image count mismatch");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (state.images[i] == state.images[j]) return false;
    for (int i = 0; i < n; ++i)
        if (!state.clusters[t.phi[i]].contains(state.images[i])) return false;
    for (auto [u, v] : t.graph.edges())
        if (!g.has_edge(state.images[u], state.images[v])) return false;
    return true;
}

} // namespace folkreg
