#include "folkreg/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "folkreg/prng.hpp"

namespace folkreg {

DenseGraph::DenseGraph(int n) : n_(n), words_per_row_((n + 63) / 64), m_(0) {
    if (n < 0) throw ArgumentError("negative vertex count");
    data_.assign(static_cast<size_t>(n_) * words_per_row_, 0);
}

DenseGraph::DenseGraph(int n, const std::vector<std::pair<int, int>>& edges) : DenseGraph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
}

void DenseGraph::add_edge(int u, int v) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) throw ArgumentError("edge endpoint out of range");
    if (u == v) throw ArgumentError("loops are rejected");
    if (has_edge(u, v)) throw ArgumentError("duplicate edge rejected");
    mutable_row(u)[v >> 6] |= 1ull << (v & 63);
    mutable_row(v)[u >> 6] |= 1ull << (u & 63);
    ++m_;
}

int DenseGraph::degree(int v) const {
    int d = 0;
    for (uint64_t w : row(v)) d += std::popcount(w);
    return d;
}

int DenseGraph::degree_into(int v, const VertexSet& s) const {
    auto r = row(v);
    const auto& words = s.words();
    int d = 0;
    for (size_t i = 0; i < r.size() && i < words.size(); ++i)
        d += std::popcount(r[i] & words[i]);
    return d;
}

VertexSet DenseGraph::neighbors_in(int v, const VertexSet& s) const {
    VertexSet out(n_);
    auto r = row(v);
    const auto& words = s.words();
    for (size_t i = 0; i < r.size() && i < words.size(); ++i) {
        uint64_t w = r[i] & words[i];
        uint64_t bits = w;
        while (bits) {
            out.add(static_cast<int>(i * 64 + std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

VertexSet DenseGraph::neighborhood(int v) const {
    VertexSet all = VertexSet::range(n_, 0, n_);
    return neighbors_in(v, all);
}

long long DenseGraph::edges_between(const VertexSet& x, const VertexSet& y) const {
    long long e = 0;
    for (int v : x.to_vector()) e += degree_into(v, y);
    return e;
}

std::vector<std::pair<int, int>> DenseGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<size_t>(m_));
    for (int u = 0; u < n_; ++u) {
        auto r = row(u);
        for (size_t i = static_cast<size_t>(u) >> 6; i < r.size(); ++i) {
            uint64_t w = r[i];
            if (i == static_cast<size_t>(u) >> 6)
                w &= ~((u & 63) == 63 ? ~0ull : ((1ull << ((u & 63) + 1)) - 1));
            while (w) {
                int v = static_cast<int>(i * 64 + std::countr_zero(w));
                w &= w - 1;
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

Rational density(const DenseGraph& g, const VertexSet& x, const VertexSet& y) {
    if (x.empty() || y.empty()) throw ArgumentError("density of an empty set");
    if (!x.disjoint_with(y)) throw ArgumentError("density of overlapping sets");
    long long e = g.edges_between(x, y);
    return Rational(BigInt(e), BigInt(x.size()) * y.size());
}

namespace {

bool three_colorable_quick(const DenseGraph& g, int max_degree);

} // namespace

DenseGraph random_bounded_degree_graph(int n, int max_degree, uint64_t seed) {
    if (n < 1) throw ArgumentError("target order must be >= 1");
    if (max_degree < 0) throw ArgumentError("negative degree bound");
    for (uint64_t attempt = 0;; ++attempt) {
        std::mt19937_64 rng(derive_seed(seed, 0x7a26e7, attempt));
        std::vector<std::pair<int, int>> cand;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) cand.emplace_back(u, v);
        for (size_t i = cand.size(); i > 1; --i)
            std::swap(cand[i - 1], cand[draw_below(rng, static_cast<int>(i))]);

        DenseGraph g(n);
        std::vector<int> deg(n, 0);
        for (auto [u, v] : cand) {
            if (deg[u] < max_degree && deg[v] < max_degree && (rng() & 1)) {
                g.add_edge(u, v);
                ++deg[u];
                ++deg[v];
            }
        }
        if (three_colorable_quick(g, max_degree)) return g;
    }
}

namespace {

// Backtracking max_degree-colorability probe used only to filter generated
// targets; the embedding module has the real coloring routine.
bool color_rec(const DenseGraph& g, std::vector<int>& col, int v, int k) {
    if (v == g.order()) return true;
    for (int c = 0; c < k; ++c) {
        bool ok = true;
        for (int u = 0; u < v && ok; ++u)
            if (col[u] == c && g.has_edge(u, v)) ok = false;
        if (ok) {
            col[v] = c;
            if (color_rec(g, col, v + 1, k)) return true;
            col[v] = -1;
        }
    }
    return false;
}

bool three_colorable_quick(const DenseGraph& g, int max_degree) {
    if (max_degree == 0) return true;
    std::vector<int> col(g.order(), -1);
    return color_rec(g, col, 0, std::max(1, max_degree));
}

} // namespace

} // namespace folkreg
