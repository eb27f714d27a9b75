#pragma once

// Brute-force oracles and instance builders shared by the test suites. The
// oracles enumerate blindly and never call the code paths they check.

#include <optional>
#include <random>
#include <vector>

#include "folkreg/graph.hpp"
#include "folkreg/host.hpp"
#include "folkreg/prng.hpp"
#include "folkreg/rational.hpp"
#include "folkreg/vertex_set.hpp"

namespace folkreg::test {

// max |d(X',Y') - d(A,B)| over all strictly admissible subset pairs, by full
// double enumeration; usable up to ~10 vertices per side
inline std::optional<Rational> oracle_max_deviation(const DenseGraph& g, const VertexSet& a,
                                                    const VertexSet& b, const Rational& eps) {
    auto av = a.to_vector();
    auto bv = b.to_vector();
    int na = static_cast<int>(av.size()), nb = static_cast<int>(bv.size());
    Rational d_full = density(g, a, b);
    std::optional<Rational> best;
    for (uint32_t ma = 1; ma < (1u << na); ++ma) {
        int sa = std::popcount(ma);
        if (Rational(sa) <= eps * Rational(na)) continue;
        VertexSet x(g.order());
        for (int i = 0; i < na; ++i)
            if ((ma >> i) & 1u) x.add(av[i]);
        for (uint32_t mb = 1; mb < (1u << nb); ++mb) {
            int sb = std::popcount(mb);
            if (Rational(sb) <= eps * Rational(nb)) continue;
            VertexSet y(g.order());
            for (int j = 0; j < nb; ++j)
                if ((mb >> j) & 1u) y.add(bv[j]);
            Rational dev = (density(g, x, y) - d_full).abs();
            if (!best || dev > *best) best = dev;
        }
    }
    return best;
}

// graph on [0, n) with each candidate edge kept with probability num/den
inline DenseGraph random_graph(int n, int num, int den, uint64_t seed) {
    std::mt19937_64 rng(mix64(seed));
    DenseGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (static_cast<int>(rng() % den) < num) g.add_edge(u, v);
    return g;
}

// bipartite graph between [0, na) and [na, na+nb) with edge probability num/den
struct BipartitePair {
    DenseGraph graph;
    VertexSet a;
    VertexSet b;
};

inline BipartitePair random_bipartite_pair(int na, int nb, int num, int den, uint64_t seed) {
    std::mt19937_64 rng(mix64(seed));
    DenseGraph g(na + nb);
    for (int u = 0; u < na; ++u)
        for (int v = na; v < na + nb; ++v)
            if (static_cast<int>(rng() % den) < num) g.add_edge(u, v);
    VertexSet a = VertexSet::range(na + nb, 0, na);
    VertexSet b = VertexSet::range(na + nb, na, na + nb);
    return {std::move(g), std::move(a), std::move(b)};
}

// two perfect 4x4 blocks and nothing else: vertices 0..7 against 8..15
inline BipartitePair block_diagonal_pair() {
    DenseGraph g(16);
    for (int u = 0; u < 4; ++u)
        for (int v = 8; v < 12; ++v) g.add_edge(u, v);
    for (int u = 4; u < 8; ++u)
        for (int v = 12; v < 16; ++v) g.add_edge(u, v);
    return {std::move(g), VertexSet::range(16, 0, 8), VertexSet::range(16, 8, 16)};
}

// complete bipartite host K_{size,size}, every edge color 0 of r colors
inline PartiteHost complete_bipartite_host(int size, int r = 1) {
    DenseGraph g(2 * size);
    std::vector<int> colors;
    for (int u = 0; u < size; ++u)
        for (int v = size; v < 2 * size; ++v) {
            g.add_edge(u, v);
            colors.push_back(0);
        }
    return PartiteHost({size, size}, std::move(g), r, colors);
}

// bipartite host whose single cross pair has density exactly num/den
inline PartiteHost uniform_density_host(int size, int num, int den) {
    DenseGraph g(2 * size);
    std::vector<int> colors;
    long long want = static_cast<long long>(size) * size * num / den;
    long long placed = 0;
    for (int u = 0; u < size && placed < want; ++u)
        for (int v = size; v < 2 * size && placed < want; ++v) {
            g.add_edge(u, v);
            colors.push_back(0);
            ++placed;
        }
    return PartiteHost({size, size}, std::move(g), 1, colors);
}

// the block-diagonal instance as a 2-part host (parts of 8, only the two
// 4x4 blocks present is not a complete host, so no coloring is attached)
inline PartiteHost block_diagonal_host() {
    auto pair = block_diagonal_pair();
    return PartiteHost({8, 8}, std::move(pair.graph));
}

} // namespace folkreg::test
