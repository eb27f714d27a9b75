#include <doctest.h>

#include <string>

#include "folkreg/embedding.hpp"
#include "folkreg/regularity.hpp"
#include "support/oracles.hpp"

using namespace folkreg;

namespace {

DenseGraph path(int n) {
    DenseGraph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

DenseGraph complete(int n) {
    DenseGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

DenseGraph cycle(int n) {
    DenseGraph g = path(n);
    g.add_edge(0, n - 1);
    return g;
}

// three pairwise-complete clusters of the given size on one ambient graph
std::pair<DenseGraph, std::vector<VertexSet>> complete_clusters(int count, int size) {
    int n = count * size;
    DenseGraph g(n);
    std::vector<VertexSet> clusters;
    for (int c = 0; c < count; ++c)
        clusters.push_back(VertexSet::range(n, c * size, (c + 1) * size));
    for (int c1 = 0; c1 < count; ++c1)
        for (int c2 = c1 + 1; c2 < count; ++c2)
            for (int u = c1 * size; u < (c1 + 1) * size; ++u)
                for (int v = c2 * size; v < (c2 + 1) * size; ++v) g.add_edge(u, v);
    return {std::move(g), std::move(clusters)};
}

} // namespace

TEST_CASE("a path gets the alternating two-coloring") {
    std::vector<int> phi = proper_coloring(path(4), 2);
    CHECK(phi == std::vector<int>{0, 1, 0, 1});
}

TEST_CASE("K4 admits no 3-coloring and the error names the obstruction") {
    try {
        proper_coloring(complete(4), 3);
        FAIL("expected infeasibility");
    } catch (const InfeasibleError& e) {
        CHECK(std::string(e.what()).find("complete graph") != std::string::npos);
    }
}

TEST_CASE("an odd cycle admits no 2-coloring and the error names it") {
    try {
        proper_coloring(cycle(5), 2);
        FAIL("expected infeasibility");
    } catch (const InfeasibleError& e) {
        CHECK(std::string(e.what()).find("odd cycle") != std::string::npos);
    }
}

TEST_CASE("degree precondition is checked before searching") {
    CHECK_THROWS_AS(proper_coloring(complete(5), 3), ArgumentError);
}

TEST_CASE("random bounded-degree graphs get verified proper colorings") {
    for (uint64_t seed = 0; seed < 15; ++seed) {
        DenseGraph g = random_bounded_degree_graph(8, 3, seed);
        std::vector<int> phi = proper_coloring(g, 3);
        for (auto [u, v] : g.edges()) CHECK(phi[u] != phi[v]);
        for (int v : phi) CHECK((0 <= v && v < 3));
    }
}

TEST_CASE("good vertex set keeps everything on a complete pair") {
    auto pair = test::random_bipartite_pair(6, 6, 1, 1, 0);
    VertexSet good = good_vertex_set(pair.graph, pair.a, pair.b, Rational(1), Rational(1, 10));
    CHECK(good == pair.a);
}

TEST_CASE("good vertex set keeps everything when the threshold is negative") {
    DenseGraph g(12);
    VertexSet a = VertexSet::range(12, 0, 6), b = VertexSet::range(12, 6, 12);
    VertexSet good = good_vertex_set(g, a, b, Rational(0), Rational(1, 10));
    CHECK(good == a);
}

TEST_CASE("good vertex set of a certified regular pair keeps a (1-eps) share") {
    // complete pairs with a couple of edges removed certify regular at this
    // scale while keeping nontrivial degrees
    int total = 0;
    for (uint64_t seed = 0; seed < 30; ++seed) {
        std::mt19937_64 rng(mix64(seed));
        int side = 8 + draw_below(rng, 3);
        DenseGraph g(2 * side);
        for (int u = 0; u < side; ++u)
            for (int v = side; v < 2 * side; ++v)
                if (!(u == draw_below(rng, side) && v == side + draw_below(rng, side)))
                    g.add_edge(u, v);
        VertexSet a = VertexSet::range(2 * side, 0, side);
        VertexSet b = VertexSet::range(2 * side, side, 2 * side);
        Rational eps(3, 10);
        PairStats st = check_pair_exhaustive(g, a, b, eps);
        if (st.verdict != Verdict::Regular) continue;
        ++total;
        auto bv = b.to_vector();
        int want = 4 + draw_below(rng, side - 4); // strictly above eps * side
        for (size_t i = bv.size(); i > 1; --i)
            std::swap(bv[i - 1], bv[draw_below(rng, static_cast<int>(i))]);
        VertexSet y(g.order());
        for (int i = 0; i < want; ++i) y.add(bv[i]);
        VertexSet good = good_vertex_set(g, a, y, st.density, eps);
        CHECK(Rational(good.size()) >= (Rational(1) - eps) * Rational(a.size()));
    }
    CHECK(total > 0);
}

TEST_CASE("a triangle embeds into pairwise-complete clusters as the first transversal") {
    auto [g, clusters] = complete_clusters(3, 5);
    TargetGraph t = TargetGraph::with_proper_coloring(complete(3), 3);
    auto outcome = embed(t, g, clusters, Rational(1, 10), Rational(1, 2));
    REQUIRE(std::holds_alternative<EmbeddingState>(outcome));
    const auto& st = std::get<EmbeddingState>(outcome);
    CHECK(st.images == std::vector<int>{0, 5, 10});
    CHECK(verify_embedding(t, st, g));
}

TEST_CASE("edgeless clusters starve the first constrained step") {
    int n = 6;
    DenseGraph g(n); // no edges anywhere
    std::vector<VertexSet> clusters{VertexSet::range(n, 0, 3), VertexSet::range(n, 3, 6)};
    TargetGraph t = TargetGraph::with_proper_coloring(path(2), 2);
    auto outcome = embed(t, g, clusters, Rational(1, 10), Rational(1, 2));
    REQUIRE(std::holds_alternative<FailureTrace>(outcome));
    const auto& trace = std::get<FailureTrace>(outcome);
    CHECK(trace.step == 0);
    CHECK(trace.to_line().rfind("fail step=0 candidates=0 targets=", 0) == 0);
}

TEST_CASE("embedding a single vertex works and verifies") {
    DenseGraph g(4);
    std::vector<VertexSet> clusters{VertexSet::range(4, 0, 4)};
    TargetGraph t = TargetGraph::with_proper_coloring(DenseGraph(1), 1);
    auto outcome = embed(t, g, clusters, Rational(1, 10), Rational(1, 2));
    REQUIRE(std::holds_alternative<EmbeddingState>(outcome));
    CHECK(verify_embedding(t, std::get<EmbeddingState>(outcome), g));
}

TEST_CASE("random dense clusters host a verified bounded-degree embedding") {
    std::mt19937_64 rng(777);
    int successes = 0;
    for (uint64_t seed = 0; seed < 8; ++seed) {
        // three clusters of 64, cross densities around 0.7
        int size = 64, n = 3 * size;
        DenseGraph g(n);
        std::mt19937_64 edge_rng(mix64(seed * 3 + 1));
        for (int c1 = 0; c1 < 3; ++c1)
            for (int c2 = c1 + 1; c2 < 3; ++c2)
                for (int u = c1 * size; u < (c1 + 1) * size; ++u)
                    for (int v = c2 * size; v < (c2 + 1) * size; ++v)
                        if (edge_rng() % 10 < 7) g.add_edge(u, v);
        std::vector<VertexSet> clusters;
        for (int c = 0; c < 3; ++c)
            clusters.push_back(VertexSet::range(n, c * size, (c + 1) * size));
        // sampling certification of every cluster pair
        bool all_probably_regular = true;
        for (int c1 = 0; c1 < 3; ++c1)
            for (int c2 = c1 + 1; c2 < 3; ++c2) {
                PairStats st = check_pair_sampled(g, clusters[c1], clusters[c2],
                                                  Rational(1, 10), 100, seed + c1 * 7 + c2);
                all_probably_regular &= st.verdict != Verdict::Irregular;
            }
        if (!all_probably_regular) continue;
        DenseGraph target = random_bounded_degree_graph(8, 3, seed + 100);
        TargetGraph t = TargetGraph::with_proper_coloring(target, 3);
        auto outcome = embed(t, g, clusters, Rational(1, 10), Rational(1, 2));
        REQUIRE(std::holds_alternative<EmbeddingState>(outcome));
        const auto& st = std::get<EmbeddingState>(outcome);
        CHECK(verify_embedding(t, st, g));
        // target sets shrink at most delta times: recorded per-step pools stay positive
        for (const auto& step : st.history) CHECK(step.candidates > 0);
        ++successes;
    }
    CHECK(successes >= 6);
    (void)rng;
}

TEST_CASE("embedding is deterministic") {
    auto [g, clusters] = complete_clusters(3, 7);
    DenseGraph target = random_bounded_degree_graph(6, 3, 3);
    TargetGraph t = TargetGraph::with_proper_coloring(target, 3);
    auto o1 = embed(t, g, clusters, Rational(1, 10), Rational(1, 2));
    auto o2 = embed(t, g, clusters, Rational(1, 10), Rational(1, 2));
    REQUIRE(std::holds_alternative<EmbeddingState>(o1));
    CHECK(std::get<EmbeddingState>(o1).images == std::get<EmbeddingState>(o2).images);
}

TEST_CASE("perturbing one image to a non-neighbor breaks verification") {
    auto [g, clusters] = complete_clusters(2, 4);
    // remove one cross edge so a non-neighbor exists inside the right cluster
    DenseGraph broken(8);
    for (auto [u, v] : g.edges())
        if (!(u == 1 && v == 5)) broken.add_edge(u, v);
    TargetGraph t = TargetGraph::with_proper_coloring(path(2), 2);
    auto outcome = embed(t, broken, clusters, Rational(1, 10), Rational(1, 2));
    REQUIRE(std::holds_alternative<EmbeddingState>(outcome));
    EmbeddingState st = std::get<EmbeddingState>(outcome);
    CHECK(verify_embedding(t, st, broken));
    st.images = {1, 5}; // 1-5 is the deleted edge
    CHECK_FALSE(verify_embedding(t, st, broken));
}

TEST_CASE("verification rejects incomplete states and duplicate images") {
    auto [g, clusters] = complete_clusters(2, 3);
    TargetGraph t = TargetGraph::with_proper_coloring(path(2), 2);
    EmbeddingState st;
    st.clusters = clusters;
    st.images = {0, -1};
    CHECK_THROWS_AS(verify_embedding(t, st, g), ArgumentError);
    TargetGraph t2 = TargetGraph::with_proper_coloring(DenseGraph(2), 2);
    st.images = {0, 0};
    CHECK_FALSE(verify_embedding(t2, st, g));
}

TEST_CASE("per-step ledger holds on comfortably regular instances") {
    auto [g, clusters] = complete_clusters(3, 9);
    DenseGraph target = random_bounded_degree_graph(7, 3, 9);
    TargetGraph t = TargetGraph::with_proper_coloring(target, 3);
    EmbedOptions opts;
    opts.certified = true; // complete pairs: the bound must hold at every step
    auto outcome = embed(t, g, clusters, Rational(1, 10), Rational(1, 2), opts);
    REQUIRE(std::holds_alternative<EmbeddingState>(outcome));
    for (const auto& step : std::get<EmbeddingState>(outcome).history) CHECK(step.ledger_ok);
}
