#include <doctest.h>

#include "folkreg/harness.hpp"
#include "support/oracles.hpp"

using namespace folkreg;

namespace {

PartiteHost one_color_host(int p, int size, int r) {
    DenseGraph g(p * size);
    std::vector<int> colors;
    for (int u = 0; u < p * size; ++u)
        for (int v = u + 1; v < p * size; ++v) {
            if (u / size == v / size) continue;
            g.add_edge(u, v);
            colors.push_back(0);
        }
    return PartiteHost(std::vector<int>(p, size), std::move(g), r, colors);
}

VerdictTable trivial_verdicts(const PartiteHost& host, const Partition& p,
                              const std::vector<int>& colors) {
    RegularityParams params;
    params.epsilon = Rational(1, 4);
    params.sample_trials = 8;
    return compute_verdicts(host, p, params, colors);
}

} // namespace

TEST_CASE("known Ramsey lookups") {
    CHECK(known_ramsey(3, 2) == 6);
    CHECK(known_ramsey(4, 2) == 18);
    CHECK(known_ramsey(3, 3) == 17);
    CHECK_FALSE(known_ramsey(5, 2).has_value());
}

TEST_CASE("reduced graph of an all-regular table is complete") {
    PartiteHost host = one_color_host(3, 6, 2);
    Partition p = initial_partition(host, 2);
    VerdictTable verdicts = trivial_verdicts(host, p, all_colors(host));
    ReducedGraph g = reduced_graph(host, p, verdicts);
    CHECK(g.edge_count() == 3 * 2 * 2); // C(3,2) part pairs, k^2 each
    // labels carry the per-color densities
    const auto& label = g.label(g.node(0, 0), g.node(1, 0));
    CHECK(label.densities.size() == 2);
    CHECK(label.densities[0] == Rational(1));
    CHECK(label.densities[1] == Rational(0));
}

TEST_CASE("one irregular verdict removes exactly one reduced edge") {
    PartiteHost host = one_color_host(2, 6, 1);
    Partition p = initial_partition(host, 2);
    VerdictTable verdicts = trivial_verdicts(host, p, {0});
    PairStats bad;
    bad.density = Rational(1);
    bad.verdict = Verdict::Irregular;
    bad.witness = PairWitness{VertexSet::range(12, 0, 1), VertexSet::range(12, 6, 7),
                              Rational(1, 2)};
    verdicts.put(0, 1, 1, 0, 0, bad);
    ReducedGraph g = reduced_graph(host, p, verdicts);
    CHECK(g.edge_count() == 3);
    CHECK_FALSE(g.has_edge(g.node(0, 1), g.node(1, 0)));
}

TEST_CASE("reduced graph demands a complete verdict table") {
    PartiteHost host = one_color_host(2, 4, 1);
    Partition p = initial_partition(host, 2);
    VerdictTable empty(2, 2, {0});
    CHECK_THROWS_AS(reduced_graph(host, p, empty), StateError);
}

TEST_CASE("single-color density step returns the first delta clusters") {
    ReducedGraph g(4, 1);
    for (int s = 0; s < 4; ++s)
        for (int t = s + 1; t < 4; ++t)
            g.add_edge(g.node(s, 0), g.node(t, 0), {{Rational(1)}, true});
    auto out = density_color_clique(g, {0, 1, 2, 3}, 3, 1);
    REQUIRE(out.found);
    CHECK(out.color == 0);
    CHECK(out.nodes == std::vector<int>{0, 1, 2});
}

TEST_CASE("pentagon-pentagram coloring of five clusters has no mono triangle") {
    // densities arranged so color 0 wins exactly on the C5 edges
    ReducedGraph g(5, 1);
    auto on_c5 = [](int a, int b) {
        int d = (b - a + 5) % 5;
        return d == 1 || d == 4;
    };
    for (int s = 0; s < 5; ++s)
        for (int t = s + 1; t < 5; ++t) {
            ReducedEdgeLabel label;
            label.densities = on_c5(s, t)
                                  ? std::vector<Rational>{Rational(1), Rational(0)}
                                  : std::vector<Rational>{Rational(0), Rational(1)};
            g.add_edge(g.node(s, 0), g.node(t, 0), std::move(label));
        }
    auto out = density_color_clique(g, {0, 1, 2, 3, 4}, 3, 2);
    CHECK_FALSE(out.found);
    // the coloring is carried back for diagnostics
    CHECK(out.pair_color[0][1] == 0);
    CHECK(out.pair_color[0][2] == 1);
}

TEST_CASE("six clusters always yield a mono triangle whatever the densities") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 50; ++round) {
        ReducedGraph g(6, 1);
        for (int s = 0; s < 6; ++s)
            for (int t = s + 1; t < 6; ++t) {
                bool red = rng() & 1;
                ReducedEdgeLabel label;
                label.densities = red ? std::vector<Rational>{Rational(3, 4), Rational(1, 4)}
                                      : std::vector<Rational>{Rational(1, 4), Rational(3, 4)};
                g.add_edge(g.node(s, 0), g.node(t, 0), std::move(label));
            }
        auto out = density_color_clique(g, {0, 1, 2, 3, 4, 5}, 3, 2);
        REQUIRE(out.found);
        // the three nodes really are monochromatic under the assigned colors
        for (size_t x = 0; x < out.nodes.size(); ++x)
            for (size_t y = x + 1; y < out.nodes.size(); ++y)
                CHECK(out.pair_color[out.nodes[x]][out.nodes[y]] == out.color);
    }
}

TEST_CASE("density step requires pairwise adjacency and a 1/r color") {
    ReducedGraph g(3, 1);
    g.add_edge(0, 1, {{Rational(1)}, true});
    CHECK_THROWS_AS(density_color_clique(g, {0, 1, 2}, 3, 1), ArgumentError);
    // a pair whose densities all miss 1/r trips the pigeonhole assertion
    ReducedGraph h(2, 1);
    h.add_edge(0, 1, {{Rational(1, 4), Rational(1, 4)}, true});
    CHECK_THROWS_AS(density_color_clique(h, {0, 1}, 1, 2), StateError);
}

TEST_CASE("feasible epsilon for delta 3, two colors, m 64 is 1/8") {
    Rational eps = feasible_epsilon(3, 2, 64);
    CHECK(eps == Rational(1, 8));
    CHECK(eps >= Rational(1, 1024));
    // direct re-check of the margin
    Rational lhs = (Rational(1) - Rational(3) * eps) * (Rational(1, 2) - eps).pow(3) *
                   Rational(64);
    CHECK(lhs >= Rational(1));
}

TEST_CASE("feasible epsilon respects the 1/p^2 cap") {
    Rational eps = feasible_epsilon(3, 2, 4096, 6);
    CHECK(eps <= Rational(1, 36));
}

TEST_CASE("m below r^delta is infeasible") {
    CHECK_THROWS_AS(feasible_epsilon(3, 2, 7), InfeasibleError);
}

TEST_CASE("m at the r^delta boundary is still infeasible for positive epsilon") {
    CHECK_THROWS_AS(feasible_epsilon(3, 2, 8), InfeasibleError);
}

TEST_CASE("pipeline succeeds on a host colored with a single color") {
    PartiteHost host = one_color_host(6, 10, 2);
    DenseGraph target = random_bounded_degree_graph(5, 3, 17);
    PipelineConfig cfg;
    cfg.part_size = 10;
    cfg.seed = 17;
    PipelineReport rep = run_pipeline(host, target, cfg);
    CHECK(rep.success);
    CHECK(rep.verified);
    CHECK(rep.colorstep.color == 0);
}

TEST_CASE("pipeline rejects targets above the degree bound") {
    PartiteHost host = one_color_host(6, 8, 2);
    DenseGraph k5(5);
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) k5.add_edge(u, v);
    PipelineConfig cfg;
    cfg.part_size = 8;
    CHECK_THROWS_AS(run_pipeline(host, k5, cfg), ArgumentError);
}

TEST_CASE("pipeline rejects incomplete hosts and wrong part counts") {
    PartiteHost bad_parts = one_color_host(5, 8, 2);
    DenseGraph target = random_bounded_degree_graph(4, 3, 0);
    PipelineConfig cfg;
    cfg.part_size = 8;
    CHECK_THROWS_AS(run_pipeline(bad_parts, target, cfg), ArgumentError);

    PartiteHost incomplete = test::block_diagonal_host();
    CHECK_THROWS_AS(run_pipeline(incomplete, target, cfg), ArgumentError);
}

TEST_CASE("pipeline reports are deterministic apart from timings") {
    PartiteHost host = random_host(6, 24, 2, 404);
    DenseGraph target = random_bounded_degree_graph(6, 3, 404);
    PipelineConfig cfg;
    cfg.part_size = 24;
    cfg.seed = 404;
    PipelineReport r1 = run_pipeline(host, target, cfg);
    PipelineReport r2 = run_pipeline(host, target, cfg);
    CHECK(r1.to_text(false) == r2.to_text(false));
}

TEST_CASE("any reported pipeline success replays against raw adjacency") {
    for (uint64_t seed : {31ull, 32ull, 33ull}) {
        PartiteHost host = random_host(6, 24, 2, seed);
        DenseGraph target = random_bounded_degree_graph(7, 3, seed);
        PipelineConfig cfg;
        cfg.part_size = 24;
        cfg.seed = seed;
        PipelineReport rep = run_pipeline(host, target, cfg);
        if (!rep.success) continue;
        REQUIRE(rep.embedding.has_value());
        TargetGraph tg;
        tg.graph = target;
        tg.delta = cfg.delta;
        tg.phi = rep.target_coloring;
        CHECK(verify_embedding(tg, *rep.embedding,
                               host.monochrome_subgraph(rep.colorstep.color)));
        // the chosen clusters were pairwise non-irregular and each pair met
        // its density threshold in the winning color
        for (size_t x = 0; x < rep.colorstep.nodes.size(); ++x)
            for (size_t y = x + 1; y < rep.colorstep.nodes.size(); ++y) {
                int a = rep.colorstep.nodes[x], b = rep.colorstep.nodes[y];
                Rational d = density(host.monochrome_subgraph(rep.colorstep.color),
                                     rep.embedding->clusters[x], rep.embedding->clusters[y]);
                CHECK(d >= Rational(1, cfg.r));
                (void)a;
                (void)b;
            }
    }
}

TEST_CASE("strict-epsilon configs enforce the cap") {
    PipelineConfig cfg;
    cfg.strict_epsilon = true;
    cfg.epsilon = Rational(1, 10); // above 1/p^2 = 1/36
    CHECK_THROWS_AS(cfg.validate(), ArgumentError);
    cfg.epsilon = Rational(1, 40); // under both 1/36 and 1/m
    CHECK_NOTHROW(cfg.validate());
}
