#include <doctest.h>

#include "folkreg/regularity.hpp"
#include "support/oracles.hpp"

using namespace folkreg;

TEST_CASE("complete pair is regular at any epsilon") {
    auto pair = test::random_bipartite_pair(8, 8, 1, 1, 0);
    for (auto eps : {Rational(1, 10), Rational(3, 10), Rational(1, 2)}) {
        PairStats st = check_pair_exhaustive(pair.graph, pair.a, pair.b, eps);
        CHECK(st.verdict == Verdict::Regular);
        CHECK(st.density == Rational(1));
    }
}

TEST_CASE("edgeless pair is regular") {
    DenseGraph g(16);
    PairStats st = check_pair_exhaustive(g, VertexSet::range(16, 0, 8),
                                         VertexSet::range(16, 8, 16), Rational(3, 10));
    CHECK(st.verdict == Verdict::Regular);
    CHECK(st.density == Rational(0));
}

TEST_CASE("block-diagonal pair is irregular with an aligned-half witness") {
    auto pair = test::block_diagonal_pair();
    PairStats st = check_pair_exhaustive(pair.graph, pair.a, pair.b, Rational(3, 10));
    REQUIRE(st.verdict == Verdict::Irregular);
    REQUIRE(st.witness.has_value());
    CHECK(st.density == Rational(1, 2));
    CHECK(st.witness->deviation == Rational(1, 2));
    // the witness re-verifies from raw densities
    Rational dev =
        (density(pair.graph, st.witness->x, st.witness->y) - st.density).abs();
    CHECK(dev == st.witness->deviation);
    CHECK(Rational(st.witness->x.size()) > Rational(3, 10) * Rational(8));
    CHECK(Rational(st.witness->y.size()) > Rational(3, 10) * Rational(8));
    // full-enumeration oracle agrees that 1/2 is the maximum deviation
    auto oracle = test::oracle_max_deviation(pair.graph, pair.a, pair.b, Rational(3, 10));
    REQUIRE(oracle.has_value());
    CHECK(*oracle == Rational(1, 2));
}

TEST_CASE("exhaustive maximal deviation matches the full-enumeration oracle") {
    for (uint64_t seed = 0; seed < 25; ++seed) {
        auto pair = test::random_bipartite_pair(6 + seed % 3, 5 + seed % 4, 1 + seed % 3, 4,
                                                seed * 31 + 1);
        Rational eps(1, 4);
        PairStats st = check_pair_exhaustive(pair.graph, pair.a, pair.b, eps);
        auto oracle = test::oracle_max_deviation(pair.graph, pair.a, pair.b, eps);
        REQUIRE(oracle.has_value());
        if (st.verdict == Verdict::Irregular) {
            CHECK(st.witness->deviation == *oracle);
            CHECK(st.witness->deviation > eps);
        } else {
            CHECK(*oracle <= eps);
        }
    }
}

TEST_CASE("exhaustive check refuses oversized sides") {
    auto pair = test::random_bipartite_pair(15, 4, 1, 2, 3);
    CHECK_THROWS_AS(check_pair_exhaustive(pair.graph, pair.a, pair.b, Rational(1, 4)),
                    CapacityError);
}

TEST_CASE("sampled check never flags a complete pair") {
    auto pair = test::random_bipartite_pair(20, 20, 1, 1, 0);
    PairStats st = check_pair_sampled(pair.graph, pair.a, pair.b, Rational(1, 10), 200, 7);
    CHECK(st.verdict == Verdict::ProbablyRegular);
}

TEST_CASE("sampled check finds the block witness") {
    auto pair = test::block_diagonal_pair();
    PairStats st = check_pair_sampled(pair.graph, pair.a, pair.b, Rational(3, 10), 200, 11);
    REQUIRE(st.verdict == Verdict::Irregular);
    Rational dev = (density(pair.graph, st.witness->x, st.witness->y) - st.density).abs();
    CHECK(dev == st.witness->deviation);
    CHECK(dev > Rational(3, 10));
    CHECK(st.witness->deviation == Rational(1, 2));
}

TEST_CASE("sampled verdicts and witnesses are deterministic in the seed") {
    auto pair = test::block_diagonal_pair();
    PairStats a = check_pair_sampled(pair.graph, pair.a, pair.b, Rational(3, 10), 50, 21);
    PairStats b = check_pair_sampled(pair.graph, pair.a, pair.b, Rational(3, 10), 50, 21);
    CHECK(a.verdict == b.verdict);
    REQUIRE(a.witness.has_value());
    REQUIRE(b.witness.has_value());
    CHECK(a.witness->x == b.witness->x);
    CHECK(a.witness->y == b.witness->y);
    CHECK(a.witness->deviation == b.witness->deviation);
}

TEST_CASE("sampled never contradicts an exhaustive regular verdict") {
    int flagged = 0;
    for (uint64_t seed = 0; seed < 40; ++seed) {
        auto pair =
            test::random_bipartite_pair(5 + seed % 6, 5 + (seed / 2) % 6, 2, 4, seed * 17 + 3);
        Rational eps(1, 4);
        PairStats ex = check_pair_exhaustive(pair.graph, pair.a, pair.b, eps);
        PairStats sm = check_pair_sampled(pair.graph, pair.a, pair.b, eps, 60, seed);
        if (ex.verdict == Verdict::Regular) CHECK(sm.verdict != Verdict::Irregular);
        if (sm.verdict == Verdict::Irregular) {
            ++flagged;
            // every emitted witness re-verifies: strict sizes, strict deviation
            Rational dev =
                (density(pair.graph, sm.witness->x, sm.witness->y) - sm.density).abs();
            CHECK(dev > eps);
            CHECK(Rational(sm.witness->x.size()) > eps * Rational(pair.a.size()));
            CHECK(Rational(sm.witness->y.size()) > eps * Rational(pair.b.size()));
        }
    }
    CHECK(flagged > 0); // the sweep must exercise the witness path
}

TEST_CASE("large sub-pairs keep densities close") {
    // |X'| > (1-delta)|X| and |Y'| > (1-delta)|Y| force
    // |d' - d| < 2*delta and |d'^2 - d^2| < 4*delta
    std::mt19937_64 rng(424242);
    for (int round = 0; round < 60; ++round) {
        int na = 6 + draw_below(rng, 6), nb = 6 + draw_below(rng, 6);
        auto pair = test::random_bipartite_pair(na, nb, 1 + draw_below(rng, 3), 4, rng());
        Rational delta(1 + draw_below(rng, 4), 10); // 1/10 .. 4/10
        auto shrink = [&](const VertexSet& full) {
            VertexSet out = full;
            auto vs = full.to_vector();
            for (int v : vs) {
                VertexSet smaller = out;
                smaller.remove(v);
                if (Rational(smaller.size()) > (Rational(1) - delta) * Rational(full.size()) &&
                    draw_below(rng, 2)) {
                    out = smaller;
                }
            }
            return out;
        };
        VertexSet x = shrink(pair.a), y = shrink(pair.b);
        Rational d = density(pair.graph, pair.a, pair.b);
        Rational dp = density(pair.graph, x, y);
        CHECK((dp - d).abs() < Rational(2) * delta);
        CHECK((dp * dp - d * d).abs() < Rational(4) * delta);
    }
}

TEST_CASE("defect mean-square bound holds with equality on the two-point case") {
    std::vector<Rational> d{Rational(0), Rational(1)};
    CHECK(defect_cauchy_schwarz_check(d, 1, Rational(1, 2)));
    // equality: 1/2 == 1/4 + 1/4
    Rational lhs = (Rational(0) + Rational(1)) / Rational(2);
    CHECK(lhs * lhs + Rational(1, 4) == Rational(1, 2));
}

TEST_CASE("defect bound reduces to plain mean-square monotonicity at delta 0") {
    std::vector<Rational> d{Rational(1, 3), Rational(1, 3), Rational(1, 3)};
    CHECK(defect_cauchy_schwarz_check(d, 2, Rational(0)));
}

TEST_CASE("defect bound rejects an inconsistent delta") {
    std::vector<Rational> d{Rational(0), Rational(1)};
    CHECK_THROWS_AS(defect_cauchy_schwarz_check(d, 1, Rational(1, 3)), ArgumentError);
    CHECK_THROWS_AS(defect_cauchy_schwarz_check(d, 2, Rational(0)), ArgumentError);
}

TEST_CASE("defect bound holds across random rational vectors") {
    std::mt19937_64 rng(5150);
    for (int round = 0; round < 100; ++round) {
        int s = 2 + draw_below(rng, 10);
        int t = 1 + draw_below(rng, s - 1);
        std::vector<Rational> d;
        Rational sum(0), head(0);
        for (int i = 0; i < s; ++i) {
            d.emplace_back(draw_below(rng, 20), 1 + draw_below(rng, 19));
            sum += d.back();
            if (i < t) head += d.back();
        }
        Rational delta = sum / Rational(s) - head / Rational(t);
        CHECK(defect_cauchy_schwarz_check(d, t, delta));
    }
}

TEST_CASE("params validation enforces the epsilon range") {
    RegularityParams p;
    p.epsilon = Rational(3, 5);
    CHECK_THROWS_AS(p.validate(), ArgumentError);
    p.epsilon = Rational(0);
    CHECK_THROWS_AS(p.validate(), ArgumentError);
    p.epsilon = Rational(1, 2);
    CHECK_NOTHROW(p.validate());
}
