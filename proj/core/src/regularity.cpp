#include "folkreg/regularity.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "folkreg/prng.hpp"

namespace folkreg {

char verdict_letter(Verdict v) {
    switch (v) {
        case Verdict::Regular: return 'R';
        case Verdict::Irregular: return 'I';
        default: return 'P';
    }
}

void RegularityParams::validate() const {
    if (epsilon <= Rational(0) || epsilon > Rational(1, 2))
        throw ArgumentError("epsilon must lie in (0, 1/2]");
    if (min_classes < 1) throw ArgumentError("min_classes must be >= 1");
    if (max_rounds < 0) throw ArgumentError("max_rounds must be >= 0");
    if (class_size_floor < 1) throw ArgumentError("class_size_floor must be >= 1");
    if (sample_trials < 1) throw ArgumentError("sample_trials must be >= 1");
    if (exhaustive_cap < 1) throw ArgumentError("exhaustive_cap must be >= 1");
    if (practical_growth < 2) throw ArgumentError("practical_growth must be >= 2");
    if (threads < 1) throw ArgumentError("threads must be >= 1");
}

namespace {

struct EpsIntPair {
    long long num;
    long long den;
};

// Epsilon as an int64 fraction for the hot loops; densities themselves stay
// exact because they are ratios of small integer counts.
EpsIntPair eps_ints(const Rational& eps) {
    if (eps <= Rational(0) || eps >= Rational(1))
        throw ArgumentError("epsilon must lie in (0, 1)");
    if (eps.den() > BigInt(1000000000000000LL))
        throw ArgumentError("epsilon denominator too large");
    return {eps.num().convert_to<long long>(), eps.den().convert_to<long long>()};
}

// |a/b| > |c/d| with positive denominators.
bool frac_gt(__int128 a, __int128 b, __int128 c, __int128 d) {
    return a * d > c * b;
}

struct PairContext {
    std::vector<int> av;   // vertices of A
    std::vector<int> bv;   // vertices of B
    long long e_full = 0;  // e(A, B)
    Rational d_full;
};

PairContext make_context(const DenseGraph& g, const VertexSet& a, const VertexSet& b) {
    if (a.empty() || b.empty()) throw ArgumentError("pair check on an empty set");
    if (!a.disjoint_with(b)) throw ArgumentError("pair check on overlapping sets");
    PairContext ctx;
    ctx.av = a.to_vector();
    ctx.bv = b.to_vector();
    ctx.e_full = g.edges_between(a, b);
    ctx.d_full = Rational(BigInt(ctx.e_full), BigInt(a.size()) * b.size());
    return ctx;
}

// deviation |e'/(sx*sy) - E/(na*nb)| as a fraction over (sx*sy*na*nb)
struct Deviation {
    __int128 num = 0; // |e' * na*nb - E * sx*sy|
    __int128 den = 1; // sx*sy*na*nb
};

Deviation deviation_of(long long e_sub, long long sx, long long sy, long long e_full,
                       long long na, long long nb) {
    Deviation d;
    __int128 lhs = static_cast<__int128>(e_sub) * na * nb;
    __int128 rhs = static_cast<__int128>(e_full) * sx * sy;
    d.num = lhs > rhs ? lhs - rhs : rhs - lhs;
    d.den = static_cast<__int128>(sx) * sy * na * nb;
    return d;
}

bool exceeds_eps(const Deviation& d, const EpsIntPair& eps) {
    return d.num * eps.den > static_cast<__int128>(eps.num) * d.den;
}

bool dev_greater(const Deviation& x, const Deviation& y) {
    return frac_gt(x.num, x.den, y.num, y.den);
}

Rational dev_rational(const Deviation& d) {
    // __int128 -> BigInt via halves
    auto to_big = [](__int128 v) {
        bool neg = v < 0;
        unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
        BigInt hi = static_cast<uint64_t>(u >> 64);
        BigInt lo = static_cast<uint64_t>(u);
        BigInt r = (hi << 64) | lo;
        return neg ? BigInt(-r) : r;
    };
    return Rational(to_big(d.num), to_big(d.den));
}

} // namespace

PairStats check_pair_exhaustive(const DenseGraph& g, const VertexSet& a, const VertexSet& b,
                                const Rational& eps, int cap) {
    auto ctx = make_context(g, a, b);
    auto ei = eps_ints(eps);
    int na = static_cast<int>(ctx.av.size());
    int nb = static_cast<int>(ctx.bv.size());
    if (na > cap || nb > cap)
        throw CapacityError("pair sides " + std::to_string(na) + "x" + std::to_string(nb) +
                            " exceed the exhaustive cap " + std::to_string(cap) +
                            "; use the sampling mode");

    // cross adjacency of A into B as nb-bit masks
    std::vector<uint32_t> adj(na, 0);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            if (g.has_edge(ctx.av[i], ctx.bv[j])) adj[i] |= 1u << j;

    // smallest strictly admissible sizes: s * den > num * n
    auto min_admissible = [&](int n) {
        long long lhs = ei.num * n;
        int s = static_cast<int>(lhs / ei.den) + 1;
        return std::max(1, s);
    };
    int min_s = min_admissible(na);
    int min_t = min_admissible(nb);

    // Gray-code walk over subsets S of A with per-B-vertex neighbor counts
    // maintained incrementally. For a fixed S the extreme densities over all
    // t-subsets of B are prefix sums of the sorted count vector, so each
    // subset costs O(nb log nb) instead of another 2^nb enumeration.
    std::vector<int> cnt(nb, 0);
    std::vector<int> order(nb);
    bool have_best = false;
    Deviation best_dev;
    int best_t = 0;
    bool best_top = false;
    uint32_t best_mask = 0;
    int best_size = 0; // |X'| + |Y'|; deviation ties go to the larger witness

    std::vector<int> sorted_cnt(nb);
    uint32_t gray_prev = 0;
    int s_size = 0;
    long long total = 1ll << na;
    for (long long gidx = 1; gidx < total; ++gidx) {
        uint32_t gray = static_cast<uint32_t>(gidx ^ (gidx >> 1));
        uint32_t changed = gray ^ gray_prev;
        int bit = std::countr_zero(changed);
        bool added = gray & changed;
        uint32_t nbrs = adj[bit];
        if (added) {
            ++s_size;
            while (nbrs) {
                cnt[std::countr_zero(nbrs)] += 1;
                nbrs &= nbrs - 1;
            }
        } else {
            --s_size;
            while (nbrs) {
                cnt[std::countr_zero(nbrs)] -= 1;
                nbrs &= nbrs - 1;
            }
        }
        gray_prev = gray;
        if (s_size < min_s) continue;

        std::copy(cnt.begin(), cnt.end(), sorted_cnt.begin());
        std::sort(sorted_cnt.begin(), sorted_cnt.end());
        long long prefix_lo = 0, suffix_hi = 0;
        // prefix sums from both ends, walked together over t
        for (int t = 1; t <= nb; ++t) {
            prefix_lo += sorted_cnt[t - 1];
            suffix_hi += sorted_cnt[nb - t];
            if (t < min_t) continue;
            Deviation lo = deviation_of(prefix_lo, s_size, t, ctx.e_full, na, nb);
            Deviation hi = deviation_of(suffix_hi, s_size, t, ctx.e_full, na, nb);
            const Deviation& worse = dev_greater(lo, hi) ? lo : hi;
            bool better = !have_best || dev_greater(worse, best_dev) ||
                          (!dev_greater(best_dev, worse) && s_size + t > best_size);
            if (better) {
                have_best = true;
                best_dev = worse;
                best_t = t;
                best_top = !dev_greater(lo, hi);
                best_mask = gray;
                best_size = s_size + t;
            }
        }
    }

    PairStats out;
    out.density = ctx.d_full;
    if (have_best && exceeds_eps(best_dev, ei)) {
        VertexSet wx(g.order());
        for (int i = 0; i < na; ++i)
            if ((best_mask >> i) & 1u) wx.add(ctx.av[i]);
        // rebuild the count vector for the winning subset
        std::vector<int> wc(nb, 0);
        for (int i = 0; i < na; ++i)
            if ((best_mask >> i) & 1u) {
                uint32_t nbrs = adj[i];
                while (nbrs) {
                    wc[std::countr_zero(nbrs)] += 1;
                    nbrs &= nbrs - 1;
                }
            }
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
            return best_top ? wc[x] > wc[y] : wc[x] < wc[y];
        });
        VertexSet wy(g.order());
        for (int t = 0; t < best_t; ++t) wy.add(ctx.bv[order[t]]);
        out.verdict = Verdict::Irregular;
        out.witness = PairWitness{std::move(wx), std::move(wy), dev_rational(best_dev)};
    } else {
        out.verdict = Verdict::Regular;
    }
    return out;
}

namespace {

// Evaluates one candidate subset pair exactly and folds it into the running
// best witness. Candidates below the admissibility thresholds are skipped.
struct SampledBest {
    bool found = false;
    Deviation dev;
    VertexSet x;
    VertexSet y;
};

void consider(const DenseGraph& g, const PairContext& ctx, const EpsIntPair& ei, int na, int nb,
              const VertexSet& x, const VertexSet& y, SampledBest& best) {
    long long sx = x.size(), sy = y.size();
    if (sx * ei.den <= ei.num * na) return;
    if (sy * ei.den <= ei.num * nb) return;
    long long e = g.edges_between(x, y);
    Deviation d = deviation_of(e, sx, sy, ctx.e_full, na, nb);
    if (!exceeds_eps(d, ei)) return;
    if (!best.found || dev_greater(d, best.dev)) {
        best.found = true;
        best.dev = d;
        best.x = x;
        best.y = y;
    }
}

VertexSet random_subset(std::mt19937_64& rng, const std::vector<int>& pool, int want,
                        int universe) {
    std::vector<int> idx(pool.size());
    std::iota(idx.begin(), idx.end(), 0);
    for (size_t i = idx.size(); i > 1; --i)
        std::swap(idx[i - 1], idx[draw_below(rng, static_cast<int>(i))]);
    VertexSet s(universe);
    for (int i = 0; i < want; ++i) s.add(pool[idx[i]]);
    return s;
}

} // namespace

PairStats check_pair_sampled(const DenseGraph& g, const VertexSet& a, const VertexSet& b,
                             const Rational& eps, int trials, uint64_t seed) {
    auto ctx = make_context(g, a, b);
    auto ei = eps_ints(eps);
    int na = static_cast<int>(ctx.av.size());
    int nb = static_cast<int>(ctx.bv.size());
    if (trials < 1) throw ArgumentError("trials must be >= 1");

    std::mt19937_64 rng(derive_seed(seed, 0xce11ab));
    SampledBest best;

    // structured candidates are ignored below 48% of a side: the target is
    // near-half block structure, and smaller splits (union complements run
    // near a quarter) are dominated by binomial noise
    auto frac_ok = [&](const VertexSet& s, int n) { return 25 * s.size() >= 12 * n; };

    for (int trial = 0; trial < trials; ++trial) {
        // pivot-neighborhood splits: union of two sampled pivots per side
        int b1 = ctx.bv[draw_below(rng, nb)];
        int b2 = ctx.bv[draw_below(rng, nb)];
        int a1 = ctx.av[draw_below(rng, na)];
        int a2 = ctx.av[draw_below(rng, na)];
        VertexSet xu = g.neighbors_in(b1, a).unite(g.neighbors_in(b2, a));
        VertexSet xc = a.difference(xu);
        VertexSet yu = g.neighbors_in(a1, b).unite(g.neighbors_in(a2, b));
        VertexSet yc = b.difference(yu);

        for (const VertexSet* x : {&xu, &xc}) {
            if (x->empty() || !frac_ok(*x, na)) continue;
            for (const VertexSet* y : {&yu, &yc}) {
                if (y->empty() || !frac_ok(*y, nb)) continue;
                consider(g, ctx, ei, na, nb, *x, *y, best);
            }
        }

        // random large subset pair (3/5 of a side and up)
        int sx = draw_range(rng, std::max(1, (3 * na + 4) / 5), na);
        int sy = draw_range(rng, std::max(1, (3 * nb + 4) / 5), nb);
        VertexSet rx = random_subset(rng, ctx.av, sx, g.order());
        VertexSet ry = random_subset(rng, ctx.bv, sy, g.order());
        consider(g, ctx, ei, na, nb, rx, ry, best);
    }

    PairStats out;
    out.density = ctx.d_full;
    if (best.found) {
        out.verdict = Verdict::Irregular;
        out.witness = PairWitness{std::move(best.x), std::move(best.y), dev_rational(best.dev)};
    } else {
        out.verdict = Verdict::ProbablyRegular;
    }
    return out;
}

bool defect_cauchy_schwarz_check(const std::vector<Rational>& d, int t, const Rational& delta) {
    int s = static_cast<int>(d.size());
    if (t < 1 || t >= s) throw ArgumentError("need s > t >= 1");
    Rational sum(0), sum_sq(0), head(0);
    for (int i = 0; i < s; ++i) {
        sum += d[i];
        sum_sq += d[i] * d[i];
        if (i < t) head += d[i];
    }
    Rational mean_s = sum / Rational(s);
    Rational mean_t = head / Rational(t);
    Rational delta_actual = mean_s - mean_t;
    if ((delta_actual - delta).abs() > index_tolerance())
        throw ArgumentError("supplied delta disagrees with the data");
    Rational lhs = sum_sq / Rational(s);
    Rational rhs = mean_s * mean_s +
                   Rational(t) * delta_actual * delta_actual / Rational(s - t);
    return lhs >= rhs;
}

} // namespace folkreg
