#include "folkreg/partition.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <numeric>
#include <thread>

#include "folkreg/prng.hpp"

namespace folkreg {

Partition::Partition(PartitionStyle style, int universe,
                     std::vector<std::vector<VertexSet>> classes,
                     std::vector<VertexSet> exceptional)
    : style_(style), universe_(universe), classes_(std::move(classes)),
      exceptional_(std::move(exceptional)) {
    if (classes_.empty()) throw ArgumentError("partition needs at least one part");
    if (exceptional_.size() != classes_.size())
        throw ArgumentError("one exceptional slot per part required");
    size_t k = classes_[0].size();
    if (k == 0) throw ArgumentError("partition needs k >= 1 classes per part");
    for (const auto& part : classes_)
        if (part.size() != k) throw ArgumentError("k must be the same for each part");
}

bool Partition::equitable() const {
    for (int s = 0; s < part_count(); ++s) {
        if (style_ == PartitionStyle::WithExceptional) {
            int c = classes_[s][0].size();
            for (const auto& cl : classes_[s])
                if (cl.size() != c) return false;
        } else {
            if (!exceptional_[s].empty()) return false;
            int lo = classes_[s][0].size(), hi = lo;
            for (const auto& cl : classes_[s]) {
                lo = std::min(lo, cl.size());
                hi = std::max(hi, cl.size());
            }
            if (hi - lo > 1) return false;
        }
        for (const auto& cl : classes_[s])
            if (cl.empty()) return false;
    }
    return true;
}

void Partition::validate(const PartiteHost& host) const {
    if (part_count() != host.part_count())
        throw ArgumentError("partition part count does not match host");
    if (universe_ != host.order()) throw ArgumentError("partition universe does not match host");
    for (int s = 0; s < part_count(); ++s) {
        VertexSet part = host.part_set(s);
        VertexSet seen(universe_);
        int covered = 0;
        auto absorb = [&](const VertexSet& cl) {
            if (!cl.subset_of(part)) throw ArgumentError("class leaves its part");
            if (!cl.disjoint_with(seen)) throw ArgumentError("classes overlap");
            seen = seen.unite(cl);
            covered += cl.size();
        };
        for (const auto& cl : classes_[s]) absorb(cl);
        absorb(exceptional_[s]);
        if (covered != host.part_size(s)) throw ArgumentError("classes do not cover the part");
    }
    if (!equitable()) throw ArgumentError("partition violates its size rule");
}

Partition initial_partition(const PartiteHost& host, int m) {
    if (m < 1) throw ArgumentError("m must be >= 1");
    int n = host.order();
    std::vector<std::vector<VertexSet>> classes(host.part_count());
    std::vector<VertexSet> exceptional(host.part_count(), VertexSet(n));
    for (int s = 0; s < host.part_count(); ++s) {
        int size = host.part_size(s);
        if (size < m)
            throw ArgumentError("part " + std::to_string(s + 1) + " smaller than m");
        auto [begin, end] = host.part_range(s);
        int c = size / m;
        for (int i = 0; i < m; ++i)
            classes[s].push_back(VertexSet::range(n, begin + i * c, begin + (i + 1) * c));
        exceptional[s] = VertexSet::range(n, begin + m * c, end);
    }
    return Partition(PartitionStyle::WithExceptional, n, std::move(classes),
                     std::move(exceptional));
}

Rational energy_index(const PartiteHost& host, const Partition& p, std::optional<int> color) {
    p.validate(host);
    const DenseGraph& g = color ? host.monochrome_subgraph(*color) : host.graph();
    int k = p.k();
    Rational sum(0);
    for (int s = 0; s < p.part_count(); ++s)
        for (int t = s + 1; t < p.part_count(); ++t)
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    Rational d = density(g, p.class_at(s, i), p.class_at(t, j));
                    sum += d * d;
                }
    return sum / Rational(static_cast<long long>(k) * k);
}

Rational multicolor_energy_index(const PartiteHost& host, const Partition& p) {
    Rational sum(0);
    for (int c : all_colors(host))
        sum += energy_index(host, p, c < 0 ? std::nullopt : std::optional<int>(c));
    return sum;
}

std::vector<int> all_colors(const PartiteHost& host) {
    if (!host.colored()) return {-1};
    std::vector<int> cs(host.color_count());
    std::iota(cs.begin(), cs.end(), 0);
    return cs;
}

// ---------------------------------------------------------------------------
// VerdictTable

VerdictTable::VerdictTable(int parts, int k, std::vector<int> colors)
    : parts_(parts), k_(k), colors_(std::move(colors)) {
    if (colors_.empty()) throw ArgumentError("verdict table needs at least one color");
    size_t pairs = static_cast<size_t>(parts_) * (parts_ - 1) / 2;
    stats_.resize(pairs * k_ * k_ * colors_.size());
}

size_t VerdictTable::slot(int s, int i, int t, int j, int color) const {
    if (s > t) { std::swap(s, t); std::swap(i, j); }
    if (s == t || s < 0 || t >= parts_ || i < 0 || i >= k_ || j < 0 || j >= k_)
        throw ArgumentError("bad pair key");
    auto cpos = std::find(colors_.begin(), colors_.end(), color);
    if (cpos == colors_.end()) throw ArgumentError("color not tracked by this table");
    // pair index over s < t in row-major order
    size_t pair = static_cast<size_t>(s) * parts_ - static_cast<size_t>(s) * (s + 1) / 2 +
                  (t - s - 1);
    return ((pair * k_ + i) * k_ + j) * colors_.size() + (cpos - colors_.begin());
}

void VerdictTable::put(int s, int i, int t, int j, int color, PairStats stats) {
    stats_[slot(s, i, t, j, color)] = std::move(stats);
}

const PairStats* VerdictTable::find(int s, int i, int t, int j, int color) const {
    const auto& slot_ref = stats_[slot(s, i, t, j, color)];
    return slot_ref ? &*slot_ref : nullptr;
}

bool VerdictTable::complete() const {
    return std::all_of(stats_.begin(), stats_.end(), [](const auto& s) { return bool(s); });
}

long long VerdictTable::pair_count() const {
    return static_cast<long long>(stats_.size()) / colors_.size();
}

int VerdictTable::irregular_pair_count() const {
    int count = 0;
    size_t nc = colors_.size();
    for (size_t p = 0; p * nc < stats_.size(); ++p) {
        for (size_t c = 0; c < nc; ++c) {
            const auto& st = stats_[p * nc + c];
            if (st && st->verdict == Verdict::Irregular) {
                ++count;
                break;
            }
        }
    }
    return count;
}

int VerdictTable::irregular_entry_count() const {
    int count = 0;
    for (const auto& st : stats_)
        if (st && st->verdict == Verdict::Irregular) ++count;
    return count;
}

// ---------------------------------------------------------------------------
// verdict computation

namespace {

struct PairTask {
    int s, i, t, j, color;
};

std::vector<PairTask> enumerate_tasks(int parts, int k, const std::vector<int>& colors) {
    std::vector<PairTask> tasks;
    for (int s = 0; s < parts; ++s)
        for (int t = s + 1; t < parts; ++t)
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    for (int c : colors) tasks.push_back({s, i, t, j, c});
    return tasks;
}

} // namespace

VerdictTable compute_verdicts(const PartiteHost& host, const Partition& p,
                              const RegularityParams& params, const std::vector<int>& colors,
                              uint64_t round_salt) {
    params.validate();
    p.validate(host);
    for (int c : colors)
        if (c >= 0 && (!host.colored() || c >= host.color_count()))
            throw ArgumentError("color id not present in host");

    VerdictTable table(p.part_count(), p.k(), colors);
    auto tasks = enumerate_tasks(p.part_count(), p.k(), colors);

    auto run_task = [&](const PairTask& task) {
        const DenseGraph& g =
            task.color < 0 ? host.graph() : host.monochrome_subgraph(task.color);
        const VertexSet& a = p.class_at(task.s, task.i);
        const VertexSet& b = p.class_at(task.t, task.j);
        bool small = a.size() <= params.exhaustive_cap && b.size() <= params.exhaustive_cap;
        bool exhaustive;
        switch (params.verdict_mode) {
            case RegularityParams::VerdictMode::ExhaustiveOnly: exhaustive = true; break;
            case RegularityParams::VerdictMode::SampledOnly: exhaustive = false; break;
            default: exhaustive = small; break;
        }
        if (exhaustive)
            return check_pair_exhaustive(g, a, b, params.epsilon, params.exhaustive_cap);
        uint64_t key = ((static_cast<uint64_t>(task.s) * 64 + task.i) * 64 + task.t) * 64 + task.j;
        uint64_t seed =
            derive_seed(params.seed, round_salt, key, static_cast<uint64_t>(task.color + 1));
        return check_pair_sampled(g, a, b, params.epsilon, params.sample_trials, seed);
    };

    std::vector<PairStats> results(tasks.size());
    int workers = std::max(1, std::min<int>(params.threads, static_cast<int>(tasks.size())));
    if (workers == 1) {
        for (size_t idx = 0; idx < tasks.size(); ++idx) results[idx] = run_task(tasks[idx]);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (size_t idx = next.fetch_add(1); idx < tasks.size();
                     idx = next.fetch_add(1))
                    results[idx] = run_task(tasks[idx]);
            });
        for (auto& th : pool) th.join();
    }
    for (size_t idx = 0; idx < tasks.size(); ++idx) {
        const auto& t = tasks[idx];
        table.put(t.s, t.i, t.t, t.j, t.color, std::move(results[idx]));
    }
    return table;
}

// ---------------------------------------------------------------------------
// refinement

namespace {

// Atoms of a class under the witness sets cutting it, ordered by smallest
// vertex; vertices inside an atom stay in ascending order.
std::vector<std::vector<int>> atoms_of_class(const VertexSet& cls,
                                             const std::vector<const VertexSet*>& witnesses) {
    std::vector<std::vector<int>> atoms;
    std::map<std::vector<char>, size_t> by_signature;
    for (int v : cls.to_vector()) {
        std::vector<char> sig(witnesses.size());
        for (size_t w = 0; w < witnesses.size(); ++w) sig[w] = witnesses[w]->contains(v);
        auto [it, inserted] = by_signature.try_emplace(std::move(sig), atoms.size());
        if (inserted) atoms.emplace_back();
        atoms[it->second].push_back(v);
    }
    return atoms;
}

struct ChunkPlan {
    std::vector<std::vector<VertexSet>> classes; // new classes per part
    std::vector<VertexSet> exceptional;          // grown exceptional per part
    int new_k = 0;
};

// Cuts every class of every part into chunk_size(part)-sized chunks (atom
// runs first, then mixed atom remainders) and keeps `keep` chunks per old
// class; everything else joins the exceptional class. With atoms_only no
// mixed chunks are formed, matching the construction behind the faithful
// increment bound.
ChunkPlan cut_chunks(const PartiteHost& host, const Partition& p,
                     const std::vector<std::vector<std::vector<const VertexSet*>>>& cuts,
                     const std::vector<int>& chunk_size, int keep, bool atoms_only) {
    int n = host.order();
    ChunkPlan plan;
    plan.classes.resize(p.part_count());
    plan.exceptional.reserve(p.part_count());
    plan.new_k = keep * p.k();
    for (int s = 0; s < p.part_count(); ++s) {
        VertexSet exc = p.exceptional(s);
        int d = chunk_size[s];
        for (int i = 0; i < p.k(); ++i) {
            auto atoms = atoms_of_class(p.class_at(s, i), cuts[s][i]);
            std::vector<VertexSet> chunks;
            std::vector<int> spill;
            for (const auto& atom : atoms) {
                size_t full = atom.size() / d;
                for (size_t c = 0; c < full; ++c) {
                    VertexSet chunk(n);
                    for (int off = 0; off < d; ++off) chunk.add(atom[c * d + off]);
                    chunks.push_back(std::move(chunk));
                }
                for (size_t r = full * d; r < atom.size(); ++r) spill.push_back(atom[r]);
            }
            if (!atoms_only) {
                for (size_t at = 0; at + d <= spill.size(); at += d) {
                    VertexSet chunk(n);
                    for (int off = 0; off < d; ++off) chunk.add(spill[at + off]);
                    chunks.push_back(std::move(chunk));
                }
            }
            if (static_cast<int>(chunks.size()) < keep)
                throw StateError("class yielded " + std::to_string(chunks.size()) +
                                 " chunks, need " + std::to_string(keep));
            for (int c = 0; c < keep; ++c) plan.classes[s].push_back(chunks[c]);
            VertexSet kept(n);
            for (int c = 0; c < keep; ++c) kept = kept.unite(chunks[c]);
            exc = exc.unite(p.class_at(s, i).difference(kept));
        }
        plan.exceptional.push_back(std::move(exc));
    }
    return plan;
}

Rational q_total_of(const PartiteHost& host, const Partition& p, const std::vector<int>& colors) {
    Rational q(0);
    for (int c : colors)
        q += energy_index(host, p, c < 0 ? std::nullopt : std::optional<int>(c));
    return q;
}

// largest divisor of c not exceeding c/2 (c >= 2)
int largest_proper_divisor(int c) {
    for (int d = c / 2; d >= 1; --d)
        if (c % d == 0) return d;
    return 1;
}

} // namespace

RefineOutcome refine_step(const PartiteHost& host, const Partition& p,
                          const RegularityParams& params, const std::vector<int>& colors,
                          const VerdictTable& verdicts) {
    params.validate();
    p.validate(host);
    if (p.style() != PartitionStyle::WithExceptional)
        throw ArgumentError("refine_step needs a with-exceptional partition");
    if (!verdicts.complete())
        throw StateError("missing pair verdicts; run compute_verdicts first");

    RefineOutcome out{p, false, false, q_total_of(host, p, colors), Rational(0)};

    if (verdicts.irregular_pair_count() == 0) {
        out.q_after = out.q_before;
        return out; // already regular under these verdicts
    }

    int k = p.k();
    // witness sets cutting each class, pooled across colors, canonical order
    std::vector<std::vector<std::vector<const VertexSet*>>> cuts(p.part_count());
    for (int s = 0; s < p.part_count(); ++s) cuts[s].resize(k);
    for (int s = 0; s < p.part_count(); ++s)
        for (int t = s + 1; t < p.part_count(); ++t)
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    for (int c : verdicts.colors()) {
                        const PairStats* st = verdicts.find(s, i, t, j, c);
                        if (st->verdict != Verdict::Irregular) continue;
                        cuts[s][i].push_back(&st->witness->x);
                        cuts[t][j].push_back(&st->witness->y);
                    }

    std::vector<int> class_size(p.part_count());
    for (int s = 0; s < p.part_count(); ++s) class_size[s] = p.class_at(s, 0).size();

    ChunkPlan plan;
    if (params.mode == RegularityParams::Mode::Faithful) {
        if (k > 10) throw CapacityError("faithful mode is limited to k <= 10");
        long long four_k = 1ll << (2 * k);
        long long two_k = 1ll << k;
        long long needed = 1ll << std::min(62, 3 * k);
        std::vector<int> chunk(p.part_count());
        for (int s = 0; s < p.part_count(); ++s) {
            if (class_size[s] < needed)
                throw ArgumentError("faithful mode needs class sizes >= 2^(3k); part " +
                                    std::to_string(s + 1) + " has classes of " +
                                    std::to_string(class_size[s]));
            chunk[s] = static_cast<int>(class_size[s] / four_k);
        }
        int keep = static_cast<int>(four_k - two_k);
        plan = cut_chunks(host, p, cuts, chunk, keep, /*atoms_only=*/true);
    } else {
        int gamma = params.practical_growth;
        for (int s = 0; s < p.part_count(); ++s)
            gamma = std::min(gamma, class_size[s] / std::max(1, params.class_size_floor));
        if (gamma < 2) {
            out.q_after = out.q_before;
            out.stalled = true;
            return out; // classes too small to split further
        }
        std::vector<int> chunk(p.part_count());
        for (int s = 0; s < p.part_count(); ++s) chunk[s] = class_size[s] / gamma;
        plan = cut_chunks(host, p, cuts, chunk, gamma, /*atoms_only=*/false);
    }

    auto build = [&](ChunkPlan&& pl) {
        return Partition(PartitionStyle::WithExceptional, host.order(), std::move(pl.classes),
                         std::move(pl.exceptional));
    };
    Partition refined = build(std::move(plan));

    // containment: every new class sits inside one old class
    for (int s = 0; s < refined.part_count(); ++s)
        for (int i = 0; i < refined.k(); ++i) {
            bool inside = false;
            for (int j = 0; j < k && !inside; ++j)
                inside = refined.class_at(s, i).subset_of(p.class_at(s, j));
            if (!inside) throw StateError("refined class escaped its parent class");
        }

    out.q_after = q_total_of(host, refined, colors);
    if (out.q_after < out.q_before - index_tolerance() &&
        params.mode == RegularityParams::Mode::Practical) {
        // the equal-chunk cut lost more energy to the exceptional class than
        // the split gained; redo with a divisor chunk size, which discards
        // nothing and is therefore a pure refinement
        bool common = std::all_of(class_size.begin(), class_size.end(),
                                  [&](int c) { return c == class_size[0]; });
        if (common && class_size[0] >= 2) {
            int d = largest_proper_divisor(class_size[0]);
            std::vector<int> chunk(p.part_count(), d);
            ChunkPlan pure = cut_chunks(host, p, cuts, chunk, class_size[0] / d, false);
            refined = build(std::move(pure));
            out.q_after = q_total_of(host, refined, colors);
        }
    }
    if (out.q_after < out.q_before - index_tolerance())
        throw StateError("refinement lowered the index: " + out.q_before.str() + " -> " +
                         out.q_after.str());

    if (params.mode == RegularityParams::Mode::Faithful) {
        // class sizes >= 2^(3k) bound the per-part exceptional growth
        for (int s = 0; s < p.part_count(); ++s) {
            long long growth = refined.exceptional(s).size() - p.exceptional(s).size();
            if (growth * (1ll << (k - 1)) > host.part_size(s))
                throw StateError("faithful refinement overgrew the exceptional class");
        }
        // the eps^5/4 increment is promised only above 2^k >= 16/eps^5
        Rational eps5 = params.epsilon.pow(5);
        bool increment_regime = Rational(1ll << k) * eps5 >= Rational(16);
        if (increment_regime && out.q_after < out.q_before + eps5 / Rational(4))
            throw StateError("faithful refinement missed its increment bound");
    }

    out.partition = std::move(refined);
    out.changed = true;
    return out;
}

std::pair<Partition, RefinementReport> iterate_to_regular(const PartiteHost& host,
                                                          const RegularityParams& params,
                                                          const std::vector<int>& colors) {
    params.validate();
    if (colors.empty()) throw ArgumentError("need at least one color");

    Partition p = initial_partition(host, params.min_classes);
    RefinementReport report;
    int parts = host.part_count();
    Rational pairs_factor(static_cast<long long>(parts) * (parts - 1) / 2);

    for (int round = 0;; ++round) {
        VerdictTable verdicts = compute_verdicts(host, p, params, colors, round);
        RefineRound row;
        row.k = p.k();
        for (int c : colors)
            row.q_per_color.push_back(
                energy_index(host, p, c < 0 ? std::nullopt : std::optional<int>(c)));
        row.q_total = std::accumulate(row.q_per_color.begin(), row.q_per_color.end(), Rational(0),
                                      std::plus<>());
        row.irregular_pairs = verdicts.irregular_pair_count();
        row.irregular_entries = verdicts.irregular_entry_count();
        report.rounds.push_back(row);

        Rational allowed = params.epsilon * Rational(static_cast<long long>(p.k()) * p.k()) *
                           Rational(static_cast<long long>(colors.size())) * pairs_factor;
        if (Rational(row.irregular_pairs) <= allowed) {
            report.regular = true;
            break;
        }
        if (round >= params.max_rounds) {
            report.regular = false;
            break;
        }
        RefineOutcome step = refine_step(host, p, params, colors, verdicts);
        if (!step.changed) {
            report.regular = false;
            break;
        }
        p = std::move(step.partition);
    }
    report.final_k = p.k();
    return {std::move(p), std::move(report)};
}

Partition absorb_exceptional(const Partition& p) {
    if (p.style() != PartitionStyle::WithExceptional)
        throw ArgumentError("absorb_exceptional needs a with-exceptional partition");
    int k = p.k();
    std::vector<std::vector<VertexSet>> classes(p.part_count());
    std::vector<VertexSet> exceptional(p.part_count(), VertexSet(p.universe()));
    for (int s = 0; s < p.part_count(); ++s) {
        for (int i = 0; i < k; ++i) classes[s].push_back(p.class_at(s, i));
        int at = 0;
        for (int v : p.exceptional(s).to_vector()) {
            classes[s][at].add(v);
            at = (at + 1) % k;
        }
    }
    return Partition(PartitionStyle::NearEquitable, p.universe(), std::move(classes),
                     std::move(exceptional));
}

std::pair<Partition, RefinementReport> near_equitable_regular_partition(
    const PartiteHost& host, const RegularityParams& params, const std::vector<int>& colors) {
    RegularityParams scaled = params;
    scaled.epsilon = params.epsilon * params.epsilon / Rational(4);
    auto [p, report] = iterate_to_regular(host, scaled, colors);
    Partition absorbed = absorb_exceptional(p);
    report.final_k = absorbed.k();
    return {std::move(absorbed), std::move(report)};
}

} // namespace folkreg
