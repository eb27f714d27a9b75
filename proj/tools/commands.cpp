#include "commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "folkreg/harness.hpp"
#include "folkreg/io.hpp"
#include "folkreg/prng.hpp"

namespace folkreg::cli {

namespace {

DenseGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open " + path);
    return read_graph(in, path);
}

PartiteHost load_host(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open " + path);
    return read_host(in, path);
}

PartitionFile load_partition(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open " + path);
    return read_partition(in, path);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ArgumentError("cannot write " + path);
    return out;
}

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("FOLKREG_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

RegularityParams::VerdictMode parse_verdict_mode(const std::string& s) {
    if (s == "auto") return RegularityParams::VerdictMode::Auto;
    if (s == "exhaustive") return RegularityParams::VerdictMode::ExhaustiveOnly;
    if (s == "sampled") return RegularityParams::VerdictMode::SampledOnly;
    throw ArgumentError("verdicts must be auto, exhaustive or sampled");
}

RegularityParams::Mode parse_refine_mode(const std::string& s) {
    if (s == "practical") return RegularityParams::Mode::Practical;
    if (s == "faithful") return RegularityParams::Mode::Faithful;
    throw ArgumentError("mode must be practical or faithful");
}

void require_seed_for_sampling(const RegularityParams& params, bool seed_given) {
    if (params.verdict_mode != RegularityParams::VerdictMode::ExhaustiveOnly && !seed_given)
        throw ArgumentError("--seed is required whenever sampling may run");
}

struct CommonRegFlags {
    std::string epsilon_s;
    std::string mode_s = "practical";
    std::string verdicts_s = "auto";
    int trials = 16;
    int max_rounds = 8;
    int growth = 2;
    int floor = 1;
    int m = 1;
    int threads = 0;
    uint64_t seed = 0;
    bool seed_given = false;

    void attach(CLI::App* cmd, bool with_m) {
        cmd->add_option("--epsilon", epsilon_s, "regularity epsilon as num/den")->required();
        if (with_m) cmd->add_option("--m", m, "initial classes per part")->required();
        cmd->add_option("--mode", mode_s, "refinement mode: practical|faithful");
        cmd->add_option("--verdicts", verdicts_s, "pair checks: auto|exhaustive|sampled");
        cmd->add_option("--trials", trials, "sampling trials per pair");
        cmd->add_option("--max-rounds", max_rounds, "refinement rounds before giving up");
        cmd->add_option("--growth", growth, "practical-mode class multiplier");
        cmd->add_option("--floor", floor, "practical-mode class size floor");
        cmd->add_option("--threads", threads, "worker threads (0 = FOLKREG_THREADS or 1)");
        cmd->add_option("--seed", seed, "seed for sampled verdicts")
            ->each([this](const std::string&) { seed_given = true; });
    }

    RegularityParams params() const {
        RegularityParams p;
        p.epsilon = Rational::parse(epsilon_s);
        p.min_classes = m;
        p.max_rounds = max_rounds;
        p.class_size_floor = floor;
        p.mode = parse_refine_mode(mode_s);
        p.verdict_mode = parse_verdict_mode(verdicts_s);
        p.sample_trials = trials;
        p.practical_growth = growth;
        p.seed = seed;
        p.threads = resolve_threads(threads);
        return p;
    }
};

int cmd_gen(const std::vector<std::string>& args, std::ostream& out);
int cmd_partition(const std::vector<std::string>& args, std::ostream& out);
int cmd_check_pair(const std::vector<std::string>& args, std::ostream& out);
int cmd_reduce(const std::vector<std::string>& args, std::ostream& out);
int cmd_turan(const std::vector<std::string>& args, std::ostream& out);
int cmd_embed(const std::vector<std::string>& args, std::ostream& out);
int cmd_folkman(const std::vector<std::string>& args, std::ostream& out);
int cmd_verify(const std::vector<std::string>& args, std::ostream& out);

int parse_with(CLI::App& app, const std::vector<std::string>& args, std::ostream& out) {
    // CLI11 wants reversed argv without the program name
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        throw ArgumentError(e.what());
    }
    return -1; // parsed, keep going
}

int cmd_gen(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"generate random hosts and targets"};
    std::string kind = "host", out_path;
    int parts = 2, part_size = 8, colors = 2, n = 8, max_degree = 3;
    uint64_t seed = 0;
    app.add_option("--kind", kind, "host|target");
    app.add_option("--parts", parts);
    app.add_option("--part-size", part_size);
    app.add_option("--colors", colors);
    app.add_option("--n", n, "target order");
    app.add_option("--max-degree", max_degree);
    app.add_option("--seed", seed)->required();
    app.add_option("--out", out_path)->required();
    if (int rc = parse_with(app, args, out); rc >= 0) return rc;

    auto os = open_out(out_path);
    if (kind == "host") {
        PartiteHost host = random_host(parts, part_size, colors, seed);
        write_host(os, host);
        out << "host p=" << parts << " r=" << colors << " n=" << host.order() << " -> "
            << out_path << "\n";
    } else if (kind == "target") {
        DenseGraph g = random_bounded_degree_graph(n, max_degree, seed);
        write_graph(os, g);
        out << "target n=" << n << " m=" << g.edge_count() << " -> " << out_path << "\n";
    } else {
        throw ArgumentError("--kind must be host or target");
    }
    return 0;
}

int cmd_partition(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"iterate the multicolor regularity refinement"};
    std::string host_path, out_path;
    bool absorb = false, union_graph = false;
    CommonRegFlags flags;
    app.add_option("--host", host_path)->required();
    app.add_option("--out", out_path)->required();
    app.add_flag("--absorb", absorb, "absorb exceptional classes afterwards");
    app.add_flag("--union", union_graph, "ignore colors, partition the union graph");
    flags.attach(&app, /*with_m=*/true);
    if (int rc = parse_with(app, args, out); rc >= 0) return rc;

    PartiteHost host = load_host(host_path);
    RegularityParams params = flags.params();
    require_seed_for_sampling(params, flags.seed_given);
    std::vector<int> colors = union_graph ? std::vector<int>{-1} : all_colors(host);

    auto [p, report] = iterate_to_regular(host, params, colors);
    Partition result = absorb ? absorb_exceptional(p) : p;
    Rational q = multicolor_energy_index(host, result);
    auto os = open_out(out_path);
    write_partition(os, result, params.epsilon, q);
    out << "k=" << result.k() << " rounds=" << report.rounds.size()
        << " regular=" << (report.regular ? "true" : "false") << " q=" << q.str() << "\n";
    return 0;
}

int cmd_check_pair(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"eps-regularity verdict for one class pair"};
    std::string host_path, partition_path, epsilon_s, mode = "auto";
    int s = 1, t = 2, i = 1, j = 1, color = 0, trials = 200, cap = 14;
    bool union_graph = false;
    uint64_t seed = 0;
    bool seed_given = false;
    app.add_option("--host", host_path)->required();
    app.add_option("--partition", partition_path, "partition file; whole parts when absent");
    app.add_option("--epsilon", epsilon_s)->required();
    app.add_option("--s", s, "first part (1-based)")->required();
    app.add_option("--t", t, "second part (1-based)")->required();
    app.add_option("--i", i, "class in part s (1-based)");
    app.add_option("--j", j, "class in part t (1-based)");
    app.add_option("--color", color, "monochrome subgraph to test");
    app.add_flag("--union", union_graph, "test in the union graph");
    app.add_option("--mode", mode, "auto|exhaustive|sampled");
    app.add_option("--trials", trials);
    app.add_option("--cap", cap, "exhaustive side cap");
    app.add_option("--seed", seed)->each([&](const std::string&) { seed_given = true; });
    if (int rc = parse_with(app, args, out); rc >= 0) return rc;

    PartiteHost host = load_host(host_path);
    Rational eps = Rational::parse(epsilon_s);
    VertexSet a(host.order()), b(host.order());
    if (!partition_path.empty()) {
        PartitionFile pf = load_partition(partition_path);
        a = pf.partition.class_at(s - 1, i - 1);
        b = pf.partition.class_at(t - 1, j - 1);
    } else {
        if (i != 1 || j != 1) throw ArgumentError("--i/--j need a partition file");
        a = host.part_set(s - 1);
        b = host.part_set(t - 1);
    }
    const DenseGraph& g = union_graph ? host.graph() : host.monochrome_subgraph(color);

    PairStats stats;
    bool small = a.size() <= cap && b.size() <= cap;
    bool exhaustive = mode == "exhaustive" || (mode == "auto" && small);
    if (mode != "exhaustive" && mode != "auto" && mode != "sampled")
        throw ArgumentError("--mode must be auto, exhaustive or sampled");
    if (exhaustive) {
        stats = check_pair_exhaustive(g, a, b, eps, cap);
    } else {
        if (!seed_given) throw ArgumentError("--seed is required for sampled checks");
        stats = check_pair_sampled(g, a, b, eps, trials, seed);
    }
    out << pair_stats_line(s, i, t, j, union_graph ? -1 : color, stats) << "\n";
    return 0;
}

int cmd_reduce(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"build the cluster graph of a partition"};
    std::string host_path, partition_path, out_path;
    CommonRegFlags flags;
    app.add_option("--host", host_path)->required();
    app.add_option("--partition", partition_path)->required();
    app.add_option("--out", out_path)->required();
    flags.attach(&app, /*with_m=*/false);
    if (int rc = parse_with(app, args, out); rc >= 0) return rc;

    PartiteHost host = load_host(host_path);
    PartitionFile pf = load_partition(partition_path);
    RegularityParams params = flags.params();
    require_seed_for_sampling(params, flags.seed_given);
    std::vector<int> colors = all_colors(host);
    VerdictTable verdicts = compute_verdicts(host, pf.partition, params, colors);
    ReducedGraph reduced = reduced_graph(host, pf.partition, verdicts);
    auto os = open_out(out_path);
    write_reduced(os, reduced);
    out << "nodes=" << reduced.node_count() << " edges=" << reduced.edge_count() << "\n";
    return 0;
}

int cmd_turan(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"multipartite Turan bound"};
    int p = 0, k = 0;
    bool oracle = false;
    app.add_option("--p", p)->required();
    app.add_option("--k", k)->required();
    app.add_flag("--oracle", oracle, "re-derive the bound by exhaustive enumeration");
    if (int rc = parse_with(app, args, out); rc >= 0) return rc;

    long long bound = turan_bound(p, k);
    out << "bound=" << bound << "\n";
    if (oracle) {
        long long exact = max_kp_free_oracle(p, k);
        out << "oracle=" << exact << " agree=" << (exact == bound ? "true" : "false") << "\n";
    }
    return 0;
}

int cmd_embed(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"greedy target-set embedding into explicit clusters"};
    std::string graph_path, target_path, clusters_path, epsilon_s, dfloor_s;
    int delta = 3;
    bool certified = false, randomized = false;
    uint64_t seed = 0;
    bool seed_given = false;
    app.add_option("--graph", graph_path, "ambient graph file")->required();
    app.add_option("--target", target_path)->required();
    app.add_option("--clusters", clusters_path)->required();
    app.add_option("--epsilon", epsilon_s)->required();
    app.add_option("--d-floor", dfloor_s, "density floor, e.g. 1/2")->required();
    app.add_option("--delta", delta, "degree bound / cluster count");
    app.add_flag("--certified", certified);
    app.add_flag("--randomized", randomized);
    app.add_option("--seed", seed)->each([&](const std::string&) { seed_given = true; });
    if (int rc = parse_with(app, args, out); rc >= 0) return rc;

    if (randomized && !seed_given) throw ArgumentError("--randomized requires --seed");
    DenseGraph g = load_graph(graph_path);
    DenseGraph target = load_graph(target_path);
    std::ifstream cin_file(clusters_path);
    if (!cin_file) throw ArgumentError("cannot open " + clusters_path);
    std::vector<VertexSet> clusters = read_clusters(cin_file, clusters_path);

    TargetGraph tg = TargetGraph::with_proper_coloring(std::move(target), delta);
    EmbedOptions opts;
    opts.certified = certified;
    opts.randomized = randomized;
    opts.seed = seed;
    auto outcome =
        embed(tg, g, clusters, Rational::parse(epsilon_s), Rational::parse(dfloor_s), opts);
    if (std::holds_alternative<FailureTrace>(outcome)) {
        out << std::get<FailureTrace>(outcome).to_line() << "\n";
        return 2;
    }
    out << embedding_lines(std::get<EmbeddingState>(outcome), tg.phi);
    return 0;
}

int cmd_folkman(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"end-to-end monochromatic embedding pipeline"};
    PipelineConfig cfg;
    std::string epsilon_s = "1/10", mode_s = "practical", verdicts_s = "sampled";
    std::string host_path, target_path, report_path, dump_host, dump_target;
    int n = 8, threads = 0, parts = 0;
    uint64_t seed = 0;
    app.add_option("--delta", cfg.delta);
    app.add_option("--colors", cfg.r);
    app.add_option("--parts", parts, "defaults to the known Ramsey number R_r(K_delta)");
    app.add_option("--part-size", cfg.part_size)->required();
    app.add_option("--n", n, "random target order (ignored with --target)");
    app.add_option("--host", host_path, "host file; generated from the seed when absent");
    app.add_option("--target", target_path, "target file; generated from the seed when absent");
    app.add_option("--epsilon", epsilon_s);
    app.add_option("--m", cfg.m);
    app.add_option("--mode", mode_s);
    app.add_option("--verdicts", verdicts_s);
    app.add_option("--trials", cfg.sample_trials);
    app.add_option("--max-rounds", cfg.max_rounds);
    app.add_option("--growth", cfg.practical_growth);
    app.add_option("--floor", cfg.class_size_floor);
    app.add_option("--retries", cfg.clique_retries);
    app.add_option("--threads", threads);
    app.add_option("--seed", seed)->required();
    app.add_option("--report", report_path, "write the stage report here");
    app.add_option("--dump-host", dump_host, "also write the (generated) host");
    app.add_option("--dump-target", dump_target, "also write the (generated) target");
    app.add_flag("--strict-epsilon", cfg.strict_epsilon);
    app.add_flag("--randomized-embed", cfg.randomized_embed);
    if (int rc = parse_with(app, args, out); rc >= 0) return rc;

    cfg.epsilon = Rational::parse(epsilon_s);
    cfg.refine_mode = parse_refine_mode(mode_s);
    cfg.verdict_mode = parse_verdict_mode(verdicts_s);
    cfg.seed = seed;
    cfg.threads = resolve_threads(threads);
    if (parts > 0) cfg.p = parts;
    else if (auto known = known_ramsey(cfg.delta, cfg.r)) cfg.p = *known;
    else throw ArgumentError("no known Ramsey number for this delta/r; pass --parts");

    PartiteHost host = host_path.empty()
                           ? random_host(cfg.p, cfg.part_size, cfg.r, derive_seed(seed, 0x405f))
                           : load_host(host_path);
    DenseGraph target =
        target_path.empty()
            ? random_bounded_degree_graph(n, cfg.delta, derive_seed(seed, 0x7a59))
            : load_graph(target_path);
    if (!dump_host.empty()) {
        auto os = open_out(dump_host);
        write_host(os, host);
    }
    if (!dump_target.empty()) {
        auto os = open_out(dump_target);
        write_graph(os, target);
    }

    PipelineReport report = run_pipeline(host, target, cfg);
    if (!report_path.empty()) {
        auto os = open_out(report_path);
        os << report.to_text();
    }
    for (const auto& row : report.stages)
        out << "stage " << row.name << " status=" << (row.ok ? "ok" : "fail")
            << (row.note.empty() ? "" : " note=" + row.note) << "\n";
    out << "result success=" << (report.success ? "true" : "false") << "\n";
    return report.success ? 0 : 2;
}

int cmd_verify(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"re-check a pipeline report against its host and target"};
    std::string host_path, target_path, report_path;
    app.add_option("--host", host_path)->required();
    app.add_option("--target", target_path)->required();
    app.add_option("--report", report_path)->required();
    if (int rc = parse_with(app, args, out); rc >= 0) return rc;

    PartiteHost host = load_host(host_path);
    DenseGraph target = load_graph(target_path);
    std::ifstream rin(report_path);
    if (!rin) throw ArgumentError("cannot open " + report_path);
    ReportExtract extract = read_report(rin, report_path);
    if (!extract.success || extract.images.empty()) {
        out << "verify=false note=report carries no successful embedding\n";
        return 2;
    }

    TargetGraph tg;
    tg.graph = target;
    tg.delta = static_cast<int>(extract.clusters.size());
    tg.phi.assign(target.order(), -1);
    for (size_t at = 0; at < extract.images.size(); ++at)
        tg.phi[extract.images[at].first] = extract.cluster_of[at] - 1;

    EmbeddingState state;
    for (const auto& ids : extract.clusters) {
        VertexSet cluster(host.order());
        for (int v : ids) cluster.add(v);
        state.clusters.push_back(std::move(cluster));
    }
    state.images.assign(target.order(), -1);
    for (auto [u, v] : extract.images) state.images[u] = v;

    bool ok = verify_embedding(tg, state, host.monochrome_subgraph(extract.color));
    out << "verify=" << (ok ? "true" : "false") << "\n";
    return ok ? 0 : 2;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.empty()) {
        err << "usage: folkreg <gen|partition|check-pair|reduce|turan|embed|folkman|verify> "
               "[flags]\n";
        return 1;
    }
    std::vector<std::string> rest(args.begin() + 1, args.end());
    try {
        const std::string& cmd = args[0];
        if (cmd == "gen") return cmd_gen(rest, out);
        if (cmd == "partition") return cmd_partition(rest, out);
        if (cmd == "check-pair") return cmd_check_pair(rest, out);
        if (cmd == "reduce") return cmd_reduce(rest, out);
        if (cmd == "turan") return cmd_turan(rest, out);
        if (cmd == "embed") return cmd_embed(rest, out);
        if (cmd == "folkman") return cmd_folkman(rest, out);
        if (cmd == "verify") return cmd_verify(rest, out);
        err << "unknown command: " << cmd << "\n";
        return 1;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace folkreg::cli
