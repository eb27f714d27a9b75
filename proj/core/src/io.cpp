#include "folkreg/io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace folkreg {

std::string VertexSet::to_hex() const {
    std::string out;
    bool started = false;
    for (size_t i = words_.size(); i-- > 0;) {
        for (int nib = 15; nib >= 0; --nib) {
            int val = static_cast<int>((words_[i] >> (nib * 4)) & 0xf);
            if (!started && val == 0 && !(i == 0 && nib == 0)) continue;
            started = true;
            out += "0123456789abcdef"[val];
        }
    }
    return out.empty() ? "0" : out;
}

VertexSet VertexSet::from_hex(int universe, const std::string& hex) {
    VertexSet s(universe);
    for (size_t pos = 0; pos < hex.size(); ++pos) {
        char c = hex[hex.size() - 1 - pos];
        int val;
        if (c >= '0' && c <= '9') val = c - '0';
        else if (c >= 'a' && c <= 'f') val = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') val = c - 'A' + 10;
        else throw ArgumentError("bad hex digit in bitmask");
        for (int b = 0; b < 4; ++b)
            if (val & (1 << b)) s.add(static_cast<int>(pos * 4 + b));
    }
    return s;
}

namespace {

// line reader keeping the position for diagnostics
struct LineReader {
    std::istream& is;
    std::string file;
    int line_no = 0;

    bool next(std::string& line) {
        while (std::getline(is, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& reason) const {
        throw ParseError(file, line_no, reason);
    }
};

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

long long to_int(LineReader& r, const std::string& tok) {
    try {
        size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) r.fail("not an integer: " + tok);
        return v;
    } catch (const std::exception&) {
        r.fail("not an integer: " + tok);
    }
}

// value of "key=value"
std::string field(LineReader& r, const std::string& tok, const std::string& key) {
    if (tok.rfind(key + "=", 0) != 0) r.fail("expected " + key + "=..., got " + tok);
    return tok.substr(key.size() + 1);
}

} // namespace

void write_graph(std::ostream& os, const DenseGraph& g) {
    os << "graph " << g.order() << " " << g.edge_count() << "\n";
    for (auto [u, v] : g.edges()) os << u << " " << v << "\n";
}

DenseGraph read_graph(std::istream& is, const std::string& filename) {
    LineReader r{is, filename};
    std::string line;
    if (!r.next(line)) r.fail("empty graph file");
    auto toks = split_ws(line);
    if (toks.size() != 3 || toks[0] != "graph") r.fail("expected: graph <n> <m>");
    int n = static_cast<int>(to_int(r, toks[1]));
    long long m = to_int(r, toks[2]);
    DenseGraph g(n);
    for (long long e = 0; e < m; ++e) {
        if (!r.next(line)) r.fail("expected " + std::to_string(m) + " edges");
        toks = split_ws(line);
        if (toks.size() != 2) r.fail("expected: <u> <v>");
        int u = static_cast<int>(to_int(r, toks[0]));
        int v = static_cast<int>(to_int(r, toks[1]));
        if (u >= v) r.fail("edges must satisfy u < v");
        try {
            g.add_edge(u, v);
        } catch (const ArgumentError& err) {
            r.fail(err.what());
        }
    }
    if (r.next(line)) r.fail("trailing content after the edge list");
    return g;
}

void write_host(std::ostream& os, const PartiteHost& host) {
    os << "partite " << host.part_count() << " "
       << (host.colored() ? host.color_count() : 1);
    for (int s = 0; s < host.part_count(); ++s) os << " " << host.part_size(s);
    os << "\n";
    for (auto [u, v] : host.graph().edges())
        os << u << " " << v << " " << (host.colored() ? host.color_of(u, v) : 0) << "\n";
}

PartiteHost read_host(std::istream& is, const std::string& filename) {
    LineReader r{is, filename};
    std::string line;
    if (!r.next(line)) r.fail("empty host file");
    auto toks = split_ws(line);
    if (toks.size() < 3 || toks[0] != "partite")
        r.fail("expected: partite <p> <r> <s1> ... <sp>");
    int p = static_cast<int>(to_int(r, toks[1]));
    int num_colors = static_cast<int>(to_int(r, toks[2]));
    if (p < 2) r.fail("p must be >= 2");
    if (num_colors < 1) r.fail("r must be >= 1");
    if (static_cast<int>(toks.size()) != 3 + p) r.fail("expected " + std::to_string(p) + " part sizes");
    std::vector<int> sizes;
    int n = 0;
    for (int s = 0; s < p; ++s) {
        sizes.push_back(static_cast<int>(to_int(r, toks[3 + s])));
        n += sizes.back();
    }
    std::vector<std::pair<int, int>> edges;
    std::vector<int> colors;
    while (r.next(line)) {
        toks = split_ws(line);
        if (toks.size() != 3) r.fail("expected: <u> <v> <c>");
        int u = static_cast<int>(to_int(r, toks[0]));
        int v = static_cast<int>(to_int(r, toks[1]));
        int c = static_cast<int>(to_int(r, toks[2]));
        if (u >= v) r.fail("edges must satisfy u < v");
        if (c < 0 || c >= num_colors) r.fail("color out of range");
        edges.emplace_back(u, v);
        colors.push_back(c);
    }
    // colors must line up with the graph's canonical edge order
    std::vector<size_t> order(edges.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return edges[a] < edges[b]; });
    std::vector<std::pair<int, int>> sorted_edges;
    std::vector<int> sorted_colors;
    for (size_t idx : order) {
        sorted_edges.push_back(edges[idx]);
        sorted_colors.push_back(colors[idx]);
    }
    try {
        DenseGraph g(n, sorted_edges);
        return PartiteHost(std::move(sizes), std::move(g), num_colors, sorted_colors);
    } catch (const ArgumentError& err) {
        r.fail(err.what());
    }
}

void write_partition(std::ostream& os, const Partition& p, const Rational& epsilon,
                     const Rational& q) {
    os << "partition p=" << p.part_count() << " k=" << p.k() << " style="
       << (p.style() == PartitionStyle::WithExceptional ? "exc" : "near")
       << " epsilon=" << epsilon.str() << " q=" << q.str() << "\n";
    for (int s = 0; s < p.part_count(); ++s) {
        if (p.style() == PartitionStyle::WithExceptional) {
            os << "part " << (s + 1) << " class 0:";
            for (int v : p.exceptional(s).to_vector()) os << " " << v;
            os << "\n";
        }
        for (int i = 0; i < p.k(); ++i) {
            os << "part " << (s + 1) << " class " << (i + 1) << ":";
            for (int v : p.class_at(s, i).to_vector()) os << " " << v;
            os << "\n";
        }
    }
}

PartitionFile read_partition(std::istream& is, const std::string& filename) {
    LineReader r{is, filename};
    std::string line;
    if (!r.next(line)) r.fail("empty partition file");
    auto toks = split_ws(line);
    if (toks.size() != 6 || toks[0] != "partition")
        r.fail("expected: partition p=<p> k=<k> style=<exc|near> epsilon=<..> q=<..>");
    int p = static_cast<int>(to_int(r, field(r, toks[1], "p")));
    int k = static_cast<int>(to_int(r, field(r, toks[2], "k")));
    std::string style_s = field(r, toks[3], "style");
    if (style_s != "exc" && style_s != "near") r.fail("style must be exc or near");
    PartitionStyle style =
        style_s == "exc" ? PartitionStyle::WithExceptional : PartitionStyle::NearEquitable;
    Rational epsilon, q;
    try {
        epsilon = Rational::parse(field(r, toks[4], "epsilon"));
        q = Rational::parse(field(r, toks[5], "q"));
    } catch (const ArgumentError& err) {
        r.fail(err.what());
    }
    std::vector<std::vector<std::vector<int>>> classes(p,
                                                       std::vector<std::vector<int>>(k + 1));
    int max_vertex = -1;
    while (r.next(line)) {
        toks = split_ws(line);
        if (toks.size() < 4 || toks[0] != "part" || toks[2] != "class")
            r.fail("expected: part <s> class <i>: <ids>");
        int s = static_cast<int>(to_int(r, toks[1]));
        std::string itok = toks[3];
        if (itok.empty() || itok.back() != ':') r.fail("class index must end with ':'");
        itok.pop_back();
        int i = static_cast<int>(to_int(r, itok));
        if (s < 1 || s > p) r.fail("part index out of range");
        if (i < 0 || i > k) r.fail("class index out of range");
        if (i == 0 && style == PartitionStyle::NearEquitable)
            r.fail("near-equitable partitions have no exceptional class");
        for (size_t at = 4; at < toks.size(); ++at) {
            int v = static_cast<int>(to_int(r, toks[at]));
            classes[s - 1][i].push_back(v);
            max_vertex = std::max(max_vertex, v);
        }
    }
    int universe = max_vertex + 1;
    std::vector<std::vector<VertexSet>> cls(p);
    std::vector<VertexSet> exc(p, VertexSet(universe));
    for (int s = 0; s < p; ++s) {
        for (int i = 1; i <= k; ++i) {
            VertexSet set(universe);
            for (int v : classes[s][i]) set.add(v);
            cls[s].push_back(std::move(set));
        }
        for (int v : classes[s][0]) exc[s].add(v);
    }
    try {
        return PartitionFile{Partition(style, universe, std::move(cls), std::move(exc)), epsilon,
                             q};
    } catch (const ArgumentError& err) {
        r.fail(err.what());
    }
}

std::string pair_stats_line(int s, int i, int t, int j, int color, const PairStats& stats) {
    std::ostringstream os;
    os << "pair " << s << " " << i << " " << t << " " << j << " color=" << color
       << " d=" << stats.density.str() << " verdict=" << verdict_letter(stats.verdict);
    if (stats.witness)
        os << " witnessX=" << stats.witness->x.to_hex() << " witnessY=" << stats.witness->y.to_hex();
    return os.str();
}

void write_reduced(std::ostream& os, const ReducedGraph& g) {
    int r = 0;
    for (int a = 0; a < g.node_count() && r == 0; ++a)
        for (int b = a + 1; b < g.node_count(); ++b)
            if (g.has_edge(a, b)) {
                r = static_cast<int>(g.label(a, b).densities.size());
                break;
            }
    os << "reduced " << g.parts() << " " << g.clusters_per_part() << " " << r << "\n";
    for (int a = 0; a < g.node_count(); ++a)
        for (int b = a + 1; b < g.node_count(); ++b) {
            if (!g.has_edge(a, b)) continue;
            const auto& label = g.label(a, b);
            os << "edge " << (g.part_of(a) + 1) << " " << (g.cluster_of(a) + 1) << " "
               << (g.part_of(b) + 1) << " " << (g.cluster_of(b) + 1)
               << " regular=" << (label.regular ? 1 : 0) << " d=";
            for (size_t c = 0; c < label.densities.size(); ++c) {
                if (c) os << ",";
                os << label.densities[c].str();
            }
            os << "\n";
        }
}

ReducedGraph read_reduced(std::istream& is, const std::string& filename) {
    LineReader r{is, filename};
    std::string line;
    if (!r.next(line)) r.fail("empty reduced-graph file");
    auto toks = split_ws(line);
    if (toks.size() != 4 || toks[0] != "reduced") r.fail("expected: reduced <p> <k> <r>");
    int p = static_cast<int>(to_int(r, toks[1]));
    int k = static_cast<int>(to_int(r, toks[2]));
    ReducedGraph g(p, k);
    while (r.next(line)) {
        toks = split_ws(line);
        if (toks.size() != 7 || toks[0] != "edge")
            r.fail("expected: edge <s> <i> <t> <j> regular=<0|1> d=<list>");
        int s = static_cast<int>(to_int(r, toks[1])) - 1;
        int i = static_cast<int>(to_int(r, toks[2])) - 1;
        int t = static_cast<int>(to_int(r, toks[3])) - 1;
        int j = static_cast<int>(to_int(r, toks[4])) - 1;
        ReducedEdgeLabel label;
        label.regular = to_int(r, field(r, toks[5], "regular")) != 0;
        std::string ds = field(r, toks[6], "d");
        std::istringstream ds_in(ds);
        std::string piece;
        try {
            while (std::getline(ds_in, piece, ',')) label.densities.push_back(Rational::parse(piece));
            g.add_edge(g.node(s, i), g.node(t, j), std::move(label));
        } catch (const ArgumentError& err) {
            r.fail(err.what());
        }
    }
    return g;
}

void write_clusters(std::ostream& os, const std::vector<VertexSet>& clusters) {
    int universe = clusters.empty() ? 0 : clusters[0].universe();
    os << "clusters " << clusters.size() << " " << universe << "\n";
    for (size_t c = 0; c < clusters.size(); ++c) {
        os << "cluster " << (c + 1) << ":";
        for (int v : clusters[c].to_vector()) os << " " << v;
        os << "\n";
    }
}

std::vector<VertexSet> read_clusters(std::istream& is, const std::string& filename) {
    LineReader r{is, filename};
    std::string line;
    if (!r.next(line)) r.fail("empty cluster file");
    auto toks = split_ws(line);
    if (toks.size() != 3 || toks[0] != "clusters") r.fail("expected: clusters <count> <universe>");
    int count = static_cast<int>(to_int(r, toks[1]));
    int universe = static_cast<int>(to_int(r, toks[2]));
    std::vector<VertexSet> out;
    for (int c = 0; c < count; ++c) {
        if (!r.next(line)) r.fail("expected " + std::to_string(count) + " cluster lines");
        toks = split_ws(line);
        if (toks.size() < 2 || toks[0] != "cluster") r.fail("expected: cluster <i>: <ids>");
        VertexSet set(universe);
        for (size_t at = 2; at < toks.size(); ++at)
            set.add(static_cast<int>(to_int(r, toks[at])));
        out.push_back(std::move(set));
    }
    return out;
}

std::string embedding_lines(const EmbeddingState& state, const std::vector<int>& phi) {
    std::ostringstream os;
    for (size_t i = 0; i < state.images.size(); ++i)
        os << "map " << i << " -> " << state.images[i] << " cluster " << (phi[i] + 1) << "\n";
    return os.str();
}

ReportExtract read_report(std::istream& is, const std::string& filename) {
    LineReader r{is, filename};
    ReportExtract out;
    std::string line;
    while (r.next(line)) {
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "colorstep" && toks.size() >= 2) {
            out.color = static_cast<int>(to_int(r, field(r, toks[1], "color")));
        } else if (toks[0] == "cluster" && toks.size() >= 2) {
            std::string itok = toks[1];
            if (!itok.empty() && itok.back() == ':') itok.pop_back();
            int idx = static_cast<int>(to_int(r, itok));
            if (idx != static_cast<int>(out.clusters.size()) + 1)
                r.fail("cluster lines out of order");
            std::vector<int> ids;
            for (size_t at = 2; at < toks.size(); ++at)
                ids.push_back(static_cast<int>(to_int(r, toks[at])));
            out.clusters.push_back(std::move(ids));
        } else if (toks[0] == "map") {
            if (toks.size() != 6 || toks[2] != "->" || toks[4] != "cluster")
                r.fail("expected: map <u> -> <v> cluster <c>");
            out.images.emplace_back(static_cast<int>(to_int(r, toks[1])),
                                    static_cast<int>(to_int(r, toks[3])));
            out.cluster_of.push_back(static_cast<int>(to_int(r, toks[5])));
        } else if (toks[0] == "result" && toks.size() >= 2) {
            out.success = field(r, toks[1], "success") == "true";
        }
    }
    return out;
}

} // namespace folkreg
