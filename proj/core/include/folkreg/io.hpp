#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "folkreg/graph.hpp"
#include "folkreg/harness.hpp"
#include "folkreg/host.hpp"
#include "folkreg/partition.hpp"
#include "folkreg/regularity.hpp"
#include "folkreg/turan.hpp"

namespace folkreg {

// Text formats, LF-terminated. Vertices are global 0-based indices; parts and
// non-exceptional classes are 1-based in files, with class 0 the exceptional
// class. Parse errors throw ParseError carrying "<file>:<line>".

// graph <n> <m> followed by m lines "u v", 0 <= u < v < n
void write_graph(std::ostream& os, const DenseGraph& g);
DenseGraph read_graph(std::istream& is, const std::string& filename);

// partite <p> <r> <s1> ... <sp> followed by edge lines "u v c"
void write_host(std::ostream& os, const PartiteHost& host);
PartiteHost read_host(std::istream& is, const std::string& filename);

// partition p=<p> k=<k> style=<exc|near> epsilon=<num>/<den> q=<num>/<den>
// then one line per class: "part <s> class <i>: <sorted vertex ids>"
struct PartitionFile {
    Partition partition;
    Rational epsilon;
    Rational q;
};
void write_partition(std::ostream& os, const Partition& p, const Rational& epsilon,
                     const Rational& q);
PartitionFile read_partition(std::istream& is, const std::string& filename);

// pair <s> <i> <t> <j> color=<c> d=<num>/<den> verdict=<R|I|P>
//   [witnessX=<hex> witnessY=<hex>]        (s, t, i, j 1-based)
std::string pair_stats_line(int s, int i, int t, int j, int color, const PairStats& stats);

// reduced <p> <k> <r> then "edge <s> <i> <t> <j> regular=<0|1> d=<r0> <r1> ..."
void write_reduced(std::ostream& os, const ReducedGraph& g);
ReducedGraph read_reduced(std::istream& is, const std::string& filename);

// clusters <count> <universe> then "cluster <i>: <sorted vertex ids>" (i 1-based)
void write_clusters(std::ostream& os, const std::vector<VertexSet>& clusters);
std::vector<VertexSet> read_clusters(std::istream& is, const std::string& filename);

// map <u> -> <v> cluster <c>   (u, v 0-based; c 1-based)
std::string embedding_lines(const EmbeddingState& state, const std::vector<int>& phi);

/// What `verify` needs back out of a pipeline report: the winning color, the
/// delta host clusters, and the embedding map.
struct ReportExtract {
    bool success = false;
    int color = -1;
    std::vector<std::vector<int>> clusters;  // vertex ids per cluster, 1-based order
    std::vector<std::pair<int, int>> images; // (target vertex, host vertex)
    std::vector<int> cluster_of;             // 1-based cluster per target vertex
};
ReportExtract read_report(std::istream& is, const std::string& filename);

} // namespace folkreg
