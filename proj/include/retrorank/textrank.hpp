#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "retrorank/text_prep.hpp"

namespace retrorank {

using NodeId = std::uint32_t;

struct Neighbor {
  NodeId node;
  std::uint32_t weight;
  bool operator==(const Neighbor&) const = default;
};

struct Edge {
  std::string a;  ///< a < b
  std::string b;
  std::uint32_t weight;
  bool operator==(const Edge&) const = default;
};

/// Undirected term co-occurrence graph, no self-loops. Nodes are sorted terms;
/// adjacency is stored CSR-style with neighbors in ascending node order.
class CoocGraph {
 public:
  CoocGraph() = default;

  /// Merges parallel edges by summing weights. Throws InvalidArgument on self-loops,
  /// zero weights, or edge endpoints missing from `nodes`.
  static CoocGraph from_edges(std::vector<std::string> nodes, std::span<const Edge> edges);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }
  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  std::optional<NodeId> node_id(std::string_view term) const;

  std::span<const Neighbor> neighbors(NodeId n) const {
    return std::span<const Neighbor>(adjacency_).subspan(offsets_[n], offsets_[n + 1] - offsets_[n]);
  }
  /// Sum of incident edge weights.
  double strength(NodeId n) const { return strength_[n]; }
  /// 0 when the terms are not adjacent.
  std::uint32_t edge_weight(std::string_view a, std::string_view b) const;
  std::vector<Edge> edges() const;

 private:
  std::vector<std::string> nodes_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<double> strength_;
};

/// Nodes are all distinct terms; each pair of distinct terms fewer than `window`
/// positions apart in a doc adds 1 to their edge. Throws InvalidArgument if window < 2.
CoocGraph build_cooc_graph(std::span<const TokenizedDoc> docs, std::size_t window = 2);

/// Debug dump, one `termA termB weight` line per edge.
void write_edge_list(std::ostream& out, const CoocGraph& graph);

struct TextRankOptions {
  double damping = 0.85;
  double tolerance = 1e-4;
  int max_iterations = 100;
};

struct KeywordScores {
  std::map<std::string, double> scores;
  double damping = 0.85;
  int iterations_used = 0;
  bool converged = true;
};

/// Weighted TextRank from a uniform start of 1.0 with synchronous updates:
///   s'(i) = (1 - d) + d * sum_j [w(j,i) / strength(j)] * s(j)
/// Stops once the largest per-node change drops below the tolerance. The node sweep
/// runs in parallel; each node's sum is accumulated in neighbor order.
KeywordScores textrank(const CoocGraph& graph, const TextRankOptions& options = {});

/// Mean score over the doc's distinct terms present in `scores`; 0 if none are.
double tr_score(const TokenizedDoc& doc, const KeywordScores& scores);

}  // namespace retrorank
