#include "retrorank/textrank.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <set>

#include "retrorank/error.hpp"

namespace retrorank {

namespace {

using EdgeKey = std::pair<NodeId, NodeId>;

// Builds CSR arrays from an edge-weight map keyed by (low, high) node ids.
void fill_adjacency(std::size_t n, const std::map<EdgeKey, std::uint32_t>& weights, std::vector<std::size_t>& offsets,
                    std::vector<Neighbor>& adjacency, std::vector<double>& strength) {
  std::vector<std::vector<Neighbor>> lists(n);
  for (const auto& [key, w] : weights) {
    lists[key.first].push_back({key.second, w});
    lists[key.second].push_back({key.first, w});
  }
  offsets.assign(n + 1, 0);
  adjacency.clear();
  strength.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto& list = lists[i];
    std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    for (const auto& nb : list) strength[i] += nb.weight;
    adjacency.insert(adjacency.end(), list.begin(), list.end());
    offsets[i + 1] = adjacency.size();
  }
}

}  // namespace

CoocGraph CoocGraph::from_edges(std::vector<std::string> nodes, std::span<const Edge> edges) {
  CoocGraph g;
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  g.nodes_ = std::move(nodes);
  std::map<EdgeKey, std::uint32_t> weights;
  for (const auto& e : edges) {
    auto a = g.node_id(e.a);
    auto b = g.node_id(e.b);
    if (!a || !b) throw InvalidArgument("edge endpoint not in node set: " + e.a + "-" + e.b);
    if (*a == *b) throw InvalidArgument("self-loop on '" + e.a + "'");
    if (e.weight == 0) throw InvalidArgument("zero-weight edge " + e.a + "-" + e.b);
    weights[{std::min(*a, *b), std::max(*a, *b)}] += e.weight;
  }
  fill_adjacency(g.nodes_.size(), weights, g.offsets_, g.adjacency_, g.strength_);
  return g;
}

std::optional<NodeId> CoocGraph::node_id(std::string_view term) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), term);
  if (it == nodes_.end() || *it != term) return std::nullopt;
  return static_cast<NodeId>(it - nodes_.begin());
}

std::uint32_t CoocGraph::edge_weight(std::string_view a, std::string_view b) const {
  auto ia = node_id(a);
  auto ib = node_id(b);
  if (!ia || !ib) return 0;
  for (const auto& nb : neighbors(*ia))
    if (nb.node == *ib) return nb.weight;
  return 0;
}

std::vector<Edge> CoocGraph::edges() const {
  std::vector<Edge> out;
  for (NodeId i = 0; i < nodes_.size(); ++i)
    for (const auto& nb : neighbors(i))
      if (i < nb.node) out.push_back({nodes_[i], nodes_[nb.node], nb.weight});
  return out;
}

CoocGraph build_cooc_graph(std::span<const TokenizedDoc> docs, std::size_t window) {
  if (window < 2) throw InvalidArgument("co-occurrence window must be at least 2");
  std::set<std::string> vocab;
  for (const auto& doc : docs) vocab.insert(doc.terms.begin(), doc.terms.end());

  CoocGraph g = CoocGraph::from_edges(std::vector<std::string>(vocab.begin(), vocab.end()), {});
  std::map<EdgeKey, std::uint32_t> weights;
  for (const auto& doc : docs) {
    std::vector<NodeId> ids;
    ids.reserve(doc.terms.size());
    for (const auto& t : doc.terms) ids.push_back(*g.node_id(t));
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size() && j - i < window; ++j) {
        if (ids[i] == ids[j]) continue;
        ++weights[{std::min(ids[i], ids[j]), std::max(ids[i], ids[j])}];
      }
    }
  }
  std::vector<Edge> edges;
  edges.reserve(weights.size());
  for (const auto& [key, w] : weights) edges.push_back({g.nodes()[key.first], g.nodes()[key.second], w});
  return CoocGraph::from_edges(g.nodes(), edges);
}

void write_edge_list(std::ostream& out, const CoocGraph& graph) {
  for (const auto& e : graph.edges()) out << e.a << ' ' << e.b << ' ' << e.weight << '\n';
}

KeywordScores textrank(const CoocGraph& graph, const TextRankOptions& options) {
  if (!(options.damping > 0.0 && options.damping < 1.0)) throw InvalidArgument("damping must lie in (0, 1)");
  if (!(options.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (options.max_iterations < 0) throw InvalidArgument("max_iterations must be non-negative");

  const double d = options.damping;
  const auto n = static_cast<std::int64_t>(graph.node_count());
  KeywordScores result;
  result.damping = d;
  result.converged = true;

  std::vector<double> current(graph.node_count(), 1.0);
  std::vector<double> next(graph.node_count(), 0.0);
  if (n > 0) {
    result.converged = false;
    // share of node j's score passed along each unit of edge weight
    std::vector<double> inv_strength(graph.node_count(), 0.0);
    for (NodeId j = 0; j < graph.node_count(); ++j)
      if (graph.strength(j) > 0.0) inv_strength[j] = 1.0 / graph.strength(j);

    for (int iter = 1; iter <= options.max_iterations; ++iter) {
      double delta = 0.0;
#pragma omp parallel for schedule(static) reduction(max : delta)
      for (std::int64_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (const auto& nb : graph.neighbors(static_cast<NodeId>(i)))
          sum += nb.weight * inv_strength[nb.node] * current[nb.node];
        double value = (1.0 - d) + d * sum;
        next[static_cast<std::size_t>(i)] = value;
        delta = std::max(delta, std::abs(value - current[static_cast<std::size_t>(i)]));
      }
      current.swap(next);
      result.iterations_used = iter;
      if (delta < options.tolerance) {
        result.converged = true;
        break;
      }
    }
  }
  for (NodeId i = 0; i < graph.node_count(); ++i) result.scores.emplace(graph.nodes()[i], current[i]);
  return result;
}

double tr_score(const TokenizedDoc& doc, const KeywordScores& scores) {
  std::set<std::string_view> distinct(doc.terms.begin(), doc.terms.end());
  double sum = 0.0;
  int hits = 0;
  for (auto term : distinct) {
    auto it = scores.scores.find(std::string(term));
    if (it == scores.scores.end()) continue;
    sum += it->second;
    ++hits;
  }
  return hits == 0 ? 0.0 : sum / hits;
}

}  // namespace retrorank
