#include <cmath>
#include <map>
#include <string>

#include "retrorank/error.hpp"
#include "retrorank/reference.hpp"

namespace retrorank::reference {

KeywordScores textrank(const CoocGraph& graph, const TextRankOptions& options) {
  if (!(options.damping > 0.0 && options.damping < 1.0)) throw InvalidArgument("damping must lie in (0, 1)");
  if (!(options.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");

  std::map<std::string, std::map<std::string, double>> adj;
  for (const auto& term : graph.nodes()) adj[term];
  for (const auto& e : graph.edges()) {
    adj[e.a][e.b] = e.weight;
    adj[e.b][e.a] = e.weight;
  }
  std::map<std::string, double> out_weight;
  for (const auto& [term, nbrs] : adj) {
    double total = 0.0;
    for (const auto& [_, w] : nbrs) total += w;
    out_weight[term] = total;
  }

  KeywordScores result;
  result.damping = options.damping;
  result.converged = graph.node_count() == 0;
  for (const auto& term : graph.nodes()) result.scores[term] = 1.0;
  if (result.converged) return result;

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    std::map<std::string, double> next;
    double delta = 0.0;
    for (const auto& [term, nbrs] : adj) {
      double sum = 0.0;
      for (const auto& [other, w] : nbrs) sum += w / out_weight[other] * result.scores[other];
      next[term] = (1.0 - options.damping) + options.damping * sum;
      delta = std::max(delta, std::abs(next[term] - result.scores[term]));
    }
    result.scores = std::move(next);
    result.iterations_used = iter;
    if (delta < options.tolerance) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace retrorank::reference
