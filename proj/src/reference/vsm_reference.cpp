#include <cmath>
#include <map>

#include "retrorank/error.hpp"
#include "retrorank/reference.hpp"

namespace retrorank::reference {

std::vector<ScoredDoc> vsm_score(const TokenizedDoc& query, const InvertedIndex& index) {
  if (query.terms.empty()) throw EmptyQueryError();

  // map keeps query terms in ascending id order
  std::map<TermId, std::uint32_t> counts;
  for (const auto& term : query.terms)
    if (auto id = index.term_id(term)) ++counts[*id];
  if (counts.empty()) return {};

  std::vector<double> acc(index.doc_count(), 0.0);
  double qsum = 0.0;
  for (auto [id, f] : counts) {
    double idf = index.idf(id);
    double qw = tf_weight(f) * idf;
    qsum += qw * qw;
    for (const auto& p : index.postings(id)) acc[p.doc] += qw * (tf_weight(p.tf) * idf);
  }
  double qnorm = std::sqrt(qsum);

  std::vector<ScoredDoc> out;
  for (DocOrdinal d = 0; d < acc.size(); ++d) {
    if (acc[d] <= 0.0) continue;
    out.push_back({index.docs()[d], d, std::min(1.0, acc[d] / (qnorm * index.doc_norm(d)))});
  }
  sort_by_score(out);
  return out;
}

}  // namespace retrorank::reference
