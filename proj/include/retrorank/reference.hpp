#pragma once

// Straightforward single-threaded versions of the parallel kernels. They share no
// loop structure with the production code and exist for cross-checking in tests and
// as the baseline in the benchmarks.

#include <vector>

#include "retrorank/textrank.hpp"
#include "retrorank/vsm_index.hpp"

namespace retrorank::reference {

/// Term-at-a-time accumulation over postings lists.
std::vector<ScoredDoc> vsm_score(const TokenizedDoc& query, const InvertedIndex& index);

/// Node-by-node sweep over a term-keyed adjacency map.
KeywordScores textrank(const CoocGraph& graph, const TextRankOptions& options = {});

}  // namespace retrorank::reference
