#include <random>

#include <benchmark/benchmark.h>

#include "retrorank/reference.hpp"
#include "retrorank/textrank.hpp"
#include "retrorank/vsm_index.hpp"
#include "test_util.hpp"

using namespace retrorank;
using retrorank::testing::doc_of;
using retrorank::testing::random_terms;

namespace {

struct VsmFixture {
  InvertedIndex index;
  std::vector<TokenizedDoc> queries;

  explicit VsmFixture(std::size_t docs) {
    std::mt19937_64 rng(1);
    std::vector<TokenizedDoc> corpus;
    for (std::size_t i = 0; i < docs; ++i)
      corpus.push_back(doc_of(random_terms(rng, 5000, 10, 80), DocRef{std::to_string(i), 0}));
    index = build_index(corpus);
    for (int q = 0; q < 16; ++q) queries.push_back(doc_of(random_terms(rng, 5000, 3, 8)));
  }
};

const VsmFixture& vsm_fixture(std::size_t docs) {
  static std::map<std::size_t, VsmFixture> cache;
  auto it = cache.find(docs);
  if (it == cache.end()) it = cache.emplace(docs, VsmFixture(docs)).first;
  return it->second;
}

CoocGraph random_graph(std::size_t docs) {
  std::mt19937_64 rng(2);
  std::vector<TokenizedDoc> pool;
  for (std::size_t i = 0; i < docs; ++i) pool.push_back(doc_of(random_terms(rng, docs * 4, 20, 120)));
  return build_cooc_graph(pool, 2);
}

template <auto Score>
void BM_vsm(benchmark::State& state) {
  const auto& f = vsm_fixture(static_cast<std::size_t>(state.range(0)));
  std::size_t q = 0;
  for (auto _ : state) {
    auto hits = Score(f.queries[q++ % f.queries.size()], f.index);
    benchmark::DoNotOptimize(hits.data());
  }
  state.SetItemsProcessed(state.iterations());
}

template <auto Rank>
void BM_textrank(benchmark::State& state) {
  auto graph = random_graph(static_cast<std::size_t>(state.range(0)));
  TextRankOptions options;
  options.tolerance = 1e-9;
  options.max_iterations = 50;
  for (auto _ : state) {
    auto scores = Rank(graph, options);
    benchmark::DoNotOptimize(scores.scores.size());
  }
  state.counters["nodes"] = static_cast<double>(graph.node_count());
}

KeywordScores textrank_parallel(const CoocGraph& g, const TextRankOptions& o) { return textrank(g, o); }
KeywordScores textrank_serial(const CoocGraph& g, const TextRankOptions& o) { return reference::textrank(g, o); }
std::vector<ScoredDoc> vsm_parallel(const TokenizedDoc& q, const InvertedIndex& i) { return vsm_score(q, i); }
std::vector<ScoredDoc> vsm_serial(const TokenizedDoc& q, const InvertedIndex& i) { return reference::vsm_score(q, i); }

}  // namespace

BENCHMARK(BM_vsm<vsm_parallel>)->Name("vsm_score/parallel")->Arg(2000)->Arg(20000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_vsm<vsm_serial>)->Name("vsm_score/reference")->Arg(2000)->Arg(20000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_textrank<textrank_parallel>)->Name("textrank/parallel")->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_textrank<textrank_serial>)->Name("textrank/reference")->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
