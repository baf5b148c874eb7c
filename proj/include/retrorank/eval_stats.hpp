#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "retrorank/ranker.hpp"
#include "retrorank/tdist.hpp"

namespace retrorank {

struct GoldsetEntry {
  std::string query_id;
  std::string query_text;
  std::set<DocRef> gold_refs;  ///< non-empty
};

/// Record-per-line file: `query_id`, `query_text`, `gold` ([{bug_id, index}, ...]).
std::vector<GoldsetEntry> parse_goldset(std::istream& in, const std::string& source_name = "<goldset>");
std::vector<GoldsetEntry> load_goldset(const std::filesystem::path& path);
void write_goldset(std::ostream& out, std::span<const GoldsetEntry> goldset);

/// Throws NotFoundError naming the first gold ref that is not a comment of a resolved bug.
void validate_goldset(std::span<const GoldsetEntry> goldset, const Corpus& corpus);

/// 1-based rank of the first result in `gold_refs`; top_m + 1 when none appears.
int goldset_rank(std::span<const RankedComment> results, const std::set<DocRef>& gold_refs, int top_m);

struct NamedConfig {
  std::string name;
  PipelineConfig config;
};

struct QueryRank {
  std::string query_id;
  int rank = 0;
  bool miss = false;
};

struct EvalRun {
  std::string config_name;
  std::vector<QueryRank> per_query;  ///< goldset order
  double mu = 0.0;                   ///< misses count as top_m + 1
  int n = 0;
  int misses = 0;
};

/// One comparison row: the columns of a paired significance table.
struct PairRow {
  std::string config_a;
  std::string config_b;
  int n = 0;
  double mu_a = 0.0;
  double mu_b = 0.0;
  std::optional<TTestResult> test;  ///< empty when the test is undefined
  std::string note;                 ///< why `test` is empty
};

struct EvalReport {
  double alpha = 0.05;
  std::vector<EvalRun> runs;
  std::vector<PairRow> pairs;
};

double mean_rank(std::span<const QueryRank> ranks);

/// Ranks every goldset query under each config (results cut at the config's top_m)
/// and compares every pair of configs (i < j, in the given order) with a paired
/// t-test on per-query ranks. Queries are evaluated in parallel.
EvalReport run_eval(const Engine& engine, std::span<const GoldsetEntry> goldset, std::span<const NamedConfig> configs,
                    double alpha = 0.05);

}  // namespace retrorank
