#include "retrorank/eval_stats.hpp"

#include <cstdint>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include <json.hpp>

#include "retrorank/error.hpp"
#include "retrorank/text_util.hpp"

namespace retrorank {

using nlohmann::json;

std::vector<GoldsetEntry> parse_goldset(std::istream& in, const std::string& source_name) {
  std::vector<GoldsetEntry> out;
  std::map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    auto fail = [&](const std::string& what) { throw ParseError(source_name, line_no, what); };
    json rec;
    try {
      rec = json::parse(text);
    } catch (const json::parse_error& e) {
      fail(std::string("malformed record: ") + e.what());
    }
    if (!rec.is_object()) fail("record is not an object");
    GoldsetEntry entry;
    auto id = rec.find("query_id");
    auto q = rec.find("query_text");
    auto gold = rec.find("gold");
    if (id == rec.end() || !id->is_string()) fail("field 'query_id' must be a string");
    if (q == rec.end() || !q->is_string()) fail("field 'query_text' must be a string");
    if (gold == rec.end() || !gold->is_array() || gold->empty()) fail("field 'gold' must be a non-empty array");
    entry.query_id = id->get<std::string>();
    entry.query_text = q->get<std::string>();
    for (const auto& g : *gold) {
      if (!g.is_object() || !g.contains("bug_id") || !g["bug_id"].is_string() || !g.contains("index") ||
          !g["index"].is_number_integer())
        fail("gold entries need a string 'bug_id' and an integer 'index'");
      entry.gold_refs.insert(DocRef{g["bug_id"].get<std::string>(), g["index"].get<int>()});
    }
    if (!seen.emplace(entry.query_id, line_no).second) fail("duplicate query_id '" + entry.query_id + "'");
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<GoldsetEntry> load_goldset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read goldset file '" + path.string() + "'");
  return parse_goldset(in, path.string());
}

void write_goldset(std::ostream& out, std::span<const GoldsetEntry> goldset) {
  for (const auto& e : goldset) {
    json gold = json::array();
    for (const auto& ref : e.gold_refs) gold.push_back({{"bug_id", ref.bug_id}, {"index", ref.index}});
    out << json{{"query_id", e.query_id}, {"query_text", e.query_text}, {"gold", gold}}.dump() << '\n';
  }
}

void validate_goldset(std::span<const GoldsetEntry> goldset, const Corpus& corpus) {
  for (const auto& e : goldset) {
    for (const auto& ref : e.gold_refs) {
      const auto* bug = corpus.find_bug(ref.bug_id);
      if (!bug || bug->status != BugStatus::resolved || !corpus.find_comment(ref))
        throw NotFoundError("goldset query '" + e.query_id + "' references unknown " + to_string(ref) +
                            " (bug id '" + ref.bug_id + "')");
    }
  }
}

int goldset_rank(std::span<const RankedComment> results, const std::set<DocRef>& gold_refs, int top_m) {
  for (std::size_t i = 0; i < results.size() && i < static_cast<std::size_t>(top_m); ++i)
    if (gold_refs.contains(results[i].ref)) return static_cast<int>(i + 1);
  return top_m + 1;
}

double mean_rank(std::span<const QueryRank> ranks) {
  if (ranks.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : ranks) sum += r.rank;
  return sum / static_cast<double>(ranks.size());
}

namespace {

EvalRun evaluate_config(const Engine& engine, std::span<const GoldsetEntry> goldset, const NamedConfig& named) {
  PipelineConfig config = named.config;
  config.k = config.top_m;  // goldset hits anywhere in the candidate pool count
  config.validate();

  EvalRun run;
  run.config_name = named.name;
  run.n = static_cast<int>(goldset.size());
  run.per_query.resize(goldset.size());

  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(goldset.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& entry = goldset[static_cast<std::size_t>(i)];
    auto& out = run.per_query[static_cast<std::size_t>(i)];
    out.query_id = entry.query_id;
    try {
      auto results = engine.rank(entry.query_text, config);
      out.rank = goldset_rank(results, entry.gold_refs, config.top_m);
    } catch (const EmptyQueryError&) {
      out.rank = config.top_m + 1;
    } catch (...) {
#pragma omp critical(retrorank_eval_failure)
      if (!failure) failure = std::current_exception();
    }
    out.miss = out.rank == config.top_m + 1;
  }
  if (failure) std::rethrow_exception(failure);

  for (const auto& r : run.per_query) run.misses += r.miss ? 1 : 0;
  run.mu = mean_rank(run.per_query);
  return run;
}

}  // namespace

EvalReport run_eval(const Engine& engine, std::span<const GoldsetEntry> goldset, std::span<const NamedConfig> configs,
                    double alpha) {
  if (goldset.empty()) throw InvalidArgument("goldset is empty");
  validate_goldset(goldset, engine.corpus());
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");

  EvalReport report;
  report.alpha = alpha;
  for (const auto& c : configs) report.runs.push_back(evaluate_config(engine, goldset, c));

  for (std::size_t i = 0; i < report.runs.size(); ++i) {
    for (std::size_t j = i + 1; j < report.runs.size(); ++j) {
      const auto& a = report.runs[i];
      const auto& b = report.runs[j];
      PairRow row{a.config_name, b.config_name, a.n, a.mu, b.mu, std::nullopt, {}};
      std::vector<double> ra, rb;
      for (const auto& q : a.per_query) ra.push_back(q.rank);
      for (const auto& q : b.per_query) rb.push_back(q.rank);
      try {
        row.test = paired_t_test(ra, rb, alpha);
      } catch (const InvalidArgument& e) {
        row.note = e.what();
      }
      report.pairs.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace retrorank
