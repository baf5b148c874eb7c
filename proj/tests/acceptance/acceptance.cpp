// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "retrorank/cli.hpp"
#include "retrorank/error.hpp"
#include "retrorank/eval_stats.hpp"
#include "retrorank/ranker.hpp"
#include "retrorank/sentiment.hpp"
#include "retrorank/tdist.hpp"
#include "retrorank/textrank.hpp"
#include "retrorank/vsm_index.hpp"
#include "retrorank/wire.hpp"
#include "server_fixture.hpp"
#include "synthetic.hpp"
#include "test_util.hpp"

using namespace retrorank;
using namespace retrorank::testing;
using nlohmann::json;

namespace {

// Tolerances and budgets.
constexpr double kTCritLow = 2.0628, kTCritHigh = 2.0648;
constexpr double kClosedFormTol = 1e-4;
constexpr double kRoundTripTol = 1e-6;
constexpr double kTdistBudgetMs = 1000.0;
constexpr double kTTestTTol = 1e-4, kTTestPTol = 1e-3;
constexpr double kVsmTol = 1e-3, kSelfSimTol = 1e-9;
constexpr double kEdgeTol = 1e-4, kPathTol = 1e-3;
constexpr double kTextRankBudgetMs = 5000.0;
constexpr double kDirectionBudgetMs = 30000.0;
constexpr std::uint64_t kSyntheticSeed = 7;
constexpr int kParityQueries = 20;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates failed checks; the first few are reported.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (++failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  Outcome done(std::string detail = {}) const {
    if (failures_ == 0) return {true, std::move(detail)};
    return {false, std::to_string(failures_) + " failed: " + notes_};
  }

 private:
  int failures_ = 0;
  std::string notes_;
};

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

Outcome tdist_anchor() {
  Checker c;
  auto start = std::chrono::steady_clock::now();
  double crit = t_critical(24, 0.05);
  c.expect(crit >= kTCritLow && crit <= kTCritHigh, "t_critical(24, .05) = " + num(crit));
  double closed = 0.5 * (1.0 + std::sqrt(3.0) / std::sqrt(5.0));
  double cdf = t_cdf(std::sqrt(3.0), 2);
  c.expect(std::abs(cdf - 0.88730) < kClosedFormTol, "t_cdf(sqrt 3, 2) = " + num(cdf));
  c.expect(std::abs(cdf - closed) < kClosedFormTol, "closed form mismatch");
  double worst = 0.0;
  for (int df : {1, 2, 5, 10, 24, 100}) {
    for (double alpha : {0.01, 0.05, 0.10}) {
      double err = std::abs(t_cdf(t_critical(df, alpha), df) - (1.0 - alpha / 2.0));
      worst = std::max(worst, err);
      c.expect(err <= kRoundTripTol, "round trip df=" + std::to_string(df) + " alpha=" + num(alpha));
    }
  }
  double ms = elapsed_ms(start);
  c.expect(ms < kTdistBudgetMs, "runtime " + num(ms) + " ms");
  return c.done("t_crit=" + num(crit, 8) + " cdf=" + num(cdf, 8) + " worst round trip " + num(worst, 2) + ", " +
                num(ms, 3) + " ms");
}

Outcome paired_test_oracle() {
  Checker c;
  std::vector<double> a = {1, 2, 3}, b = {2, 2, 5};
  auto r = paired_t_test(a, b);
  c.expect(std::abs(r.t - (-1.7321)) <= kTTestTTol, "t = " + num(r.t));
  c.expect(r.df == 2, "df = " + std::to_string(r.df));
  c.expect(std::abs(r.p_two_tailed - 0.2254) <= kTTestPTol, "p = " + num(r.p_two_tailed));
  auto s = paired_t_test(b, a);
  c.expect(s.t == -r.t && s.p_two_tailed == r.p_two_tailed && s.decision == r.decision, "antisymmetry");
  bool zero = false;
  try {
    paired_t_test(a, a);
  } catch (const ZeroVarianceError&) {
    zero = true;
  }
  c.expect(zero, "identical samples did not raise a zero-variance error");
  bool shifted = false;
  try {
    std::vector<double> plus1 = {2, 3, 4};
    paired_t_test(a, plus1);
  } catch (const ZeroVarianceError&) {
    shifted = true;
  }
  c.expect(shifted, "constant shift did not raise a zero-variance error");
  return c.done("t=" + num(r.t) + " df=" + std::to_string(r.df) + " p=" + num(r.p_two_tailed));
}

Outcome vsm_oracle() {
  Checker c;
  std::vector<TokenizedDoc> docs = {doc_of({"fix", "crash"}, DocRef{"d1", 0}), doc_of({"fix"}, DocRef{"d2", 0}),
                                    doc_of({"render"}, DocRef{"d3", 0})};
  auto index = build_index(docs);
  auto hits = vsm_score(query_of({"fix"}), index);
  c.expect(hits.size() == 2, "expected 2 hits, got " + std::to_string(hits.size()));
  if (hits.size() == 2) {
    c.expect(hits[0].ref.bug_id == "d2" && std::abs(hits[0].score - 1.0) <= kVsmTol, "first hit");
    c.expect(hits[1].ref.bug_id == "d1" && std::abs(hits[1].score - 0.605) <= kVsmTol, "second hit");
  }

  std::mt19937_64 rng(101);
  std::vector<TokenizedDoc> random_docs;
  for (int i = 0; i < 100; ++i) random_docs.push_back(doc_of(random_terms(rng, 60, 1, 25), DocRef{"r", i}));
  auto big = build_index(random_docs);
  double worst = 0.0;
  for (const auto& d : random_docs) {
    auto res = vsm_score(query_of(d.terms), big);
    auto it = std::find_if(res.begin(), res.end(), [&](const ScoredDoc& s) { return s.ref == *d.ref; });
    double err = it == res.end() ? 1.0 : std::abs(it->score - 1.0);
    worst = std::max(worst, err);
    c.expect(err <= kSelfSimTol, "self-similarity of doc " + std::to_string(d.ref->index));
  }
  std::string detail = hits.size() == 2 ? "(" + num(hits[0].score, 4) + ", " + num(hits[1].score, 4) + ")" : "";
  return c.done(detail + ", worst self-similarity error " + num(worst, 2));
}

Outcome textrank_oracle() {
  Checker c;
  auto start = std::chrono::steady_clock::now();
  auto isolated = textrank(CoocGraph::from_edges({"a"}, {}));
  double iso = isolated.scores.at("a");
  c.expect(iso == 1.0 - 0.85, "isolated node " + num(iso, 17));

  std::vector<Edge> one = {{"a", "b", 1}};
  auto pair = textrank(CoocGraph::from_edges({"a", "b"}, one));
  for (const char* n : {"a", "b"})
    c.expect(std::abs(pair.scores.at(n) - 1.0) <= kEdgeTol, std::string("edge node ") + n);

  std::vector<Edge> path_edges = {{"a", "b", 1}, {"b", "c", 1}, {"c", "d", 1}};
  auto path = textrank(CoocGraph::from_edges({"a", "b", "c", "d"}, path_edges));
  const double expected[] = {0.7018, 1.2982, 1.2982, 0.7018};
  const char* names[] = {"a", "b", "c", "d"};
  for (int i = 0; i < 4; ++i)
    c.expect(std::abs(path.scores.at(names[i]) - expected[i]) <= kPathTol, std::string("path node ") + names[i]);

  std::mt19937_64 rng(202);
  int max_iter = 0;
  for (int g = 0; g < 50; ++g) {
    std::size_t n = 1 + rng() % 100;
    std::vector<std::string> nodes;
    for (std::size_t i = 0; i < n; ++i) nodes.push_back("n" + std::to_string(i));
    std::vector<Edge> edges;
    std::size_t m = rng() % (3 * n + 1);
    for (std::size_t e = 0; e < m; ++e) {
      std::size_t x = rng() % n, y = rng() % n;
      if (x == y) continue;
      auto lo = std::min(nodes[x], nodes[y]), hi = std::max(nodes[x], nodes[y]);
      edges.push_back({lo, hi, static_cast<std::uint32_t>(1 + rng() % 5)});
    }
    auto scores = textrank(CoocGraph::from_edges(nodes, edges), {0.85, 1e-4, 100});
    max_iter = std::max(max_iter, scores.iterations_used);
    c.expect(scores.converged && scores.iterations_used <= 100, "random graph " + std::to_string(g));
  }
  double ms = elapsed_ms(start);
  c.expect(ms < kTextRankBudgetMs, "runtime " + num(ms) + " ms");
  return c.done("isolated=" + num(iso, 17) + " path=(" + num(path.scores.at("a"), 5) + ", " +
                num(path.scores.at("b"), 5) + "), max iterations " + std::to_string(max_iter) + ", " + num(ms, 3) +
                " ms");
}

// Random resolved bugs over a t<i> vocabulary sprinkled with opinion words.
Corpus random_corpus(std::mt19937_64& rng, int bugs) {
  const std::vector<std::string> opinion = {"works", "great", "thanks", "crash", "fails", "error"};
  std::vector<BugReport> out;
  for (int b = 0; b < bugs; ++b) {
    BugReport bug;
    bug.id = std::to_string(5000 + b);
    bug.title = "bug " + bug.id;
    bug.status = BugStatus::resolved;
    int comments = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < comments; ++i) {
      std::string body;
      for (const auto& t : random_terms(rng, 40, 2, 15)) body += t + " ";
      if (rng() % 2) body += opinion[rng() % opinion.size()];
      bug.comments.push_back({bug.id, i, std::nullopt, std::nullopt, body});
    }
    out.push_back(std::move(bug));
  }
  return Corpus::from_bugs(std::move(out));
}

std::string random_query(std::mt19937_64& rng, std::size_t vocab) {
  std::string q;
  for (const auto& t : random_terms(rng, vocab, 1, 4)) q += t + " ";
  return q;
}

std::vector<DocRef> refs_of(std::span<const RankedComment> results) {
  std::vector<DocRef> out;
  for (const auto& r : results) out.push_back(r.ref);
  return out;
}

Outcome fusion_properties() {
  Checker c;
  std::mt19937_64 rng(303);
  int queries = 0;
  for (int trial = 0; trial < 10; ++trial) {
    Engine engine(random_corpus(rng, 40), default_stopwords(), default_lexicon());
    for (int qi = 0; qi < 10; ++qi) {
      auto q = random_query(rng, 40);
      ++queries;

      PipelineConfig vsm_only = *preset("vsm+sa+tr");
      vsm_only.w_vsm = 1.0;
      vsm_only.w_sa = 0.0;
      vsm_only.w_tr = 0.0;
      vsm_only.k = vsm_only.top_m;
      auto fused = engine.rank(q, vsm_only);
      auto hits = vsm_score(tokenize(q, engine.stopwords()), engine.index());
      if (hits.size() > static_cast<std::size_t>(vsm_only.top_m)) hits.resize(static_cast<std::size_t>(vsm_only.top_m));
      std::vector<DocRef> vsm_order;
      for (const auto& h : hits) vsm_order.push_back(h.ref);
      c.expect(refs_of(fused) == vsm_order, "weights (1,0,0) changed the VSM order");

      PipelineConfig full = *preset("vsm+sa+tr");
      full.w_vsm = 0.2 + static_cast<double>(rng() % 100) / 50.0;
      full.w_sa = 0.2 + static_cast<double>(rng() % 100) / 50.0;
      full.w_tr = 0.2 + static_cast<double>(rng() % 100) / 50.0;
      full.k = full.top_m;
      auto candidates = engine.score_candidates(q, full);
      auto base = fuse(candidates, full);
      auto scaled = candidates;
      const double sv = 3.5, ss = 0.25, st = 17.0;
      for (auto& s : scaled) {
        s.vsm_raw *= sv;
        s.sa_raw *= ss;
        s.tr_raw *= st;
      }
      c.expect(refs_of(fuse(scaled, full)) == refs_of(base), "rescaling changed the order");
      for (const auto& r : base) c.expect(r.combined >= 0.0 && r.combined <= 1.0, "combined out of [0,1]");

      PipelineConfig k5 = full, k10 = full;
      k5.k = 5;
      k10.k = 10;
      auto top5 = engine.rank(q, k5);
      auto top10 = engine.rank(q, k10);
      c.expect(top5.size() <= 5 && top10.size() <= 10, "k not honoured");
      c.expect(std::equal(top5.begin(), top5.end(), top10.begin()), "k=5 is not a prefix of k=10");
    }
  }
  return c.done(std::to_string(queries) + " random queries over 10 corpora");
}

Outcome sentiment_properties() {
  Checker c;
  const auto& lex = default_lexicon();
  auto swapped = lex.swapped();
  std::vector<std::string> pool(lex.positive().begin(), lex.positive().end());
  pool.insert(pool.end(), lex.negative().begin(), lex.negative().end());
  for (const char* w : {"the", "cell", "rotate", "patch", "file"}) pool.push_back(w);
  std::sort(pool.begin(), pool.end());

  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<std::string> words(rng() % 30);
    for (auto& w : words) w = pool[rng() % pool.size()];
    auto d = doc_of(words);
    auto s = sa_score(d, lex);
    c.expect(s.raw >= -1.0 && s.raw <= 1.0, "raw out of bounds");
    c.expect(sa_score(d, swapped).raw == -s.raw, "lexicon swap is not antisymmetric");
  }

  OpinionLexicon small({"works", "perfectly", "great"}, {"fails"});
  c.expect(sa_score(doc_of({"works", "perfectly"}), small).raw == 1.0, "[works, perfectly] != 1.0");
  auto empty = sa_score(doc_of({}), small);
  c.expect(empty.raw == 0.0 && empty.positive_hits == 0 && empty.negative_hits == 0, "empty doc != 0.0");
  OpinionLexicon mixed({"great"}, {"fails"});
  c.expect(sa_score(doc_of({"great", "fix", "fails"}), mixed).raw == 0.0, "[great, fix, fails] != 0.0");
  return c.done("2000 random documents, worked examples exact");
}

struct SyntheticRun {
  SyntheticData data;
  EvalReport report;
  double ms = 0.0;
};

const SyntheticRun& synthetic_run() {
  static const SyntheticRun run = [] {
    SyntheticRun r;
    auto start = std::chrono::steady_clock::now();
    r.data = make_synthetic(kSyntheticSeed);
    Engine engine(r.data.corpus, default_stopwords(), default_lexicon());
    std::vector<NamedConfig> configs;
    for (const auto& name : preset_names()) configs.push_back({name, *preset(name)});
    r.report = run_eval(engine, r.data.goldset, configs);
    r.ms = elapsed_ms(start);
    return r;
  }();
  return run;
}

Outcome direction_of_effect() {
  Checker c;
  const auto& run = synthetic_run();
  c.expect(run.data.comment_count >= 200, "only " + std::to_string(run.data.comment_count) + " comments");
  c.expect(run.data.goldset.size() == 10, "goldset size " + std::to_string(run.data.goldset.size()));
  std::map<std::string, double> mu;
  for (const auto& r : run.report.runs) mu[r.config_name] = r.mu;
  c.expect(mu.at("vsm+sa+tr") <= mu.at("vsm+sa"), "mu(vsm+sa+tr) > mu(vsm+sa)");
  c.expect(mu.at("vsm+sa") <= mu.at("vsm"), "mu(vsm+sa) > mu(vsm)");
  c.expect(mu.at("vsm+tr") <= mu.at("vsm"), "mu(vsm+tr) > mu(vsm)");
  c.expect(mu.at("vsm+sa+tr") < mu.at("vsm"), "mu(vsm+sa+tr) not < mu(vsm)");
  c.expect(run.ms < kDirectionBudgetMs, "runtime " + num(run.ms) + " ms");
  std::string detail = std::to_string(run.data.comment_count) + " comments, mu:";
  for (const auto& name : preset_names()) detail += " " + name + "=" + num(mu.at(name), 3);
  return c.done(detail + ", " + num(run.ms, 3) + " ms");
}

Outcome eval_plumbing() {
  Checker c;
  const auto& run = synthetic_run();
  auto j = wire::eval_report_json(run.report);
  double alpha = j["alpha"].get<double>();
  c.expect(j["pairs"].size() == 6, "expected 6 pair rows");
  int rejects = 0;
  for (const auto& row : j["pairs"]) {
    std::string name = row["config_a"].get<std::string>() + "/" + row["config_b"].get<std::string>();
    bool complete = true;
    for (const char* key : {"n", "mu_a", "mu_b", "p", "t", "t_crit", "decision"})
      complete = complete && row.contains(key) && !row[key].is_null();
    c.expect(complete, name + " lacks a column" + (row.contains("note") ? " (" + row["note"].get<std::string>() + ")" : ""));
    if (!complete) continue;
    bool reject = row["decision"] == "reject";
    bool by_t = std::abs(row["t"].get<double>()) > row["t_crit"].get<double>();
    bool by_p = row["p"].get<double>() < alpha;
    c.expect(reject == by_t && by_t == by_p, name + " decision inconsistent");
    rejects += reject ? 1 : 0;
  }
  return c.done(std::to_string(j["pairs"].size()) + " rows, " + std::to_string(rejects) + " reject");
}

Outcome interface_parity() {
  Checker c;
  const auto& data = synthetic_run().data;
  TempFile corpus_file("", ".jsonl");
  save_corpus(corpus_file.path(), data.corpus);
  Engine engine(load_corpus(corpus_file.path()), default_stopwords(), default_lexicon());
  ServerFixture server(engine);
  auto client = server.client();

  std::mt19937_64 rng(505);
  const std::vector<std::string> words = {"q0a", "q1b", "q2c", "q3a", "q4b", "q5c", "q6a", "q7b", "q8c", "q9a",
                                          "hub1", "hub3", "hub5", "works", "crash", "build", "menu", "zzz"};
  const auto& presets = preset_names();
  int compared = 0;
  for (int i = 0; i < kParityQueries; ++i) {
    std::string q;
    int len = 1 + static_cast<int>(rng() % 4);
    for (int w = 0; w < len; ++w) q += (w ? " " : "") + words[rng() % words.size()];
    std::string config = presets[rng() % presets.size()];
    int k = 1 + static_cast<int>(rng() % 15);

    std::vector<std::string> args = {"retrorank", "query", "--corpus", corpus_file.str(), "--q", q, "--config",
                                     config, "--k", std::to_string(k), "--format", "machine"};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    c.expect(code == 0, "CLI failed for '" + q + "': " + err.str());
    if (code != 0) continue;

    std::vector<json> lines;
    std::istringstream in(out.str());
    for (std::string line; std::getline(in, line);)
      if (!line.empty()) lines.push_back(json::parse(line));

    httplib::Params params = {{"q", q}, {"config", config}, {"k", std::to_string(k)}};
    auto res = client.Get("/api/query", params, httplib::Headers{});
    c.expect(res && res->status == 200, "API failed for '" + q + "'");
    if (!res || res->status != 200) continue;
    auto api = json::parse(res->body);

    const auto& results = api["results"];
    c.expect(lines.size() == results.size() + 1, "result count differs for '" + q + "'");
    if (lines.size() != results.size() + 1) continue;
    for (std::size_t r = 0; r < results.size(); ++r)
      c.expect(lines[r] == results[r], "result " + std::to_string(r) + " differs for '" + q + "'");
    const auto& trailer = lines.back();
    c.expect(trailer["config"] == api["config"], "config differs for '" + q + "'");
    c.expect(trailer["count"] == results.size(), "count differs for '" + q + "'");
    ++compared;
  }
  return c.done(std::to_string(compared) + " queries identical field for field (timing excluded)");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"t-distribution anchor", tdist_anchor},
      {"paired t-test oracle", paired_test_oracle},
      {"VSM oracle", vsm_oracle},
      {"TextRank oracle", textrank_oracle},
      {"fusion properties", fusion_properties},
      {"sentiment properties", sentiment_properties},
      {"direction of effect", direction_of_effect},
      {"evaluation plumbing", eval_plumbing},
      {"interface parity", interface_parity},
  };

  int failed = 0;
  for (const auto& criterion : criteria) {
    Outcome o;
    try {
      o = criterion.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << criterion.name << "  (" << o.detail << ")\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
