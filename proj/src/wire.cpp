#include "retrorank/wire.hpp"

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "retrorank/error.hpp"
#include "retrorank/text_util.hpp"

namespace retrorank::wire {

using nlohmann::json;

namespace {

double parse_weight(std::string_view text) {
  std::string s(trim(text));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw InvalidArgument("malformed weight '" + s + "'");
  return v;
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string one_line(std::string_view s, std::size_t max_bytes) {
  std::string out = utf8_prefix(s, max_bytes);
  for (auto& c : out)
    if (c == '\n' || c == '\r' || c == '\t') c = ' ';
  if (out.size() < s.size()) out += "...";
  return out;
}

}  // namespace

NamedConfig resolve_config(std::string_view preset_name, std::optional<std::string_view> weights,
                           std::optional<int> k, std::optional<int> top_m) {
  auto config = preset(preset_name);
  if (!config) {
    std::string valid;
    for (const auto& name : preset_names()) valid += (valid.empty() ? "" : ", ") + name;
    throw InvalidArgument("unknown config '" + std::string(preset_name) + "'; valid presets: " + valid);
  }
  if (weights && !trim(*weights).empty()) {
    std::vector<double> w;
    std::string_view rest = *weights;
    while (true) {
      auto comma = rest.find(',');
      w.push_back(parse_weight(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (w.size() != 3) throw InvalidArgument("weights take three values: w_vsm,w_sa,w_tr");
    config->w_vsm = w[0];
    config->w_sa = w[1];
    config->w_tr = w[2];
  }
  if (k) config->k = *k;
  if (top_m) config->top_m = *top_m;
  config->validate();
  return {std::string(preset_name), *config};
}

json config_json(const NamedConfig& named) {
  const auto& c = named.config;
  auto w = c.effective_weights();
  return {{"name", named.name},
          {"stages", c.stages()},
          {"enable_sa", c.enable_sa},
          {"enable_tr", c.enable_tr},
          {"weights", {{"vsm", w[0]}, {"sa", w[1]}, {"tr", w[2]}}},
          {"k", c.k},
          {"top_m", c.top_m}};
}

json result_json(const Engine& engine, const RankedComment& r) {
  const auto* bug = engine.corpus().find_bug(r.ref.bug_id);
  const auto* comment = engine.corpus().find_comment(r.ref);
  return {{"rank", r.rank},
          {"bug_id", r.ref.bug_id},
          {"index", r.ref.index},
          {"bug_title", bug ? bug->title : std::string()},
          {"excerpt", comment ? one_line(comment->body, kExcerptBytes) : std::string()},
          {"vsm_raw", r.vsm_raw},
          {"sa_raw", r.sa_raw},
          {"tr_raw", r.tr_raw},
          {"vsm_norm", r.vsm_norm},
          {"sa_norm", r.sa_norm},
          {"tr_norm", r.tr_norm},
          {"combined", r.combined}};
}

json query_response(const Engine& engine, std::span<const RankedComment> results, const NamedConfig& config,
                    double timing_ms) {
  json list = json::array();
  for (const auto& r : results) list.push_back(result_json(engine, r));
  return {{"results", std::move(list)}, {"config", config_json(config)}, {"timing_ms", timing_ms}};
}

json bug_json(const BugReport& bug) {
  auto j = json{{"id", bug.id},
                {"title", bug.title},
                {"description", bug.description},
                {"status", std::string(to_string(bug.status))}};
  j["comments"] = comments_json(bug)["comments"];
  return j;
}

json comments_json(const BugReport& bug) {
  json list = json::array();
  for (const auto& c : bug.comments) {
    json jc = {{"index", c.index}, {"body", c.body}, {"author", nullptr}, {"timestamp", nullptr}};
    if (c.author) jc["author"] = *c.author;
    if (c.timestamp) jc["timestamp"] = *c.timestamp;
    list.push_back(std::move(jc));
  }
  return {{"bug_id", bug.id}, {"comments", std::move(list)}};
}

json health_json(const Engine& engine) {
  return {{"status", "ok"},
          {"bugs", engine.corpus().bugs().size()},
          {"resolved_comments", engine.corpus().resolved_comment_count()},
          {"indexed_comments", engine.index().doc_count()},
          {"terms", engine.index().term_count()},
          {"lexicon_loaded", engine.lexicon() != nullptr}};
}

json eval_report_json(const EvalReport& report) {
  json runs = json::array();
  for (const auto& run : report.runs) {
    json ranks = json::array();
    for (const auto& q : run.per_query) ranks.push_back({{"query_id", q.query_id}, {"rank", q.rank}, {"miss", q.miss}});
    runs.push_back({{"config", run.config_name}, {"n", run.n}, {"mu", run.mu}, {"misses", run.misses},
                    {"ranks", std::move(ranks)}});
  }
  json pairs = json::array();
  for (const auto& row : report.pairs) {
    json j = {{"config_a", row.config_a}, {"config_b", row.config_b}, {"n", row.n},
              {"mu_a", row.mu_a},         {"mu_b", row.mu_b}};
    if (row.test) {
      const auto& t = *row.test;
      j["p"] = t.p_two_tailed;
      j["t"] = t.t;
      j["t_crit"] = t.t_crit;
      j["decision"] = std::string(to_string(t.decision));
      j["df"] = t.df;
      j["mean_diff"] = t.mean_diff;
      j["sd_diff"] = t.sd_diff;
    } else {
      for (const char* key : {"p", "t", "t_crit", "decision", "df", "mean_diff", "sd_diff"}) j[key] = nullptr;
      j["note"] = row.note;
    }
    pairs.push_back(std::move(j));
  }
  return {{"alpha", report.alpha}, {"runs", std::move(runs)}, {"pairs", std::move(pairs)}};
}

void write_query_machine(std::ostream& out, const json& response) {
  for (const auto& r : response["results"]) out << r.dump() << '\n';
  json trailer = {{"config", response["config"]},
                  {"count", response["results"].size()},
                  {"timing_ms", response["timing_ms"]}};
  out << trailer.dump() << '\n';
}

void write_query_text(std::ostream& out, const json& response) {
  const auto& cfg = response["config"];
  out << "config " << cfg["name"].get<std::string>() << "  k=" << cfg["k"] << "  top_m=" << cfg["top_m"] << "  ("
      << response["results"].size() << " results, " << fixed(response["timing_ms"].get<double>(), 1) << " ms)\n";
  if (response["results"].empty()) return;
  out << std::left << std::setw(5) << "rank" << std::setw(12) << "bug" << std::setw(6) << "#" << std::setw(9)
      << "combined" << std::setw(8) << "vsm" << std::setw(8) << "sa" << std::setw(8) << "tr"
      << "comment\n";
  for (const auto& r : response["results"]) {
    out << std::left << std::setw(5) << r["rank"].get<int>() << std::setw(12) << r["bug_id"].get<std::string>()
        << std::setw(6) << r["index"].get<int>() << std::setw(9) << fixed(r["combined"].get<double>(), 4)
        << std::setw(8) << fixed(r["vsm_norm"].get<double>(), 3) << std::setw(8)
        << fixed(r["sa_norm"].get<double>(), 3) << std::setw(8) << fixed(r["tr_norm"].get<double>(), 3)
        << one_line(r["excerpt"].get<std::string>(), 60) << '\n';
  }
}

std::string format_p(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", p);
  return buf;
}

void write_eval_text(std::ostream& out, const EvalReport& report) {
  out << "mean rank per configuration (lower is better)\n";
  out << std::left << std::setw(14) << "config" << std::setw(6) << "n" << std::setw(10) << "mu"
      << "misses\n";
  for (const auto& run : report.runs)
    out << std::left << std::setw(14) << run.config_name << std::setw(6) << run.n << std::setw(10) << fixed(run.mu, 3)
        << run.misses << '\n';
  if (report.runs.size() < 2) {
    out << "\npaired t-tests need two configurations\n";
    return;
  }
  out << "\npaired t-tests (alpha = " << report.alpha << ", two-tailed, df = n - 1)\n";
  out << std::left << std::setw(26) << "approach" << std::setw(5) << "n" << std::setw(16) << "mu" << std::setw(12)
      << "p" << std::setw(10) << "t" << std::setw(9) << "t_crit"
      << "decision\n";
  for (const auto& row : report.pairs) {
    out << std::left << std::setw(26) << (row.config_a + " / " + row.config_b) << std::setw(5) << row.n
        << std::setw(16) << (fixed(row.mu_a, 2) + " / " + fixed(row.mu_b, 2));
    if (row.test) {
      out << std::setw(12) << format_p(row.test->p_two_tailed) << std::setw(10) << fixed(row.test->t, 3)
          << std::setw(9) << fixed(row.test->t_crit, 4) << to_string(row.test->decision) << '\n';
    } else {
      out << "(" << row.note << ")\n";
    }
  }
}

}  // namespace retrorank::wire
