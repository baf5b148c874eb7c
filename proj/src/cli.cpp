#include "retrorank/cli.hpp"

#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>

#include "retrorank/error.hpp"
#include "retrorank/eval_stats.hpp"
#include "retrorank/ranker.hpp"
#include "retrorank/service.hpp"
#include "retrorank/text_util.hpp"
#include "retrorank/wire.hpp"

namespace retrorank {

namespace {

// Flags shared by subcommands that load a corpus.
struct CorpusFlags {
  std::string corpus;
  std::string index;
  std::string stopwords;
  std::string lexicon_pos;
  std::string lexicon_neg;
};

// Flags win over RETRORANK_* environment variables, which win over defaults.
CLI::Option* flag(CLI::App* app, const std::string& name, auto& target, const std::string& help) {
  std::string env = "RETRORANK_";
  for (char c : name) env += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return app->add_option("--" + name, target, help)->envname(env);
}

void add_corpus_flags(CLI::App* app, CorpusFlags& f, bool with_lexicon, bool with_index) {
  flag(app, "corpus", f.corpus, "Corpus file (one bug report record per line)")->required();
  flag(app, "stopwords", f.stopwords, "Stopword file (default: built-in English list)");
  if (with_index) flag(app, "index", f.index, "Prebuilt index file matching the corpus");
  if (with_lexicon) {
    flag(app, "lexicon-pos", f.lexicon_pos, "Positive (bonus) opinion word file");
    flag(app, "lexicon-neg", f.lexicon_neg, "Negative (penalty) opinion word file");
  }
}

WordSet stopwords_from(const CorpusFlags& f) {
  return f.stopwords.empty() ? default_stopwords() : load_stopwords(f.stopwords);
}

OpinionLexicon lexicon_from(const CorpusFlags& f) {
  if (f.lexicon_pos.empty() && f.lexicon_neg.empty()) return default_lexicon();
  if (f.lexicon_pos.empty() || f.lexicon_neg.empty())
    throw InvalidArgument("--lexicon-pos and --lexicon-neg must be given together");
  return load_lexicon(f.lexicon_pos, f.lexicon_neg);
}

Engine engine_from(const CorpusFlags& f) {
  std::optional<InvertedIndex> index;
  if (!f.index.empty()) index = load_index(f.index);
  return Engine(load_corpus(f.corpus), stopwords_from(f), lexicon_from(f), std::move(index));
}

void check_format(const std::string& format) {
  if (format != "text" && format != "machine") throw InvalidArgument("--format must be 'text' or 'machine'");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recommends bug-fixing comments from past resolved bug reports", "retrorank"};
  app.require_subcommand(1);

  // index
  CorpusFlags index_flags;
  std::string index_out;
  auto* index_cmd = app.add_subcommand("index", "Build and save the tf-idf index over resolved comments");
  add_corpus_flags(index_cmd, index_flags, false, false);
  flag(index_cmd, "index", index_out, "Output index file")->required();

  // query
  CorpusFlags query_flags;
  std::string q, config_name = "vsm+sa+tr", weights, format = "text";
  std::optional<int> k, top_m;
  auto* query_cmd = app.add_subcommand("query", "Rank comments for a query");
  add_corpus_flags(query_cmd, query_flags, true, true);
  flag(query_cmd, "q", q, "Query text")->required();
  flag(query_cmd, "config", config_name, "Preset: vsm | vsm+sa | vsm+tr | vsm+sa+tr");
  flag(query_cmd, "weights", weights, "Fusion weights w_vsm,w_sa,w_tr");
  flag(query_cmd, "k", k, "Results to return (default 10)");
  flag(query_cmd, "top-m", top_m, "VSM candidates to re-rank (default 50)");
  flag(query_cmd, "format", format, "Output format: text | machine");

  // eval
  CorpusFlags eval_flags;
  std::string goldset_path, eval_format = "text";
  std::vector<std::string> eval_configs;
  std::optional<int> eval_top_m;
  double alpha = 0.05;
  auto* eval_cmd = app.add_subcommand("eval", "Mean goldset rank per configuration and paired t-tests");
  add_corpus_flags(eval_cmd, eval_flags, true, true);
  flag(eval_cmd, "goldset", goldset_path, "Goldset file")->required();
  flag(eval_cmd, "config", eval_configs, "Configurations to compare (repeatable; default all presets)");
  flag(eval_cmd, "top-m", eval_top_m, "Candidate pool size; misses score top-m + 1 (default 50)");
  flag(eval_cmd, "alpha", alpha, "Significance level (default 0.05)");
  flag(eval_cmd, "format", eval_format, "Output format: text | machine");

  // serve
  CorpusFlags serve_flags;
  std::string host = "127.0.0.1", static_dir;
  int port = 8080;
  std::size_t eval_cap = 1000;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API (and optionally the web UI)");
  add_corpus_flags(serve_cmd, serve_flags, true, true);
  flag(serve_cmd, "host", host, "Bind address");
  flag(serve_cmd, "port", port, "Port");
  flag(serve_cmd, "static", static_dir, "Directory of web UI assets");
  flag(serve_cmd, "eval-cap", eval_cap, "Maximum goldset size accepted by /api/eval");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*index_cmd) {
      auto corpus = load_corpus(index_flags.corpus);
      auto index = build_index(tokenize_resolved(corpus, stopwords_from(index_flags)));
      save_index(index_out, index);
      out << index.doc_count() << " comments indexed, " << index.term_count() << " terms, written to " << index_out
          << '\n';
      return 0;
    }

    if (*query_cmd) {
      check_format(format);
      if (trim(q).empty()) {
        err << "error: empty query\nusage: retrorank query --corpus FILE --q \"words describing the bug\"\n";
        return 2;
      }
      auto config = wire::resolve_config(config_name, weights.empty() ? std::nullopt : std::optional<std::string_view>(weights),
                                         k, top_m);
      auto engine = engine_from(query_flags);
      auto started = std::chrono::steady_clock::now();
      std::vector<RankedComment> results;
      try {
        results = engine.rank(q, config.config);
      } catch (const EmptyQueryError& e) {
        err << "error: " << e.what() << "\nusage: retrorank query --corpus FILE --q \"words describing the bug\"\n";
        return 2;
      }
      std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - started;
      auto response = wire::query_response(engine, results, config, elapsed.count());
      if (format == "machine") wire::write_query_machine(out, response);
      else wire::write_query_text(out, response);
      return 0;
    }

    if (*eval_cmd) {
      check_format(eval_format);
      if (eval_configs.empty()) eval_configs = preset_names();
      std::vector<NamedConfig> configs;
      for (const auto& name : eval_configs)
        configs.push_back(wire::resolve_config(name, std::nullopt, std::nullopt, eval_top_m));
      auto engine = engine_from(eval_flags);
      auto goldset = load_goldset(goldset_path);
      auto report = run_eval(engine, goldset, configs, alpha);
      if (eval_format == "machine") out << wire::eval_report_json(report).dump() << '\n';
      else wire::write_eval_text(out, report);
      return 0;
    }

    if (*serve_cmd) {
      auto engine = engine_from(serve_flags);
      httplib::Server server;
      ServiceOptions options;
      options.max_eval_queries = eval_cap;
      if (!static_dir.empty()) {
        if (!std::filesystem::is_directory(static_dir)) throw Error("static directory '" + static_dir + "' not found");
        options.static_dir = static_dir;
      }
      install_routes(server, engine, options);
      server.set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof yes);
      });
      if (!server.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
      err << "serving " << engine.index().doc_count() << " comments on http://" << host << ':' << port << '\n';
      return server.listen_after_bind() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace retrorank
