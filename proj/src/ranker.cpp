#include "retrorank/ranker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "retrorank/error.hpp"

namespace retrorank {

void PipelineConfig::validate() const {
  for (double w : {w_vsm, w_sa, w_tr})
    if (!std::isfinite(w) || w < 0.0) throw InvalidArgument("fusion weights must be finite and non-negative");
  double enabled = w_vsm + (enable_sa ? w_sa : 0.0) + (enable_tr ? w_tr : 0.0);
  if (!(enabled > 0.0)) throw InvalidArgument("fusion weights of enabled stages sum to zero");
  if (top_m < 1) throw InvalidArgument("top_m must be at least 1");
  if (k < 1) throw InvalidArgument("k must be at least 1");
  if (window < 2) throw InvalidArgument("co-occurrence window must be at least 2");
}

std::array<double, 3> PipelineConfig::effective_weights() const {
  std::array<double, 3> w = {w_vsm, enable_sa ? w_sa : 0.0, enable_tr ? w_tr : 0.0};
  double total = w[0] + w[1] + w[2];
  for (auto& x : w) x /= total;
  return w;
}

std::string PipelineConfig::stages() const {
  std::string name = "vsm";
  if (enable_sa) name += "+sa";
  if (enable_tr) name += "+tr";
  return name;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"vsm", "vsm+sa", "vsm+tr", "vsm+sa+tr"};
  return names;
}

std::optional<PipelineConfig> preset(std::string_view name) {
  PipelineConfig c;
  if (name == "vsm") {
    c.enable_sa = c.enable_tr = false;
  } else if (name == "vsm+sa") {
    c.enable_tr = false;
  } else if (name == "vsm+tr") {
    c.enable_sa = false;
  } else if (name != "vsm+sa+tr") {
    return std::nullopt;
  }
  return c;
}

std::vector<double> normalize_minmax(std::span<const double> values) {
  if (values.empty()) return {};
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  double min = *lo, range = *hi - *lo;
  std::vector<double> out(values.size(), 0.5);
  if (range > 0.0)
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = std::clamp((values[i] - min) / range, 0.0, 1.0);
  return out;
}

std::vector<RankedComment> fuse(std::span<const CandidateScores> candidates, const PipelineConfig& config) {
  config.validate();
  const auto w = config.effective_weights();
  const std::size_t n = candidates.size();

  auto column = [&](double CandidateScores::*field, bool enabled) {
    std::vector<double> raw(n, 0.0);
    if (enabled)
      for (std::size_t i = 0; i < n; ++i) raw[i] = candidates[i].*field;
    return std::pair{raw, enabled ? normalize_minmax(raw) : std::vector<double>(n, 0.0)};
  };
  auto [vsm_raw, vsm_norm] = column(&CandidateScores::vsm_raw, true);
  auto [sa_raw, sa_norm] = column(&CandidateScores::sa_raw, config.enable_sa);
  auto [tr_raw, tr_norm] = column(&CandidateScores::tr_raw, config.enable_tr);

  std::vector<RankedComment> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = out[i];
    r.ref = candidates[i].ref;
    r.vsm_raw = vsm_raw[i];
    r.sa_raw = sa_raw[i];
    r.tr_raw = tr_raw[i];
    r.vsm_norm = vsm_norm[i];
    r.sa_norm = sa_norm[i];
    r.tr_norm = tr_norm[i];
    r.combined = std::clamp(w[0] * r.vsm_norm + w[1] * r.sa_norm + w[2] * r.tr_norm, 0.0, 1.0);
  }
  std::sort(out.begin(), out.end(), [](const RankedComment& a, const RankedComment& b) {
    if (a.combined != b.combined) return a.combined > b.combined;
    return a.ref < b.ref;
  });
  if (out.size() > static_cast<std::size_t>(config.k)) out.resize(static_cast<std::size_t>(config.k));
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i + 1);
  return out;
}

std::vector<TokenizedDoc> tokenize_resolved(const Corpus& corpus, const WordSet& stopwords) {
  auto views = corpus.resolved_comments();
  std::vector<TokenizedDoc> docs(views.size());
  const auto n = static_cast<std::int64_t>(views.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& v = views[static_cast<std::size_t>(i)];
    docs[static_cast<std::size_t>(i)] = tokenize(*v.body, stopwords, v.ref);
  }
  return docs;
}

Engine::Engine(Corpus corpus, WordSet stopwords, std::optional<OpinionLexicon> lexicon,
               std::optional<InvertedIndex> index)
    : corpus_(std::move(corpus)), stopwords_(std::move(stopwords)), lexicon_(std::move(lexicon)) {
  docs_ = tokenize_resolved(corpus_, stopwords_);
  if (index) {
    if (index->doc_count() != docs_.size())
      throw InvalidArgument("index covers " + std::to_string(index->doc_count()) + " comments, corpus has " +
                            std::to_string(docs_.size()));
    for (std::size_t d = 0; d < docs_.size(); ++d)
      if (index->docs()[d] != *docs_[d].ref)
        throw InvalidArgument("index does not match corpus at " + to_string(*docs_[d].ref));
    index_ = std::move(*index);
  } else {
    index_ = build_index(docs_);
  }
}

std::vector<CandidateScores> Engine::score_candidates(std::string_view query_text,
                                                      const PipelineConfig& config) const {
  config.validate();
  if (config.enable_sa && !lexicon_) throw InvalidArgument("sentiment stage enabled but no lexicon loaded");
  const TokenizedDoc query = tokenize(query_text, stopwords_);
  auto hits = vsm_score(query, index_);
  if (hits.size() > static_cast<std::size_t>(config.top_m)) hits.resize(static_cast<std::size_t>(config.top_m));

  std::vector<CandidateScores> out(hits.size());
  for (std::size_t i = 0; i < hits.size(); ++i) out[i] = {hits[i].ref, hits[i].score, 0.0, 0.0};
  if (hits.empty()) return out;

  if (config.enable_sa)
    for (std::size_t i = 0; i < hits.size(); ++i) out[i].sa_raw = sa_score(docs_[hits[i].doc], *lexicon_).raw;

  if (config.enable_tr) {
    std::vector<TokenizedDoc> pool;
    pool.reserve(hits.size() + 1);
    for (const auto& h : hits) pool.push_back(docs_[h.doc]);
    pool.push_back(query);
    auto keywords = textrank(build_cooc_graph(pool, config.window), config.textrank);
    for (std::size_t i = 0; i < hits.size(); ++i) out[i].tr_raw = tr_score(pool[i], keywords);
  }
  return out;
}

std::vector<RankedComment> Engine::rank(std::string_view query_text, const PipelineConfig& config) const {
  return fuse(score_candidates(query_text, config), config);
}

std::vector<RankedComment> rank(std::string_view query_text, const Corpus& corpus, const OpinionLexicon* lexicon,
                                const PipelineConfig& config) {
  std::optional<OpinionLexicon> lex;
  if (lexicon) lex = *lexicon;
  return Engine(corpus, default_stopwords(), std::move(lex)).rank(query_text, config);
}

}  // namespace retrorank
