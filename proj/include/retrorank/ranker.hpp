#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "retrorank/corpus.hpp"
#include "retrorank/sentiment.hpp"
#include "retrorank/text_prep.hpp"
#include "retrorank/textrank.hpp"
#include "retrorank/vsm_index.hpp"

namespace retrorank {

struct PipelineConfig {
  bool enable_sa = true;
  bool enable_tr = true;
  double w_vsm = 1.0;
  double w_sa = 1.0;
  double w_tr = 1.0;
  int top_m = 50;  ///< VSM candidates forwarded to re-ranking
  int k = 10;      ///< results returned
  std::size_t window = 2;
  TextRankOptions textrank;

  /// Throws InvalidArgument on negative/non-finite weights, a zero enabled weight sum,
  /// top_m < 1, k < 1 or window < 2.
  void validate() const;
  /// Fusion weights for (vsm, sa, tr): disabled components 0, the rest summing to 1.
  std::array<double, 3> effective_weights() const;
  /// Preset-style name of the enabled stages, e.g. "vsm+tr".
  std::string stages() const;
};

/// "vsm", "vsm+sa", "vsm+tr", "vsm+sa+tr" with equal weights; nullopt for other names.
std::optional<PipelineConfig> preset(std::string_view name);
const std::vector<std::string>& preset_names();

struct CandidateScores {
  DocRef ref;
  double vsm_raw = 0.0;
  double sa_raw = 0.0;
  double tr_raw = 0.0;
};

struct RankedComment {
  DocRef ref;
  double vsm_raw = 0.0, sa_raw = 0.0, tr_raw = 0.0;
  double vsm_norm = 0.0, sa_norm = 0.0, tr_norm = 0.0;
  double combined = 0.0;
  int rank = 0;

  bool operator==(const RankedComment&) const = default;
};

/// (v - min) / (max - min); 0.5 everywhere when the range is degenerate.
std::vector<double> normalize_minmax(std::span<const double> values);

/// Normalizes each enabled column over the candidates, fuses with the effective
/// weights, sorts by combined score (ties by ascending ref) and keeps the first k.
/// Columns of disabled stages are reported as zero.
std::vector<RankedComment> fuse(std::span<const CandidateScores> candidates, const PipelineConfig& config);

/// Preprocessed, indexed corpus ready to answer queries. Immutable after construction.
class Engine {
 public:
  /// `index`, when given, must have been built over this corpus's resolved comments.
  Engine(Corpus corpus, WordSet stopwords, std::optional<OpinionLexicon> lexicon = std::nullopt,
         std::optional<InvertedIndex> index = std::nullopt);

  const Corpus& corpus() const noexcept { return corpus_; }
  const InvertedIndex& index() const noexcept { return index_; }
  const WordSet& stopwords() const noexcept { return stopwords_; }
  const OpinionLexicon* lexicon() const noexcept { return lexicon_ ? &*lexicon_ : nullptr; }
  const TokenizedDoc& comment_doc(DocOrdinal doc) const { return docs_[doc]; }

  /// Candidate scoring for a query. Throws EmptyQueryError when the query has no
  /// terms and InvalidArgument when SA is enabled without a lexicon.
  std::vector<CandidateScores> score_candidates(std::string_view query_text, const PipelineConfig& config) const;

  std::vector<RankedComment> rank(std::string_view query_text, const PipelineConfig& config) const;

 private:
  Corpus corpus_;
  WordSet stopwords_;
  std::optional<OpinionLexicon> lexicon_;
  std::vector<TokenizedDoc> docs_;  // aligned with index ordinals
  InvertedIndex index_;
};

/// Tokenizes the resolved comments of `corpus` in (bug id, index) order.
std::vector<TokenizedDoc> tokenize_resolved(const Corpus& corpus, const WordSet& stopwords);

/// One-shot pipeline; builds a throwaway Engine with the default stopword list.
std::vector<RankedComment> rank(std::string_view query_text, const Corpus& corpus, const OpinionLexicon* lexicon,
                                const PipelineConfig& config);

}  // namespace retrorank
