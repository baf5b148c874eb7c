#pragma once

#include <filesystem>
#include <string_view>

#include "retrorank/text_prep.hpp"

namespace retrorank {

/// Bonus (positive) and penalty (negative) word sets; disjoint, lowercase.
class OpinionLexicon {
 public:
  OpinionLexicon() = default;
  /// Throws InvalidArgument naming the first word present in both sets.
  OpinionLexicon(WordSet positive, WordSet negative);

  const WordSet& positive() const noexcept { return positive_; }
  const WordSet& negative() const noexcept { return negative_; }

  OpinionLexicon swapped() const { return OpinionLexicon(negative_, positive_); }

 private:
  WordSet positive_;
  WordSet negative_;
};

/// Lexicon files: one word per line, `;` or `#` comment lines, whitespace trimmed.
OpinionLexicon load_lexicon(const std::filesystem::path& pos_path, const std::filesystem::path& neg_path);
OpinionLexicon parse_lexicon(std::string_view pos_content, std::string_view neg_content);
const OpinionLexicon& default_lexicon();

struct SentimentScore {
  double raw = 0.0;  ///< (positive_hits - negative_hits) / max(1, token count), in [-1, 1]
  int positive_hits = 0;
  int negative_hits = 0;

  bool operator==(const SentimentScore&) const = default;
};

/// Counts exact matches of surface tokens. No negation handling.
SentimentScore sa_score(const TokenizedDoc& doc, const OpinionLexicon& lexicon);

}  // namespace retrorank
