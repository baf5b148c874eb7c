#include "retrorank/sentiment.hpp"

#include <algorithm>
#include <vector>

#include "retrorank/embedded_data.hpp"
#include "retrorank/error.hpp"
#include "retrorank/text_util.hpp"

namespace retrorank {

namespace {

WordSet to_set(const std::vector<std::string>& words) {
  WordSet set;
  for (const auto& w : words) set.insert(lowercase(w));
  return set;
}

}  // namespace

OpinionLexicon::OpinionLexicon(WordSet positive, WordSet negative)
    : positive_(std::move(positive)), negative_(std::move(negative)) {
  // report the smallest conflicting word so the message is stable
  std::vector<std::string> conflicts;
  for (const auto& w : positive_)
    if (negative_.contains(w)) conflicts.push_back(w);
  if (!conflicts.empty()) {
    std::sort(conflicts.begin(), conflicts.end());
    throw InvalidArgument("lexicon word '" + conflicts.front() + "' appears in both positive and negative lists");
  }
}

OpinionLexicon load_lexicon(const std::filesystem::path& pos_path, const std::filesystem::path& neg_path) {
  return OpinionLexicon(to_set(read_word_file(pos_path, ";#")), to_set(read_word_file(neg_path, ";#")));
}

OpinionLexicon parse_lexicon(std::string_view pos_content, std::string_view neg_content) {
  return OpinionLexicon(to_set(parse_word_lines(pos_content, ";#")), to_set(parse_word_lines(neg_content, ";#")));
}

const OpinionLexicon& default_lexicon() {
  static const OpinionLexicon lexicon = parse_lexicon(embedded::positive_lexicon, embedded::negative_lexicon);
  return lexicon;
}

SentimentScore sa_score(const TokenizedDoc& doc, const OpinionLexicon& lexicon) {
  SentimentScore s;
  for (const auto& token : doc.surface_tokens) {
    if (lexicon.positive().contains(token)) ++s.positive_hits;
    else if (lexicon.negative().contains(token)) ++s.negative_hits;
  }
  auto denom = std::max<std::size_t>(1, doc.surface_tokens.size());
  s.raw = static_cast<double>(s.positive_hits - s.negative_hits) / static_cast<double>(denom);
  return s;
}

}  // namespace retrorank
