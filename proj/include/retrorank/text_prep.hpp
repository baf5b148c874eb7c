#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "retrorank/corpus.hpp"

namespace retrorank {

using WordSet = std::unordered_set<std::string>;

struct TokenizedDoc {
  std::optional<DocRef> ref;  ///< nullopt marks the query
  std::vector<std::string> surface_tokens;
  std::vector<std::string> terms;

  bool operator==(const TokenizedDoc&) const = default;
};

/// Lowercase runs of letters/digits, split on everything else. Non-ASCII code points
/// are classified with the C.UTF-8 locale; invalid UTF-8 bytes act as separators.
std::vector<std::string> split_words(std::string_view text);

/// Lowercases letters code point by code point; other bytes are kept.
std::string lowercase(std::string_view text);

/// Surface tokens plus stopword-filtered, Porter-stemmed terms. Stopword membership
/// is tested on the surface form, before stemming.
TokenizedDoc tokenize(std::string_view text, const WordSet& stopwords, std::optional<DocRef> ref = std::nullopt);

/// One word per line, `#` comments; entries lowercased.
WordSet load_stopwords(const std::filesystem::path& path);

/// The English list shipped as data/stopwords.txt, compiled in.
const WordSet& default_stopwords();

}  // namespace retrorank
