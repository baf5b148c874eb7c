#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "retrorank/text_prep.hpp"

namespace retrorank {

using TermId = std::uint32_t;
using DocOrdinal = std::uint32_t;

struct Posting {
  DocOrdinal doc;
  std::uint32_t tf;
  bool operator==(const Posting&) const = default;
};

struct WeightedTerm {
  TermId term;
  double weight;
  bool operator==(const WeightedTerm&) const = default;
};

/// Sparse tf-idf vector, ascending term id.
using TfIdfVector = std::vector<WeightedTerm>;

double tf_weight(std::uint32_t frequency);
double idf_weight(std::size_t doc_count, std::size_t doc_freq);

/// tf-idf inverted index over comments. Vocabulary ids follow lexicographic term
/// order, so every per-document sum runs in the same term order.
class InvertedIndex {
 public:
  std::size_t doc_count() const noexcept { return refs_.size(); }
  std::size_t term_count() const noexcept { return vocabulary_.size(); }

  const std::vector<DocRef>& docs() const noexcept { return refs_; }
  const std::vector<std::string>& vocabulary() const noexcept { return vocabulary_; }

  std::optional<TermId> term_id(std::string_view term) const;
  std::optional<DocOrdinal> ordinal(const DocRef& ref) const;

  /// 0 for terms not in the vocabulary.
  std::size_t doc_freq(std::string_view term) const;
  std::size_t doc_freq(TermId id) const { return postings_[id].size(); }
  std::span<const Posting> postings(std::string_view term) const;
  std::span<const Posting> postings(TermId id) const { return postings_[id]; }
  double idf(TermId id) const { return idf_weight(doc_count(), doc_freq(id)); }

  double doc_norm(DocOrdinal doc) const { return norms_[doc]; }
  /// Throws NotFoundError for refs not in the index.
  double doc_norm(const DocRef& ref) const;
  std::span<const WeightedTerm> doc_vector(DocOrdinal doc) const;

  /// tf-idf vector of `doc` under this index's idf; out-of-vocabulary terms dropped.
  TfIdfVector vectorize(const TokenizedDoc& doc) const;

  bool operator==(const InvertedIndex&) const = default;

 private:
  friend InvertedIndex build_index(std::span<const TokenizedDoc> docs);
  friend InvertedIndex read_index(std::istream& in);

  void finalize();

  std::vector<DocRef> refs_;
  std::vector<std::string> vocabulary_;
  std::vector<std::vector<Posting>> postings_;  // by term id, ascending doc ordinal
  std::vector<double> norms_;
  // derived
  std::unordered_map<std::string, TermId> term_ids_;
  std::map<DocRef, DocOrdinal> ordinals_;
  std::vector<std::size_t> vector_offsets_;
  std::vector<WeightedTerm> vectors_;
};

/// Every doc must carry a ref; duplicate refs throw InvalidArgument.
InvertedIndex build_index(std::span<const TokenizedDoc> docs);

struct ScoredDoc {
  DocRef ref;
  DocOrdinal doc;
  double score;
  bool operator==(const ScoredDoc&) const = default;
};

/// Cosine similarity of the query against every indexed comment, descending, ties by
/// ascending ref. Comments sharing no term with the query are omitted. Throws
/// EmptyQueryError when the query has no terms. Documents on the query terms' posting
/// lists are scored in parallel.
std::vector<ScoredDoc> vsm_score(const TokenizedDoc& query, const InvertedIndex& index);

/// Sort order shared by every ranked list: score descending, then ascending ref.
void sort_by_score(std::vector<ScoredDoc>& scored);

// Persistence: "RETRORANK-INDEX" magic line, version integer, then tab-separated
// records with JSON-quoted strings and hex-float norms.
inline constexpr int kIndexFormatVersion = 1;
void write_index(std::ostream& out, const InvertedIndex& index);
InvertedIndex read_index(std::istream& in);
void save_index(const std::filesystem::path& path, const InvertedIndex& index);
InvertedIndex load_index(const std::filesystem::path& path);

}  // namespace retrorank
