#include "retrorank/vsm_index.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "retrorank/error.hpp"

namespace retrorank {

double tf_weight(std::uint32_t frequency) { return frequency == 0 ? 0.0 : 1.0 + std::log(double(frequency)); }

double idf_weight(std::size_t doc_count, std::size_t doc_freq) {
  return std::log((double(doc_count) + 1.0) / (double(doc_freq) + 1.0)) + 1.0;
}

std::optional<TermId> InvertedIndex::term_id(std::string_view term) const {
  auto it = term_ids_.find(std::string(term));
  if (it == term_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<DocOrdinal> InvertedIndex::ordinal(const DocRef& ref) const {
  auto it = ordinals_.find(ref);
  if (it == ordinals_.end()) return std::nullopt;
  return it->second;
}

std::size_t InvertedIndex::doc_freq(std::string_view term) const {
  auto id = term_id(term);
  return id ? postings_[*id].size() : 0;
}

std::span<const Posting> InvertedIndex::postings(std::string_view term) const {
  auto id = term_id(term);
  if (!id) return {};
  return postings_[*id];
}

double InvertedIndex::doc_norm(const DocRef& ref) const {
  auto doc = ordinal(ref);
  if (!doc) throw NotFoundError(to_string(ref));
  return norms_[*doc];
}

std::span<const WeightedTerm> InvertedIndex::doc_vector(DocOrdinal doc) const {
  return std::span<const WeightedTerm>(vectors_).subspan(vector_offsets_[doc],
                                                         vector_offsets_[doc + 1] - vector_offsets_[doc]);
}

TfIdfVector InvertedIndex::vectorize(const TokenizedDoc& doc) const {
  std::map<TermId, std::uint32_t> counts;
  for (const auto& term : doc.terms)
    if (auto id = term_id(term)) ++counts[*id];
  TfIdfVector out;
  out.reserve(counts.size());
  for (auto [id, f] : counts) out.push_back({id, tf_weight(f) * idf(id)});
  return out;
}

// Rebuilds the lookup table and forward vectors from postings; norms are computed
// from the forward vectors in ascending term order.
void InvertedIndex::finalize() {
  term_ids_.clear();
  ordinals_.clear();
  for (DocOrdinal d = 0; d < refs_.size(); ++d)
    if (!ordinals_.emplace(refs_[d], d).second) throw InvalidArgument("duplicate document ref: " + to_string(refs_[d]));
  for (TermId id = 0; id < vocabulary_.size(); ++id) term_ids_.emplace(vocabulary_[id], id);

  std::vector<std::size_t> lengths(refs_.size(), 0);
  for (const auto& plist : postings_)
    for (const auto& p : plist) ++lengths[p.doc];
  vector_offsets_.assign(refs_.size() + 1, 0);
  for (std::size_t d = 0; d < refs_.size(); ++d) vector_offsets_[d + 1] = vector_offsets_[d] + lengths[d];
  vectors_.assign(vector_offsets_.back(), WeightedTerm{0, 0.0});
  std::vector<std::size_t> fill(vector_offsets_.begin(), vector_offsets_.end() - 1);
  for (TermId id = 0; id < postings_.size(); ++id) {
    double idf_value = idf(id);
    for (const auto& p : postings_[id]) vectors_[fill[p.doc]++] = {id, tf_weight(p.tf) * idf_value};
  }

  norms_.assign(refs_.size(), 0.0);
  for (std::size_t d = 0; d < refs_.size(); ++d) {
    double sum = 0.0;
    for (const auto& wt : doc_vector(static_cast<DocOrdinal>(d))) sum += wt.weight * wt.weight;
    norms_[d] = std::sqrt(sum);
  }
}

InvertedIndex build_index(std::span<const TokenizedDoc> docs) {
  InvertedIndex index;
  std::set<DocRef> seen;
  std::map<std::string, std::map<DocOrdinal, std::uint32_t>> counts;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const auto& doc = docs[d];
    if (!doc.ref) throw InvalidArgument("cannot index a document without a ref");
    if (!seen.insert(*doc.ref).second) throw InvalidArgument("duplicate document ref: " + to_string(*doc.ref));
    index.refs_.push_back(*doc.ref);
    for (const auto& term : doc.terms) ++counts[term][static_cast<DocOrdinal>(d)];
  }
  index.vocabulary_.reserve(counts.size());
  index.postings_.reserve(counts.size());
  for (auto& [term, per_doc] : counts) {
    index.vocabulary_.push_back(term);
    auto& plist = index.postings_.emplace_back();
    plist.reserve(per_doc.size());
    for (auto [doc, tf] : per_doc) plist.push_back({doc, tf});
  }
  index.finalize();
  return index;
}

void sort_by_score(std::vector<ScoredDoc>& scored) {
  std::sort(scored.begin(), scored.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.ref < b.ref;
  });
}

std::vector<ScoredDoc> vsm_score(const TokenizedDoc& query, const InvertedIndex& index) {
  if (query.terms.empty()) throw EmptyQueryError();
  const TfIdfVector qvec = index.vectorize(query);
  double qsum = 0.0;
  for (const auto& wt : qvec) qsum += wt.weight * wt.weight;
  const double qnorm = std::sqrt(qsum);
  if (qvec.empty()) return {};

  // Only documents on some query term's posting list can score above zero.
  std::vector<DocOrdinal> candidates;
  for (const auto& wt : qvec)
    for (const auto& p : index.postings(wt.term)) candidates.push_back(p.doc);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const auto n = static_cast<std::int64_t>(candidates.size());
  std::vector<ScoredDoc> out(candidates.size());
#pragma omp parallel for schedule(static) if (n > 2048)
  for (std::int64_t c = 0; c < n; ++c) {
    const DocOrdinal doc = candidates[static_cast<std::size_t>(c)];
    auto dvec = index.doc_vector(doc);
    auto qi = qvec.begin();
    auto di = dvec.begin();
    double dot = 0.0;
    while (qi != qvec.end() && di != dvec.end()) {
      if (qi->term < di->term) {
        ++qi;
      } else if (di->term < qi->term) {
        ++di;
      } else {
        dot += qi->weight * di->weight;
        ++qi;
        ++di;
      }
    }
    out[static_cast<std::size_t>(c)] = {index.docs()[doc], doc, std::min(1.0, dot / (qnorm * index.doc_norm(doc)))};
  }
  sort_by_score(out);
  return out;
}

namespace {

constexpr std::string_view kMagic = "RETRORANK-INDEX";

std::string hex_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

struct IndexReader {
  std::istream& in;
  std::size_t line_no = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError("index", line_no, what); }

  std::vector<std::string> record(std::string_view tag, std::size_t min_fields) {
    std::string line;
    if (!std::getline(in, line)) fail("unexpected end of file, expected '" + std::string(tag) + "'");
    ++line_no;
    auto fields = split_tabs(line);
    if (fields[0] != tag) fail("expected '" + std::string(tag) + "' record");
    if (fields.size() < min_fields) fail("truncated '" + std::string(tag) + "' record");
    return fields;
  }

  std::string json_string(const std::string& field) {
    try {
      auto v = nlohmann::json::parse(field);
      if (!v.is_string()) fail("expected a quoted string");
      return v.get<std::string>();
    } catch (const nlohmann::json::exception&) {
      fail("malformed quoted string");
    }
  }

  std::uint64_t number(const std::string& field) {
    try {
      std::size_t used = 0;
      auto v = std::stoull(field, &used);
      if (used != field.size()) fail("malformed integer '" + field + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("malformed integer '" + field + "'");
    }
  }
};

}  // namespace

void write_index(std::ostream& out, const InvertedIndex& index) {
  out << kMagic << '\n' << "version\t" << kIndexFormatVersion << '\n';
  out << "docs\t" << index.doc_count() << '\n';
  for (std::size_t d = 0; d < index.doc_count(); ++d) {
    const auto& ref = index.docs()[d];
    out << "doc\t" << nlohmann::json(ref.bug_id).dump() << '\t' << ref.index << '\t'
        << hex_double(index.doc_norm(static_cast<DocOrdinal>(d))) << '\n';
  }
  out << "terms\t" << index.term_count() << '\n';
  for (TermId id = 0; id < index.term_count(); ++id) {
    out << "term\t" << nlohmann::json(index.vocabulary()[id]).dump() << '\t' << index.doc_freq(id);
    for (const auto& p : index.postings(id)) out << '\t' << p.doc << ':' << p.tf;
    out << '\n';
  }
  out << "end\n";
}

InvertedIndex read_index(std::istream& in) {
  IndexReader r{in};
  std::string magic;
  if (!std::getline(in, magic) || magic != kMagic) throw ParseError("index", 1, "missing RETRORANK-INDEX header");
  r.line_no = 1;
  auto version = r.record("version", 2);
  if (r.number(version[1]) != kIndexFormatVersion) r.fail("unsupported index version " + version[1]);

  InvertedIndex index;
  auto n = r.number(r.record("docs", 2)[1]);
  std::vector<double> stored_norms;
  for (std::uint64_t d = 0; d < n; ++d) {
    auto f = r.record("doc", 4);
    DocRef ref{r.json_string(f[1]), static_cast<int>(r.number(f[2]))};
    index.refs_.push_back(std::move(ref));
    stored_norms.push_back(std::strtod(f[3].c_str(), nullptr));
  }
  auto v = r.number(r.record("terms", 2)[1]);
  for (std::uint64_t t = 0; t < v; ++t) {
    auto f = r.record("term", 3);
    auto term = r.json_string(f[1]);
    if (!index.vocabulary_.empty() && !(index.vocabulary_.back() < term)) r.fail("terms out of order");
    auto df = r.number(f[2]);
    if (df == 0 || df > n || f.size() != 3 + df) r.fail("document frequency does not match postings");
    std::vector<Posting> plist;
    for (std::size_t k = 3; k < f.size(); ++k) {
      auto colon = f[k].find(':');
      if (colon == std::string::npos) r.fail("malformed posting '" + f[k] + "'");
      auto doc = r.number(f[k].substr(0, colon));
      auto tf = r.number(f[k].substr(colon + 1));
      if (doc >= n || tf == 0 || (!plist.empty() && doc <= plist.back().doc)) r.fail("invalid posting '" + f[k] + "'");
      plist.push_back({static_cast<DocOrdinal>(doc), static_cast<std::uint32_t>(tf)});
    }
    index.vocabulary_.push_back(std::move(term));
    index.postings_.push_back(std::move(plist));
  }
  r.record("end", 1);
  index.finalize();
  if (index.norms_ != stored_norms) throw ParseError("index", 0, "stored norms disagree with postings");
  return index;
}

void save_index(const std::filesystem::path& path, const InvertedIndex& index) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write index file '" + path.string() + "'");
  write_index(out, index);
}

InvertedIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read index file '" + path.string() + "'");
  return read_index(in);
}

}  // namespace retrorank
