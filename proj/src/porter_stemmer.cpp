#include "retrorank/porter_stemmer.hpp"

#include <algorithm>
#include <array>
#include <span>
#include <utility>

namespace retrorank {

namespace {

// Word under reduction. All predicates look at the prefix w[0, len) where the
// candidate stem is the word with `suffix_len` characters removed.
class Stem {
 public:
  explicit Stem(std::string_view word) : w_(word) {}

  std::string release() && { return std::move(w_); }

  bool ends_with(std::string_view suffix) const { return std::string_view(w_).ends_with(suffix); }

  /// Number of VC sequences in w[0, n).
  int measure(std::size_t n) const {
    int m = 0;
    std::size_t i = 0;
    while (i < n && consonant(i)) ++i;
    while (i < n) {
      while (i < n && !consonant(i)) ++i;
      if (i >= n) break;
      while (i < n && consonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool has_vowel(std::size_t n) const {
    for (std::size_t i = 0; i < n; ++i)
      if (!consonant(i)) return true;
    return false;
  }

  bool double_consonant(std::size_t n) const {
    return n >= 2 && w_[n - 1] == w_[n - 2] && consonant(n - 1);
  }

  /// w[0, n) ends consonant-vowel-consonant and the final consonant is not w, x or y.
  bool cvc(std::size_t n) const {
    if (n < 3 || !consonant(n - 1) || consonant(n - 2) || !consonant(n - 3)) return false;
    char c = w_[n - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  void replace_suffix(std::size_t suffix_len, std::string_view with) {
    w_.resize(w_.size() - suffix_len);
    w_.append(with);
  }

  std::size_t size() const { return w_.size(); }
  char back() const { return w_.back(); }
  void pop_back() { w_.pop_back(); }
  void push_back(char c) { w_.push_back(c); }

 private:
  bool consonant(std::size_t i) const {
    switch (w_[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 || !consonant(i - 1);
      default:
        return true;
    }
  }

  std::string w_;
};

using Rule = std::pair<std::string_view, std::string_view>;

// Only the longest matching suffix is considered; when its condition fails the step
// leaves the word alone. Rule tables list longer suffixes before their tails.
void apply_measure_rules(Stem& s, std::span<const Rule> rules, int min_measure) {
  for (const auto& [suffix, replacement] : rules) {
    if (!s.ends_with(suffix)) continue;
    if (s.measure(s.size() - suffix.size()) > min_measure) s.replace_suffix(suffix.size(), replacement);
    return;
  }
}

void step1a(Stem& s) {
  if (s.ends_with("sses")) s.replace_suffix(4, "ss");
  else if (s.ends_with("ies")) s.replace_suffix(3, "i");
  else if (s.ends_with("ss")) return;
  else if (s.ends_with("s")) s.replace_suffix(1, "");
}

void step1b(Stem& s) {
  if (s.ends_with("eed")) {
    if (s.measure(s.size() - 3) > 0) s.replace_suffix(1, "");
    return;
  }
  std::size_t cut = 0;
  if (s.ends_with("ed") && s.has_vowel(s.size() - 2)) cut = 2;
  else if (s.ends_with("ing") && s.has_vowel(s.size() - 3)) cut = 3;
  if (cut == 0) return;

  s.replace_suffix(cut, "");
  if (s.ends_with("at") || s.ends_with("bl") || s.ends_with("iz")) {
    s.push_back('e');
  } else if (s.double_consonant(s.size())) {
    char c = s.back();
    if (c != 'l' && c != 's' && c != 'z') s.pop_back();
  } else if (s.measure(s.size()) == 1 && s.cvc(s.size())) {
    s.push_back('e');
  }
}

void step1c(Stem& s) {
  if (s.ends_with("y") && s.has_vowel(s.size() - 1)) s.replace_suffix(1, "i");
}

constexpr std::array<Rule, 20> kStep2 = {{
    {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},  {"anci", "ance"},    {"izer", "ize"},
    {"abli", "able"},   {"alli", "al"},     {"entli", "ent"},  {"eli", "e"},        {"ousli", "ous"},
    {"ization", "ize"}, {"ation", "ate"},   {"ator", "ate"},   {"alism", "al"},     {"iveness", "ive"},
    {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},   {"iviti", "ive"},    {"biliti", "ble"},
}};

constexpr std::array<Rule, 7> kStep3 = {{
    {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"}, {"ical", "ic"}, {"ful", ""}, {"ness", ""},
}};

void step4(Stem& s) {
  static constexpr std::array<std::string_view, 19> suffixes = {
      "al",   "ance", "ence", "er",  "ic", "able", "ible", "ant", "ement", "ment",
      "ent",  "ion",  "ou",   "ism", "ate", "iti", "ous",  "ive", "ize"};
  for (auto suffix : suffixes) {
    if (!s.ends_with(suffix)) continue;
    std::size_t n = s.size() - suffix.size();
    bool ok = s.measure(n) > 1;
    if (suffix == "ion") ok = ok && n > 0 && (s.ends_with("sion") || s.ends_with("tion"));
    if (ok) s.replace_suffix(suffix.size(), "");
    return;
  }
}

void step5(Stem& s) {
  if (s.ends_with("e")) {
    std::size_t n = s.size() - 1;
    int m = s.measure(n);
    if (m > 1 || (m == 1 && !s.cvc(n))) s.pop_back();
  }
  if (s.ends_with("ll") && s.measure(s.size()) > 1) s.pop_back();
}

}  // namespace

std::string porter_stem(std::string_view word) {
  if (word.empty() || !std::all_of(word.begin(), word.end(), [](char c) { return c >= 'a' && c <= 'z'; }))
    return std::string(word);
  Stem s(word);
  step1a(s);
  step1b(s);
  step1c(s);
  apply_measure_rules(s, kStep2, 0);
  apply_measure_rules(s, kStep3, 0);
  step4(s);
  step5(s);
  return std::move(s).release();
}

}  // namespace retrorank
