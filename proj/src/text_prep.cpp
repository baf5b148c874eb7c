#include "retrorank/text_prep.hpp"

#include <clocale>
#include <cwctype>
#include <locale.h>

#include "retrorank/embedded_data.hpp"
#include "retrorank/porter_stemmer.hpp"
#include "retrorank/text_util.hpp"

namespace retrorank {

namespace {

locale_t utf8_ctype() {
  static locale_t loc = [] {
    locale_t l = newlocale(LC_CTYPE_MASK, "C.UTF-8", static_cast<locale_t>(0));
    if (!l) l = newlocale(LC_CTYPE_MASK, "en_US.UTF-8", static_cast<locale_t>(0));
    return l;
  }();
  return loc;
}

// Decodes one UTF-8 sequence at s[i]; returns the code point and advances i.
// Malformed bytes yield U+FFFD and consume one byte.
char32_t next_code_point(std::string_view s, std::size_t& i) {
  auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  unsigned char b0 = byte(i);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = (b0 & 0xE0) == 0xC0 ? 2 : (b0 & 0xF0) == 0xE0 ? 3 : (b0 & 0xF8) == 0xF0 ? 4 : 0;
  if (len == 0 || i + len > s.size()) {
    ++i;
    return 0xFFFD;
  }
  char32_t cp = b0 & (0x7F >> len);
  for (int k = 1; k < len; ++k) {
    if ((byte(i + k) & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (byte(i + k) & 0x3F);
  }
  i += len;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_word_char(char32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
  if (cp == 0xFFFD) return false;
  locale_t loc = utf8_ctype();
  return loc && iswalnum_l(static_cast<wint_t>(cp), loc);
}

char32_t to_lower(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + ('a' - 'A') : cp;
  locale_t loc = utf8_ctype();
  if (!loc) return cp;
  char32_t lower = static_cast<char32_t>(towlower_l(static_cast<wint_t>(cp), loc));
  // lowering must not leave the word class (e.g. U+0130 maps to ASCII 'i')
  return is_word_char(lower) ? lower : cp;
}

WordSet lowercase_set(const std::vector<std::string>& words) {
  WordSet set;
  for (const auto& w : words) set.insert(lowercase(w));
  return set;
}

}  // namespace

std::string lowercase(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t start = i;
    char32_t cp = next_code_point(text, i);
    if (cp == 0xFFFD) out.append(text.substr(start, i - start));
    else append_utf8(out, to_lower(cp));
  }
  return out;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  std::size_t i = 0;
  while (i < text.size()) {
    char32_t cp = next_code_point(text, i);
    if (is_word_char(cp)) {
      append_utf8(current, to_lower(cp));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

TokenizedDoc tokenize(std::string_view text, const WordSet& stopwords, std::optional<DocRef> ref) {
  TokenizedDoc doc;
  doc.ref = std::move(ref);
  doc.surface_tokens = split_words(text);
  doc.terms.reserve(doc.surface_tokens.size());
  for (const auto& token : doc.surface_tokens)
    if (!stopwords.contains(token)) doc.terms.push_back(porter_stem(token));
  return doc;
}

WordSet load_stopwords(const std::filesystem::path& path) { return lowercase_set(read_word_file(path, "#")); }

const WordSet& default_stopwords() {
  static const WordSet set = lowercase_set(parse_word_lines(embedded::stopwords, "#"));
  return set;
}

}  // namespace retrorank
