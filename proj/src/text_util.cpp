#include "retrorank/text_util.hpp"

#include <fstream>
#include <sstream>

#include "retrorank/error.hpp"

namespace retrorank {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> parse_word_lines(std::string_view content, std::string_view comment_prefixes) {
  // tolerate a UTF-8 byte order mark
  if (content.starts_with("\xEF\xBB\xBF")) content.remove_prefix(3);
  std::vector<std::string> words;
  while (!content.empty()) {
    auto eol = content.find('\n');
    auto word = trim(content.substr(0, eol));
    content.remove_prefix(eol == std::string_view::npos ? content.size() : eol + 1);
    if (word.empty() || comment_prefixes.find(word.front()) != std::string_view::npos) continue;
    words.emplace_back(word);
  }
  return words;
}

std::vector<std::string> read_word_file(const std::filesystem::path& path, std::string_view comment_prefixes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read word file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_word_lines(buf.str(), comment_prefixes);
}

std::string utf8_prefix(std::string_view s, std::size_t max_bytes) {
  if (s.size() <= max_bytes) return std::string(s);
  std::size_t cut = max_bytes;
  while (cut > 0 && (static_cast<unsigned char>(s[cut]) & 0xC0) == 0x80) --cut;
  return std::string(s.substr(0, cut));
}

}  // namespace retrorank
