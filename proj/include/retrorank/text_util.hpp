#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace retrorank {

std::string_view trim(std::string_view s);

/// Reads a one-entry-per-line word file. Entries are trimmed; blank lines and lines
/// starting with any character in `comment_prefixes` are skipped.
std::vector<std::string> parse_word_lines(std::string_view content, std::string_view comment_prefixes);
std::vector<std::string> read_word_file(const std::filesystem::path& path, std::string_view comment_prefixes);

/// Truncates to at most `max_bytes` without splitting a UTF-8 sequence.
std::string utf8_prefix(std::string_view s, std::size_t max_bytes);

}  // namespace retrorank
