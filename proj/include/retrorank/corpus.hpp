#pragma once

#include <compare>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace retrorank {

/// Addresses one comment: position `index` in the thread of bug `bug_id`.
struct DocRef {
  std::string bug_id;
  int index = 0;

  auto operator<=>(const DocRef&) const = default;
  bool operator==(const DocRef&) const = default;
};

std::string to_string(const DocRef& ref);

struct Comment {
  std::string bug_id;
  int index = 0;
  std::optional<std::string> author;
  std::optional<std::string> timestamp;
  std::string body;

  bool operator==(const Comment&) const = default;
};

enum class BugStatus { resolved, unresolved };

std::string_view to_string(BugStatus status);
std::optional<BugStatus> parse_status(std::string_view text);

struct BugReport {
  std::string id;
  std::string title;
  std::string description;
  BugStatus status = BugStatus::unresolved;
  std::vector<Comment> comments;

  bool operator==(const BugReport&) const = default;
};

/// Candidate view of a comment of a resolved bug.
struct CommentView {
  DocRef ref;
  const std::string* body = nullptr;
};

/// Immutable after load. Bugs iterate in ascending id order.
class Corpus {
 public:
  Corpus() = default;

  /// Validates ids, thread numbering and bodies; throws ParseError on violations.
  static Corpus from_bugs(std::vector<BugReport> bugs);

  const std::map<std::string, BugReport>& bugs() const noexcept { return bugs_; }
  std::size_t resolved_comment_count() const noexcept { return resolved_comment_count_; }

  /// Throws NotFoundError carrying `id`.
  const BugReport& get_bug(const std::string& id) const;
  const BugReport* find_bug(const std::string& id) const;
  const Comment* find_comment(const DocRef& ref) const;

  /// All comments of resolved bugs, ordered by (bug id, index).
  std::vector<CommentView> resolved_comments() const;

  bool operator==(const Corpus&) const = default;

 private:
  std::map<std::string, BugReport> bugs_;
  std::size_t resolved_comment_count_ = 0;
};

Corpus load_corpus(const std::filesystem::path& path);
Corpus parse_corpus(std::istream& in, const std::string& source_name = "<stream>");

void write_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::filesystem::path& path, const Corpus& corpus);

}  // namespace retrorank
