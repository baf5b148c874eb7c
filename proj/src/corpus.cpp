#include "retrorank/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "retrorank/error.hpp"
#include "retrorank/text_util.hpp"

namespace retrorank {

using nlohmann::json;

std::string to_string(const DocRef& ref) {
  return "comment " + std::to_string(ref.index) + " of bug #" + ref.bug_id;
}

std::string_view to_string(BugStatus status) {
  return status == BugStatus::resolved ? "resolved" : "unresolved";
}

std::optional<BugStatus> parse_status(std::string_view text) {
  if (text == "resolved") return BugStatus::resolved;
  if (text == "unresolved") return BugStatus::unresolved;
  return std::nullopt;
}

namespace {

// Returns an empty string when the bug is well formed.
std::string check_bug(const BugReport& bug) {
  if (bug.id.empty()) return "bug id is empty";
  for (std::size_t i = 0; i < bug.comments.size(); ++i) {
    const auto& c = bug.comments[i];
    if (c.index != static_cast<int>(i))
      return "bug " + bug.id + ": comment index " + std::to_string(c.index) + " out of sequence (expected " +
             std::to_string(i) + ")";
    if (c.bug_id != bug.id) return "bug " + bug.id + ": comment " + std::to_string(i) + " names bug " + c.bug_id;
    if (trim(c.body).empty()) return "bug " + bug.id + ": comment " + std::to_string(i) + " has an empty body";
  }
  return {};
}

const json& require(const json& obj, const char* key, std::size_t line, const std::string& source) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(source, line, std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const json& obj, const char* key, std::size_t line, const std::string& source) {
  const auto& v = require(obj, key, line, source);
  if (!v.is_string()) throw ParseError(source, line, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const char* key, std::size_t line,
                                           const std::string& source) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ParseError(source, line, std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

BugReport parse_bug(const json& rec, std::size_t line, const std::string& source) {
  if (!rec.is_object()) throw ParseError(source, line, "record is not an object");
  BugReport bug;
  bug.id = require_string(rec, "id", line, source);
  bug.title = require_string(rec, "title", line, source);
  bug.description = require_string(rec, "description", line, source);
  auto status_text = require_string(rec, "status", line, source);
  auto status = parse_status(status_text);
  if (!status) throw ParseError(source, line, "unknown status '" + status_text + "'");
  bug.status = *status;

  const auto& comments = require(rec, "comments", line, source);
  if (!comments.is_array()) throw ParseError(source, line, "field 'comments' must be an array");
  for (const auto& c : comments) {
    if (!c.is_object()) throw ParseError(source, line, "comment is not an object");
    const auto& idx = require(c, "index", line, source);
    if (!idx.is_number_integer()) throw ParseError(source, line, "comment 'index' must be an integer");
    Comment comment;
    comment.bug_id = bug.id;
    comment.index = idx.get<int>();
    comment.body = require_string(c, "body", line, source);
    comment.author = optional_string(c, "author", line, source);
    comment.timestamp = optional_string(c, "timestamp", line, source);
    bug.comments.push_back(std::move(comment));
  }
  if (auto problem = check_bug(bug); !problem.empty()) throw ParseError(source, line, problem);
  return bug;
}

json bug_to_json(const BugReport& bug) {
  json comments = json::array();
  for (const auto& c : bug.comments) {
    json jc = {{"index", c.index}, {"body", c.body}};
    if (c.author) jc["author"] = *c.author;
    if (c.timestamp) jc["timestamp"] = *c.timestamp;
    comments.push_back(std::move(jc));
  }
  return {{"id", bug.id},
          {"title", bug.title},
          {"description", bug.description},
          {"status", std::string(to_string(bug.status))},
          {"comments", std::move(comments)}};
}

}  // namespace

Corpus Corpus::from_bugs(std::vector<BugReport> bugs) {
  Corpus corpus;
  for (auto& bug : bugs) {
    if (auto problem = check_bug(bug); !problem.empty()) throw ParseError("corpus", 0, problem);
    if (corpus.bugs_.contains(bug.id)) throw ParseError("corpus", 0, "duplicate bug id '" + bug.id + "'");
    if (bug.status == BugStatus::resolved) corpus.resolved_comment_count_ += bug.comments.size();
    std::string id = bug.id;
    corpus.bugs_.emplace(std::move(id), std::move(bug));
  }
  return corpus;
}

const BugReport& Corpus::get_bug(const std::string& id) const {
  if (const auto* bug = find_bug(id)) return *bug;
  throw NotFoundError(id);
}

const BugReport* Corpus::find_bug(const std::string& id) const {
  auto it = bugs_.find(id);
  return it == bugs_.end() ? nullptr : &it->second;
}

const Comment* Corpus::find_comment(const DocRef& ref) const {
  const auto* bug = find_bug(ref.bug_id);
  if (!bug || ref.index < 0 || ref.index >= static_cast<int>(bug->comments.size())) return nullptr;
  return &bug->comments[static_cast<std::size_t>(ref.index)];
}

std::vector<CommentView> Corpus::resolved_comments() const {
  std::vector<CommentView> out;
  out.reserve(resolved_comment_count_);
  for (const auto& [id, bug] : bugs_) {
    if (bug.status != BugStatus::resolved) continue;
    for (const auto& c : bug.comments) out.push_back({DocRef{id, c.index}, &c.body});
  }
  return out;
}

Corpus parse_corpus(std::istream& in, const std::string& source_name) {
  std::vector<BugReport> bugs;
  std::map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    json rec;
    try {
      rec = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(source_name, line_no, std::string("malformed record: ") + e.what());
    }
    auto bug = parse_bug(rec, line_no, source_name);
    if (auto [it, fresh] = seen.emplace(bug.id, line_no); !fresh)
      throw ParseError(source_name, line_no,
                       "duplicate bug id '" + bug.id + "' (first seen on line " + std::to_string(it->second) + ")");
    bugs.push_back(std::move(bug));
  }
  return Corpus::from_bugs(std::move(bugs));
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read corpus file '" + path.string() + "'");
  return parse_corpus(in, path.string());
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& [id, bug] : corpus.bugs()) out << bug_to_json(bug).dump() << '\n';
}

void save_corpus(const std::filesystem::path& path, const Corpus& corpus) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write corpus file '" + path.string() + "'");
  write_corpus(out, corpus);
}

}  // namespace retrorank
