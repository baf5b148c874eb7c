#include <doctest.h>

#include <sstream>

#include "retrorank/corpus.hpp"
#include "retrorank/error.hpp"
#include "test_util.hpp"

using namespace retrorank;
using retrorank::testing::corpus_from_text;
using retrorank::testing::TempFile;

namespace {

const char* kTwoBugs =
    R"({"id":"200","title":"Crash on save","description":"d","status":"resolved","comments":[{"index":0,"body":"It crashes."},{"index":1,"body":"Fixed in master.","author":"dev"},{"index":2,"body":"Verified, works.","timestamp":"2011-02-01T10:00:00Z"}]}
{"id":"100","title":"Open bug","description":"still open","status":"unresolved","comments":[]}
)";

}  // namespace

TEST_CASE("load_corpus: two well-formed records") {
  auto corpus = corpus_from_text(kTwoBugs);
  CHECK(corpus.bugs().size() == 2);
  CHECK(corpus.resolved_comment_count() == 3);
  // ascending id iteration
  CHECK(corpus.bugs().begin()->first == "100");
  const auto& bug = corpus.get_bug("200");
  CHECK(bug.status == BugStatus::resolved);
  REQUIRE(bug.comments.size() == 3);
  CHECK(bug.comments[1].author == "dev");
  CHECK_FALSE(bug.comments[0].author.has_value());
  CHECK(bug.comments[2].timestamp == "2011-02-01T10:00:00Z");
}

TEST_CASE("load_corpus: empty input, blank and comment lines") {
  CHECK(corpus_from_text("").bugs().empty());
  auto corpus = corpus_from_text("\n# a comment\n   \n");
  CHECK(corpus.bugs().empty());
  CHECK(corpus.resolved_comment_count() == 0);
}

TEST_CASE("load_corpus: errors") {
  SUBCASE("duplicate id names the id") {
    std::string twice = std::string(kTwoBugs) +
                        R"({"id":"200","title":"again","description":"","status":"resolved","comments":[]})";
    try {
      corpus_from_text(twice);
      FAIL("expected duplicate-id error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("'200'") != std::string::npos);
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("malformed record reports its line") {
    try {
      corpus_from_text("# header\n{\"id\": \"1\", oops}\n");
      FAIL("expected parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("unknown status") {
    CHECK_THROWS_WITH_AS(
        corpus_from_text(R"({"id":"1","title":"t","description":"","status":"closed","comments":[]})"),
        doctest::Contains("unknown status 'closed'"), ParseError);
  }
  SUBCASE("blank comment body") {
    CHECK_THROWS_WITH_AS(corpus_from_text(
                             R"({"id":"1","title":"t","description":"","status":"resolved","comments":[{"index":0,"body":"  \t "}]})"),
                         doctest::Contains("empty body"), ParseError);
  }
  SUBCASE("comment indices must run 0..k-1 in file order") {
    CHECK_THROWS_AS(corpus_from_text(
                        R"({"id":"1","title":"t","description":"","status":"resolved","comments":[{"index":1,"body":"x"}]})"),
                    ParseError);
    CHECK_THROWS_AS(
        corpus_from_text(
            R"({"id":"1","title":"t","description":"","status":"resolved","comments":[{"index":0,"body":"x"},{"index":0,"body":"y"}]})"),
        ParseError);
  }
  SUBCASE("missing field") {
    CHECK_THROWS_WITH_AS(corpus_from_text(R"({"id":"1","description":"","status":"resolved","comments":[]})"),
                         doctest::Contains("title"), ParseError);
  }
  SUBCASE("missing file names the path") {
    CHECK_THROWS_WITH_AS(load_corpus("/nonexistent/corpus.jsonl"), doctest::Contains("/nonexistent/corpus.jsonl"),
                         Error);
  }
}

TEST_CASE("get_bug: present, absent, no mutation") {
  auto corpus = corpus_from_text(kTwoBugs);
  auto before = corpus;
  CHECK(corpus.get_bug("100").title == "Open bug");
  try {
    corpus.get_bug("999");
    FAIL("expected not-found");
  } catch (const NotFoundError& e) {
    CHECK(e.key() == "999");
  }
  CHECK(corpus == before);
  CHECK(corpus.get_bug("200").comments.size() == 3);
}

TEST_CASE("resolved_comments: filter and order") {
  SUBCASE("unresolved bugs contribute nothing") {
    auto corpus = corpus_from_text(
        R"({"id":"a","title":"","description":"","status":"resolved","comments":[{"index":0,"body":"x"},{"index":1,"body":"y"}]}
{"id":"b","title":"","description":"","status":"unresolved","comments":[{"index":0,"body":"1"},{"index":1,"body":"2"},{"index":2,"body":"3"},{"index":3,"body":"4"},{"index":4,"body":"5"}]})");
    auto views = corpus.resolved_comments();
    REQUIRE(views.size() == 2);
    CHECK(views[0].ref == DocRef{"a", 0});
    CHECK(*views[1].body == "y");
  }
  SUBCASE("no resolved bugs") {
    auto corpus = corpus_from_text(R"({"id":"b","title":"","description":"","status":"unresolved","comments":[{"index":0,"body":"1"}]})");
    CHECK(corpus.resolved_comments().empty());
  }
  SUBCASE("sorted by (bug id, index) regardless of file order") {
    auto corpus = corpus_from_text(
        R"({"id":"z","title":"","description":"","status":"resolved","comments":[{"index":0,"body":"x"}]}
{"id":"m","title":"","description":"","status":"resolved","comments":[{"index":0,"body":"x"},{"index":1,"body":"y"}]})");
    auto views = corpus.resolved_comments();
    REQUIRE(views.size() == 3);
    CHECK(views[0].ref == DocRef{"m", 0});
    CHECK(views[1].ref == DocRef{"m", 1});
    CHECK(views[2].ref == DocRef{"z", 0});
    CHECK(views.size() == corpus.resolved_comment_count());
  }
}

TEST_CASE("corpus round-trips through the file format") {
  auto corpus = corpus_from_text(kTwoBugs);
  TempFile file;
  save_corpus(file.path(), corpus);
  auto reloaded = load_corpus(file.path());
  CHECK(reloaded == corpus);

  // byte-identical input loads identically
  std::ostringstream a, b;
  write_corpus(a, reloaded);
  write_corpus(b, load_corpus(file.path()));
  CHECK(a.str() == b.str());
}

TEST_CASE("sample corpus ships valid") {
  auto corpus = load_corpus(retrorank::testing::data_path("sample/corpus.jsonl"));
  CHECK(corpus.bugs().size() == 7);
  CHECK(corpus.get_bug("34600").status == BugStatus::unresolved);
  CHECK(to_string(DocRef{"33662", 2}) == "comment 2 of bug #33662");
}
