#include "doctest.h"
#include "sentiment/lexicon.hpp"

#include <filesystem>
#include <fstream>
#include <string>

using namespace sentiment;

namespace {

std::string write_tmp(const std::string& name, const std::string& content) {
  std::string path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  return path;
}

LexiconError::Kind scored_kind(const std::string& content) {
  std::string path = write_tmp("lex_bad.tsv", content);
  try {
    load_scored_lexicon(path);
  } catch (const LexiconError& e) {
    return e.kind;
  }
  return LexiconError::Kind::IoError;
}

}  // namespace

TEST_CASE("load_scored_lexicon: load and lookup round trip") {
  std::string path =
      write_tmp("lex_ok.tsv", "جميل\t2.5\nسيء\t-1.75\n# comment\n");
  ScoredLexicon lex = load_scored_lexicon(path);
  CHECK(lex.entries.size() == 2);
  CHECK(score_of(lex, "جميل") == doctest::Approx(2.5));
  CHECK(score_of(lex, "سيء") == doctest::Approx(-1.75));
}

TEST_CASE("load_scored_lexicon: error kinds") {
  CHECK(scored_kind("x\t0.0\n") == LexiconError::Kind::ZeroScore);
  CHECK(scored_kind("x\tinf\n") == LexiconError::Kind::NonFiniteScore);
  CHECK(scored_kind("x\tnan\n") == LexiconError::Kind::NonFiniteScore);
  CHECK(scored_kind("x 1.0\n") == LexiconError::Kind::MalformedRow);
  CHECK(scored_kind("x\tabc\n") == LexiconError::Kind::MalformedRow);
  CHECK(scored_kind("x\t1.0\nx\t2.0\n") == LexiconError::Kind::DuplicateTerm);
}

TEST_CASE("load_scored_lexicon: terms normalized at load") {
  std::string path = write_tmp("lex_norm.tsv", "أنا\t1.0\n");
  ScoredLexicon lex = load_scored_lexicon(path);
  CHECK(score_of(lex, "انا") == doctest::Approx(1.0));
  CHECK(score_of(lex, "أنا") == 0.0);  // un-normalized query misses
  for (const auto& [term, score] : lex.entries) CHECK(normalize(term) == term);
}

TEST_CASE("score_of: absent term contributes 0") {
  ScoredLexicon lex;
  lex.entries["جميل"] = 2.0;
  CHECK(score_of(lex, "غائب") == 0.0);
  CHECK(score_of(lex, "") == 0.0);
}

TEST_CASE("load_polar_lexicon: basic load") {
  std::string path = write_tmp("polar_ok.tsv", "جيد\tpos\nرديء\tneg\n");
  PolarLexicon lex = load_polar_lexicon(path);
  CHECK(lex.positive.count("جيد") == 1);
  CHECK(lex.negative.count("رديء") == 1);
  CHECK(lex.positive.size() == 1);
  CHECK(lex.negative.size() == 1);
}

TEST_CASE("load_polar_lexicon: conflicting polarity rejected") {
  std::string path = write_tmp("polar_conflict.tsv", "x\tpos\nx\tneg\n");
  try {
    load_polar_lexicon(path);
    FAIL("expected ConflictingPolarity");
  } catch (const LexiconError& e) {
    CHECK(e.kind == LexiconError::Kind::ConflictingPolarity);
  }
}

TEST_CASE("load_polar_lexicon: unknown polarity rejected") {
  std::string path = write_tmp("polar_unknown.tsv", "x\tpositive\n");
  try {
    load_polar_lexicon(path);
    FAIL("expected UnknownPolarity");
  } catch (const LexiconError& e) {
    CHECK(e.kind == LexiconError::Kind::UnknownPolarity);
  }
}

TEST_CASE("load_polar_lexicon: empty file yields empty lexicon") {
  std::string path = write_tmp("polar_empty.tsv", "# nothing\n");
  PolarLexicon lex = load_polar_lexicon(path);
  CHECK(lex.positive.empty());
  CHECK(lex.negative.empty());
}

TEST_CASE("load_marker_list: emoticons kept verbatim, words normalized") {
  std::string path = write_tmp("markers_emo.txt", ":)\n:-)\n(:\n:)\n");
  MarkerList emo = load_marker_list(path, MarkerKind::PositiveEmoticon);
  CHECK(emo.terms.size() == 3);  // duplicates deduplicated silently
  CHECK(emo.terms.count(":)") == 1);

  std::string wpath = write_tmp("markers_neg.txt", "لن\nلم\nلا\n");
  MarkerList neg = load_marker_list(wpath, MarkerKind::Negation);
  CHECK(neg.terms.size() == 3);
  for (const std::string& t : neg.terms) CHECK(normalize(t) == t);

  std::string cpath = write_tmp("markers_contrast.txt", "لكن\n");
  MarkerList contrast = load_marker_list(cpath, MarkerKind::Contrast);
  CHECK(contrast.terms == std::unordered_set<std::string>{"لكن"});
}

TEST_CASE("validate_bundle: empty marker list fails fast") {
  LexiconBundle bundle;
  for (MarkerKind k : kAllMarkerKinds) {
    bundle.markers[k].kind = k;
    bundle.markers[k].terms = {"x"};
  }
  CHECK_NOTHROW(validate_bundle(bundle));

  bundle.markers[MarkerKind::Modal].terms.clear();
  try {
    validate_bundle(bundle);
    FAIL("expected EmptyList");
  } catch (const LexiconError& e) {
    CHECK(e.kind == LexiconError::Kind::EmptyList);
  }

  bundle.markers.erase(MarkerKind::Modal);
  CHECK_THROWS_AS(validate_bundle(bundle), LexiconError);
}
