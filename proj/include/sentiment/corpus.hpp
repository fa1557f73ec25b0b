#pragma once

// Labeled tweet datasets: TSV loading, level filtering, seeded stratified
// splitting.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sentiment {

// Canonical order is load-bearing: tie-breaking in prediction and pairwise
// model enumeration both rely on it.
enum class Label : int { Positive = 0, Negative = 1, Neutral = 2, Mixed = 3 };

inline constexpr std::array<Label, 4> kAllLabels = {
    Label::Positive, Label::Negative, Label::Neutral, Label::Mixed};

inline const char* to_string(Label l) {
  switch (l) {
    case Label::Positive: return "positive";
    case Label::Negative: return "negative";
    case Label::Neutral: return "neutral";
    case Label::Mixed: return "mixed";
  }
  return "?";
}

inline std::optional<Label> parse_label(std::string_view s) {
  std::string low;
  low.reserve(s.size());
  for (char c : s) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (low == "positive") return Label::Positive;
  if (low == "negative") return Label::Negative;
  if (low == "neutral") return Label::Neutral;
  if (low == "mixed") return Label::Mixed;
  return std::nullopt;
}

enum class ClassificationLevel { TwoWay, ThreeWay, FourWay };

inline std::vector<Label> labels_of(ClassificationLevel level) {
  switch (level) {
    case ClassificationLevel::TwoWay:
      return {Label::Positive, Label::Negative};
    case ClassificationLevel::ThreeWay:
      return {Label::Positive, Label::Negative, Label::Neutral};
    case ClassificationLevel::FourWay:
      return {Label::Positive, Label::Negative, Label::Neutral, Label::Mixed};
  }
  return {};
}

inline const char* to_string(ClassificationLevel level) {
  switch (level) {
    case ClassificationLevel::TwoWay: return "two";
    case ClassificationLevel::ThreeWay: return "three";
    case ClassificationLevel::FourWay: return "four";
  }
  return "?";
}

inline std::optional<ClassificationLevel> parse_level(std::string_view s) {
  if (s == "two" || s == "2" || s == "twoway") return ClassificationLevel::TwoWay;
  if (s == "three" || s == "3" || s == "threeway") return ClassificationLevel::ThreeWay;
  if (s == "four" || s == "4" || s == "fourway") return ClassificationLevel::FourWay;
  return std::nullopt;
}

inline bool level_contains(ClassificationLevel level, Label l) {
  switch (level) {
    case ClassificationLevel::TwoWay:
      return l == Label::Positive || l == Label::Negative;
    case ClassificationLevel::ThreeWay:
      return l != Label::Mixed;
    case ClassificationLevel::FourWay:
      return true;
  }
  return false;
}

struct Tweet {
  std::string id;
  std::string text;
  std::optional<Label> label;
};

struct Dataset {
  std::vector<Tweet> tweets;
  ClassificationLevel level = ClassificationLevel::FourWay;

  std::map<Label, long> class_counts() const {
    std::map<Label, long> counts;
    for (const Tweet& t : tweets)
      if (t.label) ++counts[*t.label];
    return counts;
  }
  size_t size() const { return tweets.size(); }
};

struct CorpusError : std::runtime_error {
  enum class Kind {
    MalformedRow,
    UnknownLabel,
    DuplicateId,
    EmptyCorpus,
    ClassTooSmall,
    IoError,
  };
  Kind kind;
  CorpusError(Kind k, const std::string& msg)
      : std::runtime_error(msg), kind(k) {}
};

namespace detail {

inline std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

// Corpus TSV: one tweet per line, `id<TAB>label<TAB>text`, UTF-8,
// `#` comment lines ignored. With expect_labels=false the label field may
// be `-` (or empty) for prediction-only input.
inline Dataset load_corpus(const std::string& path, bool expect_labels = true) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw CorpusError(CorpusError::Kind::IoError, "cannot open corpus: " + path);

  Dataset d;
  d.level = ClassificationLevel::FourWay;
  std::map<std::string, int> seen;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    size_t t1 = line.find('\t');
    size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos ||
        line.find('\t', t2 + 1) != std::string::npos) {
      throw CorpusError(CorpusError::Kind::MalformedRow,
                        path + ":" + std::to_string(lineno) +
                            ": expected 3 tab-separated fields");
    }
    Tweet tw;
    tw.id = line.substr(0, t1);
    std::string label_str = line.substr(t1 + 1, t2 - t1 - 1);
    tw.text = line.substr(t2 + 1);
    if (tw.id.empty() || detail::trim(tw.text).empty()) {
      throw CorpusError(CorpusError::Kind::MalformedRow,
                        path + ":" + std::to_string(lineno) +
                            ": empty id or text");
    }
    if (seen.count(tw.id)) {
      throw CorpusError(CorpusError::Kind::DuplicateId,
                        path + ":" + std::to_string(lineno) +
                            ": duplicate id '" + tw.id + "'");
    }
    seen[tw.id] = 1;

    if (label_str == "-" || label_str.empty()) {
      if (expect_labels) {
        throw CorpusError(CorpusError::Kind::UnknownLabel,
                          path + ":" + std::to_string(lineno) +
                              ": missing label");
      }
    } else {
      std::optional<Label> l = parse_label(label_str);
      if (!l) {
        throw CorpusError(CorpusError::Kind::UnknownLabel,
                          path + ":" + std::to_string(lineno) +
                              ": unknown label '" + label_str + "'");
      }
      tw.label = l;
    }
    d.tweets.push_back(std::move(tw));
  }
  if (d.tweets.empty())
    throw CorpusError(CorpusError::Kind::EmptyCorpus, "empty corpus: " + path);
  return d;
}

inline Dataset filter_by_level(const Dataset& d, ClassificationLevel level) {
  Dataset out;
  out.level = level;
  for (const Tweet& t : d.tweets) {
    if (t.label && level_contains(level, *t.label)) out.tweets.push_back(t);
  }
  return out;
}

// splitmix64; per-class streams are derived from (seed, label index).
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  // Bounded draw; modulo bias is irrelevant here, determinism is not.
  uint64_t below(uint64_t n) { return next() % n; }
};

// Per-class test counts use round-half-up of class_count * test_fraction.
// Membership depends only on (seed, per-class id sets); within-class order
// is fixed by sorting ids before the seeded shuffle.
inline std::pair<Dataset, Dataset> stratified_split(const Dataset& d,
                                                    double test_fraction,
                                                    uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw std::invalid_argument("test_fraction must be in (0,1)");

  std::map<Label, std::vector<std::string>> by_class;
  for (const Tweet& t : d.tweets) {
    if (!t.label)
      throw CorpusError(CorpusError::Kind::MalformedRow,
                        "stratified_split requires labeled tweets");
    by_class[*t.label].push_back(t.id);
  }
  for (auto& [label, ids] : by_class) {
    if (ids.size() < 2)
      throw CorpusError(CorpusError::Kind::ClassTooSmall,
                        std::string("class too small to split: ") +
                            to_string(label));
  }

  std::map<std::string, bool> in_test;
  for (auto& [label, ids] : by_class) {
    std::sort(ids.begin(), ids.end());
    SplitMix64 rng(seed ^ (0x9E3779B97F4A7C15ULL *
                           (static_cast<uint64_t>(label) + 1)));
    for (size_t i = ids.size(); i > 1; --i)
      std::swap(ids[i - 1], ids[rng.below(i)]);
    size_t n_test = static_cast<size_t>(
        std::floor(static_cast<double>(ids.size()) * test_fraction + 0.5));
    for (size_t i = 0; i < n_test; ++i) in_test[ids[i]] = true;
  }

  Dataset train, test;
  train.level = test.level = d.level;
  for (const Tweet& t : d.tweets) {
    if (in_test.count(t.id)) test.tweets.push_back(t);
    else train.tweets.push_back(t);
  }
  return {std::move(train), std::move(test)};
}

}  // namespace sentiment
