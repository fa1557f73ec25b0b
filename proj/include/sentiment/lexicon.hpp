#pragma once

// Scored and polar sentiment lexicons plus the marker wordlists (negation,
// valence shifters, emoticons). Word-kind entries are normalized at load so
// lookups agree with normalized tweet text; emoticon entries stay verbatim.

#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sentiment/text.hpp"

namespace sentiment {

struct LexiconError : std::runtime_error {
  enum class Kind {
    MalformedRow,
    DuplicateTerm,
    ZeroScore,
    NonFiniteScore,
    ConflictingPolarity,
    UnknownPolarity,
    EmptyList,
    IoError,
  };
  Kind kind;
  LexiconError(Kind k, const std::string& msg)
      : std::runtime_error(msg), kind(k) {}
};

struct ScoredLexicon {
  std::unordered_map<std::string, double> entries;
  std::string name;
};

struct PolarLexicon {
  std::unordered_set<std::string> positive;
  std::unordered_set<std::string> negative;
  std::string name;
};

enum class MarkerKind {
  Negation,
  Intensifier,
  Diminisher,
  Modal,
  Contrast,
  PositiveEmoticon,
  NegativeEmoticon,
};

inline const char* to_string(MarkerKind k) {
  switch (k) {
    case MarkerKind::Negation: return "negation";
    case MarkerKind::Intensifier: return "intensifier";
    case MarkerKind::Diminisher: return "diminisher";
    case MarkerKind::Modal: return "modal";
    case MarkerKind::Contrast: return "contrast";
    case MarkerKind::PositiveEmoticon: return "positive_emoticon";
    case MarkerKind::NegativeEmoticon: return "negative_emoticon";
  }
  return "?";
}

inline constexpr std::array<MarkerKind, 7> kAllMarkerKinds = {
    MarkerKind::Negation,         MarkerKind::Intensifier,
    MarkerKind::Diminisher,       MarkerKind::Modal,
    MarkerKind::Contrast,         MarkerKind::PositiveEmoticon,
    MarkerKind::NegativeEmoticon};

struct MarkerList {
  MarkerKind kind = MarkerKind::Negation;
  std::unordered_set<std::string> terms;
};

struct LexiconBundle {
  ScoredLexicon scored;   // intensity-scored lexicon (TweetScore source)
  PolarLexicon polar_a;   // MPQA role
  PolarLexicon polar_b;   // Liu role
  std::map<MarkerKind, MarkerList> markers;

  const MarkerList& marker(MarkerKind k) const { return markers.at(k); }

  // Tokenizer input: union of both emoticon lists, verbatim.
  std::vector<std::string> emoticon_strings() const {
    std::vector<std::string> out;
    for (MarkerKind k : {MarkerKind::PositiveEmoticon, MarkerKind::NegativeEmoticon}) {
      auto it = markers.find(k);
      if (it == markers.end()) continue;
      for (const std::string& e : it->second.terms) out.push_back(e);
    }
    return out;
  }
};

namespace detail {

inline std::vector<std::pair<long, std::string>> read_data_lines(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw LexiconError(LexiconError::Kind::IoError, "cannot open: " + path);
  std::vector<std::pair<long, std::string>> lines;
  std::string line;
  long n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    lines.emplace_back(n, line);
  }
  return lines;
}

}  // namespace detail

// TSV `term<TAB>score`. Terms normalized; zero or non-finite scores and
// duplicate terms are rejected (an absent term contributes 0 by definition,
// so a stored 0 would be unreachable noise).
inline ScoredLexicon load_scored_lexicon(const std::string& path,
                                         std::string name = "scored") {
  ScoredLexicon lex;
  lex.name = std::move(name);
  for (const auto& [lineno, line] : detail::read_data_lines(path)) {
    size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw LexiconError(LexiconError::Kind::MalformedRow,
                         path + ":" + std::to_string(lineno) +
                             ": expected `term<TAB>score`");
    std::string term = normalize(line.substr(0, tab));
    std::string score_str = line.substr(tab + 1);
    if (term.empty())
      throw LexiconError(LexiconError::Kind::MalformedRow,
                         path + ":" + std::to_string(lineno) + ": empty term");
    double score = 0;
    size_t pos = 0;
    try {
      score = std::stod(score_str, &pos);
    } catch (const std::exception&) {
      throw LexiconError(LexiconError::Kind::MalformedRow,
                         path + ":" + std::to_string(lineno) +
                             ": bad score '" + score_str + "'");
    }
    if (pos != score_str.size())
      throw LexiconError(LexiconError::Kind::MalformedRow,
                         path + ":" + std::to_string(lineno) +
                             ": bad score '" + score_str + "'");
    if (!std::isfinite(score))
      throw LexiconError(LexiconError::Kind::NonFiniteScore,
                         path + ":" + std::to_string(lineno) +
                             ": non-finite score");
    if (score == 0.0)
      throw LexiconError(LexiconError::Kind::ZeroScore,
                         path + ":" + std::to_string(lineno) +
                             ": zero score for '" + term + "'");
    if (!lex.entries.emplace(term, score).second)
      throw LexiconError(LexiconError::Kind::DuplicateTerm,
                         path + ":" + std::to_string(lineno) +
                             ": duplicate term '" + term + "'");
  }
  return lex;
}

// TSV `term<TAB>pos|neg`. A term listed with both polarities is rejected.
inline PolarLexicon load_polar_lexicon(const std::string& path,
                                       std::string name = "polar") {
  PolarLexicon lex;
  lex.name = std::move(name);
  for (const auto& [lineno, line] : detail::read_data_lines(path)) {
    size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw LexiconError(LexiconError::Kind::MalformedRow,
                         path + ":" + std::to_string(lineno) +
                             ": expected `term<TAB>pos|neg`");
    std::string term = normalize(line.substr(0, tab));
    std::string pol = line.substr(tab + 1);
    if (term.empty())
      throw LexiconError(LexiconError::Kind::MalformedRow,
                         path + ":" + std::to_string(lineno) + ": empty term");
    if (pol == "pos") {
      if (lex.negative.count(term))
        throw LexiconError(LexiconError::Kind::ConflictingPolarity,
                           path + ":" + std::to_string(lineno) +
                               ": '" + term + "' listed as both polarities");
      lex.positive.insert(term);
    } else if (pol == "neg") {
      if (lex.positive.count(term))
        throw LexiconError(LexiconError::Kind::ConflictingPolarity,
                           path + ":" + std::to_string(lineno) +
                               ": '" + term + "' listed as both polarities");
      lex.negative.insert(term);
    } else {
      throw LexiconError(LexiconError::Kind::UnknownPolarity,
                         path + ":" + std::to_string(lineno) +
                             ": unknown polarity '" + pol + "'");
    }
  }
  return lex;
}

// One term per line. Word-kind terms are normalized, emoticon-kind terms
// kept verbatim. Duplicates deduplicate silently.
inline MarkerList load_marker_list(const std::string& path, MarkerKind kind) {
  MarkerList list;
  list.kind = kind;
  const bool verbatim = kind == MarkerKind::PositiveEmoticon ||
                        kind == MarkerKind::NegativeEmoticon;
  for (const auto& [lineno, line] : detail::read_data_lines(path)) {
    std::string term = verbatim ? line : normalize(line);
    if (!term.empty()) list.terms.insert(term);
  }
  return list;
}

inline double score_of(const ScoredLexicon& lex, const std::string& term) {
  auto it = lex.entries.find(term);
  return it == lex.entries.end() ? 0.0 : it->second;
}

// Fail fast at bundle assembly: all seven marker kinds must be present and
// non-empty (every one is referenced by some feature of the full mask).
inline void validate_bundle(const LexiconBundle& bundle) {
  for (MarkerKind k : kAllMarkerKinds) {
    auto it = bundle.markers.find(k);
    if (it == bundle.markers.end() || it->second.terms.empty())
      throw LexiconError(LexiconError::Kind::EmptyList,
                         std::string("empty or missing marker list: ") +
                             to_string(k));
  }
}

}  // namespace sentiment
