#pragma once

// The 19-feature vector, per-level masks, and train-fitted min-max scaling.

#include <algorithm>
#include <array>
#include <bitset>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sentiment/corpus.hpp"
#include "sentiment/lexicon.hpp"
#include "sentiment/text.hpp"

namespace sentiment {

inline constexpr int kFeatureCount = 19;

// Canonical order is frozen; selection tie-breaking and the dense vector
// layout both depend on the indices.
enum class FeatureId : int {
  HasPositiveWordAraSenti = 0,
  HasNegativeWordAraSenti = 1,
  HasPositiveWordMPQA = 2,
  HasNegativeWordMPQA = 3,
  HasPositiveWordLiu = 4,
  HasNegativeWordLiu = 5,
  HasNegation = 6,
  HasIntensifier = 7,
  HasDiminisher = 8,
  HasModalWord = 9,
  HasContrastWord = 10,
  PositiveWordCount = 11,
  NegativeWordCount = 12,
  TweetScore = 13,
  HasQuestionMark = 14,
  HasExclamationMark = 15,
  HasPositiveEmoticon = 16,
  HasNegativeEmoticon = 17,
  TweetLength = 18,
};

inline constexpr std::array<const char*, kFeatureCount> kFeatureNames = {
    "hasPositiveWordAraSenti", "hasNegativeWordAraSenti",
    "hasPositiveWordMPQA",     "hasNegativeWordMPQA",
    "hasPositiveWordLiu",      "hasNegativeWordLiu",
    "hasNegation",             "hasIntensifier",
    "hasDiminisher",           "hasModalWord",
    "hasContrastWord",         "PositiveWordCount",
    "NegativeWordCount",       "TweetScore",
    "hasQuestionMark",         "hasExclamationMark",
    "hasPositiveEmoticon",     "hasNegativeEmoticon",
    "tweetLength",
};

inline const char* feature_name(FeatureId f) {
  return kFeatureNames[static_cast<int>(f)];
}

inline std::optional<FeatureId> feature_from_name(std::string_view name) {
  for (int i = 0; i < kFeatureCount; ++i)
    if (name == kFeatureNames[i]) return static_cast<FeatureId>(i);
  return std::nullopt;
}

inline bool is_numeric_feature(FeatureId f) {
  return f == FeatureId::PositiveWordCount ||
         f == FeatureId::NegativeWordCount || f == FeatureId::TweetScore ||
         f == FeatureId::TweetLength;
}

struct FeatureVector {
  std::array<double, kFeatureCount> values{};

  double operator[](FeatureId f) const { return values[static_cast<int>(f)]; }
  double& operator[](FeatureId f) { return values[static_cast<int>(f)]; }
};

struct FeatureMask {
  std::bitset<kFeatureCount> enabled;

  bool contains(FeatureId f) const { return enabled[static_cast<int>(f)]; }
  void add(FeatureId f) { enabled.set(static_cast<int>(f)); }
  void remove(FeatureId f) { enabled.reset(static_cast<int>(f)); }
  size_t count() const { return enabled.count(); }
  bool empty() const { return enabled.none(); }

  FeatureMask without(std::span<const FeatureId> features) const {
    FeatureMask m = *this;
    for (FeatureId f : features) m.remove(f);
    return m;
  }

  std::vector<FeatureId> features() const {
    std::vector<FeatureId> out;
    for (int i = 0; i < kFeatureCount; ++i)
      if (enabled[i]) out.push_back(static_cast<FeatureId>(i));
    return out;
  }

  bool operator==(const FeatureMask&) const = default;

  static FeatureMask all() {
    FeatureMask m;
    m.enabled.set();
    return m;
  }
};

struct FeatureError : std::runtime_error {
  enum class Kind { EmptyTrainingSet, MaskMismatch };
  Kind kind;
  FeatureError(Kind k, const std::string& msg)
      : std::runtime_error(msg), kind(k) {}
};

// Two-way drops hasModalWord and hasContrastWord (17 features), three-way
// drops only hasContrastWord (18), four-way keeps all 19.
inline FeatureMask mask_for_level(ClassificationLevel level) {
  FeatureMask m = FeatureMask::all();
  switch (level) {
    case ClassificationLevel::TwoWay:
      m.remove(FeatureId::HasModalWord);
      m.remove(FeatureId::HasContrastWord);
      break;
    case ClassificationLevel::ThreeWay:
      m.remove(FeatureId::HasContrastWord);
      break;
    case ClassificationLevel::FourWay:
      break;
  }
  return m;
}

// Lexicon lookups run over Word and Hashtag tokens; marker lists over Word
// tokens only; emoticon features over Emoticon tokens.
inline FeatureVector extract(const TokenizedTweet& t,
                             const LexiconBundle& bundle) {
  FeatureVector v;
  auto has_marker = [&](MarkerKind kind, const std::string& surface) {
    auto it = bundle.markers.find(kind);
    return it != bundle.markers.end() && it->second.terms.count(surface) > 0;
  };

  double tweet_score = 0.0;
  int pos_count = 0;
  int neg_count = 0;
  for (const Token& tok : t.tokens) {
    switch (tok.kind) {
      case TokenKind::Word:
      case TokenKind::Hashtag: {
        double s = score_of(bundle.scored, tok.surface);
        tweet_score += s;
        if (s > 0) {
          ++pos_count;
          v[FeatureId::HasPositiveWordAraSenti] = 1;
        } else if (s < 0) {
          ++neg_count;
          v[FeatureId::HasNegativeWordAraSenti] = 1;
        }
        if (bundle.polar_a.positive.count(tok.surface))
          v[FeatureId::HasPositiveWordMPQA] = 1;
        if (bundle.polar_a.negative.count(tok.surface))
          v[FeatureId::HasNegativeWordMPQA] = 1;
        if (bundle.polar_b.positive.count(tok.surface))
          v[FeatureId::HasPositiveWordLiu] = 1;
        if (bundle.polar_b.negative.count(tok.surface))
          v[FeatureId::HasNegativeWordLiu] = 1;
        if (tok.kind == TokenKind::Word) {
          if (has_marker(MarkerKind::Negation, tok.surface))
            v[FeatureId::HasNegation] = 1;
          if (has_marker(MarkerKind::Intensifier, tok.surface))
            v[FeatureId::HasIntensifier] = 1;
          if (has_marker(MarkerKind::Diminisher, tok.surface))
            v[FeatureId::HasDiminisher] = 1;
          if (has_marker(MarkerKind::Modal, tok.surface))
            v[FeatureId::HasModalWord] = 1;
          if (has_marker(MarkerKind::Contrast, tok.surface))
            v[FeatureId::HasContrastWord] = 1;
        }
        break;
      }
      case TokenKind::Emoticon:
        if (has_marker(MarkerKind::PositiveEmoticon, tok.surface))
          v[FeatureId::HasPositiveEmoticon] = 1;
        if (has_marker(MarkerKind::NegativeEmoticon, tok.surface))
          v[FeatureId::HasNegativeEmoticon] = 1;
        break;
      case TokenKind::QuestionMark:
        v[FeatureId::HasQuestionMark] = 1;
        break;
      case TokenKind::ExclamationMark:
        v[FeatureId::HasExclamationMark] = 1;
        break;
      case TokenKind::OtherPunct:
      case TokenKind::Mention:
      case TokenKind::Url:
        break;
    }
  }
  v[FeatureId::PositiveWordCount] = pos_count;
  v[FeatureId::NegativeWordCount] = neg_count;
  v[FeatureId::TweetScore] = tweet_score;
  v[FeatureId::TweetLength] = t.word_count;
  return v;
}

// Min-max bounds for enabled numeric features, fitted on the training set
// only. Constant features map to 0; test-set values are clamped to [0,1].
struct Scaler {
  struct Range {
    double min = 0;
    double max = 0;
  };
  FeatureMask mask;
  std::array<Range, kFeatureCount> ranges{};  // valid only for enabled numerics

  bool operator==(const Scaler&) const = default;
};

inline Scaler fit_scaler(std::span<const FeatureVector> train_vectors,
                         const FeatureMask& mask) {
  if (train_vectors.empty())
    throw FeatureError(FeatureError::Kind::EmptyTrainingSet,
                       "fit_scaler: empty training set");
  Scaler s;
  s.mask = mask;
  for (FeatureId f : mask.features()) {
    if (!is_numeric_feature(f)) continue;
    double lo = train_vectors[0][f];
    double hi = lo;
    for (const FeatureVector& v : train_vectors) {
      lo = std::min(lo, v[f]);
      hi = std::max(hi, v[f]);
    }
    s.ranges[static_cast<int>(f)] = {lo, hi};
  }
  return s;
}

inline std::vector<double> apply_scaler(const Scaler& s,
                                        const FeatureVector& v,
                                        const FeatureMask& mask) {
  if (s.mask != mask)
    throw FeatureError(FeatureError::Kind::MaskMismatch,
                       "apply_scaler: scaler fitted with a different mask");
  std::vector<double> out;
  out.reserve(mask.count());
  for (FeatureId f : mask.features()) {
    double x = v[f];
    if (is_numeric_feature(f)) {
      const auto& r = s.ranges[static_cast<int>(f)];
      if (r.max > r.min)
        x = std::clamp((x - r.min) / (r.max - r.min), 0.0, 1.0);
      else
        x = 0.0;
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace sentiment
