#pragma once

// Hand-derived 19-feature vectors for the test bundle in test_support.hpp.
// Each expected vector was worked out by hand from the feature definitions;
// order follows the canonical FeatureId indices:
//   0 hasPositiveWordAraSenti  1 hasNegativeWordAraSenti
//   2 hasPositiveWordMPQA      3 hasNegativeWordMPQA
//   4 hasPositiveWordLiu       5 hasNegativeWordLiu
//   6 hasNegation  7 hasIntensifier  8 hasDiminisher
//   9 hasModalWord 10 hasContrastWord
//  11 PositiveWordCount 12 NegativeWordCount 13 TweetScore
//  14 hasQuestionMark 15 hasExclamationMark
//  16 hasPositiveEmoticon 17 hasNegativeEmoticon 18 tweetLength

#include <array>
#include <vector>

namespace testsupport {

struct GoldenCase {
  const char* text;
  std::array<double, 19> expected;
};

// Bundle recap: scored {جميل 2, رائع 1.5, ممتاز 2.5, حلو 1, سعيد 2,
// سيء -2, قبيح -1.5, رديء -2.5, مزعج -1, حزين -2, لا -0.25};
// polar_a +{جيد جميل مفرح} -{سيء مقرف مخيف};
// polar_b +{ممتاز حلو لطيف} -{قبيح رديء ممل}.
inline const std::vector<GoldenCase>& golden_cases() {
  static const std::vector<GoldenCase> cases = {
      // empty input
      {"", {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}},
      // single scored words, each polarity
      {"جميل", {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 2.0, 0, 0, 0, 0, 1}},
      {"سيء", {0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, -2.0, 0, 0, 0, 0, 1}},
      {"ممتاز", {1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 2.5, 0, 0, 0, 0, 1}},
      {"قبيح", {0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, -1.5, 0, 0, 0, 0, 1}},
      // polar-lexicon-only words (no intensity score)
      {"جيد", {0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {"لطيف", {0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {"ممل", {0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {"مقرف", {0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      // negation particle that also carries a (negative) score
      {"لا", {0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, -0.25, 0, 0, 0, 0, 1}},
      {"لن", {0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      // valence-shifter markers
      {"جدا", {0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {"قليلا", {0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {"ربما", {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {"لكن", {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1}},
      {"يمكن بعض كثيرا",
       {0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 3}},
      // counts and summation
      {"جميل جميل سيء",
       {1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 2, 1, 2.0, 0, 0, 0, 0, 3}},
      {"رائع حلو", {1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 2, 0, 2.5, 0, 0, 0, 0, 2}},
      {"سعيد لكن حزين",
       {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0.0, 0, 0, 0, 0, 3}},
      {"ليس حلو", {1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1.0, 0, 0, 0, 0, 2}},
      {"غير جميل",
       {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 2.0, 0, 0, 0, 0, 2}},
      // emoticons and punctuation
      {"جميل :)", {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 2.0, 0, 0, 1, 0, 1}},
      {"سيء :(", {0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, -2.0, 0, 0, 0, 1, 1}},
      {"جيد :( ؟", {0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1}},
      {"جميل ! ؟", {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 2.0, 1, 1, 0, 0, 1}},
      {":) :(", {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0}},
      // hashtags participate in lexicon lookups but not marker lists
      {"#جميل", {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 2.0, 0, 0, 0, 0, 1}},
      {"#لا", {0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -0.25, 0, 0, 0, 0, 1}},
      // mentions and URLs never participate
      {"@جميل", {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}},
      {"http://x.co", {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}},
      // normalization feeding extraction
      {"أنا سعيد", {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 2.0, 0, 0, 0, 0, 2}},
      // elongated رائع collapses to راائع, which is out of vocabulary
      {"رااااائع", {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {"مدرسة", {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
  };
  return cases;
}

}  // namespace testsupport
