#pragma once

// Arabic-aware normalization and tokenization. Lexicon terms must be run
// through the same normalize() so lookups agree with tweet text.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sentiment {

enum class TokenKind {
  Word,
  Emoticon,
  QuestionMark,
  ExclamationMark,
  OtherPunct,
  Mention,
  Url,
  Hashtag,
};

struct Token {
  std::string surface;
  TokenKind kind;

  bool operator==(const Token&) const = default;
};

struct TokenizedTweet {
  std::string tweet_id;
  std::vector<Token> tokens;
  // Word tokens plus hashtag bodies; feeds the tweetLength feature.
  int word_count = 0;
};

namespace utf8 {

// Lenient decoder: invalid sequences become U+FFFD, one per bad byte.
inline std::vector<char32_t> decode(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    char32_t cp = 0;
    int extra = 0;
    if (c < 0x80) {
      cp = c;
    } else if ((c & 0xE0) == 0xC0) {
      cp = c & 0x1F;
      extra = 1;
    } else if ((c & 0xF0) == 0xE0) {
      cp = c & 0x0F;
      extra = 2;
    } else if ((c & 0xF8) == 0xF0) {
      cp = c & 0x07;
      extra = 3;
    } else {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    if (i + extra >= s.size()) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    bool ok = true;
    for (int k = 1; k <= extra; ++k) {
      unsigned char cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!ok) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

inline void append(std::string& s, char32_t cp) {
  if (cp < 0x80) {
    s.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    s.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    s.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    s.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    s.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    s.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    s.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode(const std::vector<char32_t>& cps) {
  std::string s;
  s.reserve(cps.size());
  for (char32_t cp : cps) append(s, cp);
  return s;
}

}  // namespace utf8

namespace detail {

inline bool is_space_cp(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
         cp == 0x00A0;
}

inline bool is_zero_width(char32_t cp) {
  return (cp >= 0x200B && cp <= 0x200F) || cp == 0xFEFF || cp == 0x061C;
}

inline bool is_arabic_diacritic(char32_t cp) {
  return cp >= 0x064B && cp <= 0x0652;
}

// Arabic punctuation that must never be folded into a Word token.
inline bool is_arabic_punct(char32_t cp) {
  return cp == 0x060C || cp == 0x061B || cp == 0x061F || cp == 0x066D ||
         cp == 0x06D4;
}

inline bool is_word_cp(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= U'0' && cp <= U'9') || (cp >= U'A' && cp <= U'Z') ||
           (cp >= U'a' && cp <= U'z') || cp == U'_';
  }
  if (is_space_cp(cp) || is_zero_width(cp) || is_arabic_punct(cp)) return false;
  if (cp >= 0x2000 && cp <= 0x206F) return false;  // general punctuation
  if (cp == 0xFFFD) return false;
  return true;
}

}  // namespace detail

// Normalization pipeline, applied in order:
//   1. drop Arabic diacritics (U+064B..U+0652) and tatweel (U+0640)
//   2. alef variants (U+0622, U+0623, U+0625) -> bare alef (U+0627)
//   3. alef maqsura (U+0649) -> yeh (U+064A)
//   4. teh marbuta (U+0629) -> heh (U+0647)
//   5. collapse runs of the same codepoint longer than 2 down to 2
//   6. collapse whitespace runs to single spaces, trim ends
inline std::string normalize(std::string_view raw) {
  std::vector<char32_t> cps = utf8::decode(raw);
  std::vector<char32_t> mapped;
  mapped.reserve(cps.size());
  for (char32_t cp : cps) {
    if (detail::is_arabic_diacritic(cp) || cp == 0x0640) continue;
    if (cp == 0x0622 || cp == 0x0623 || cp == 0x0625) cp = 0x0627;
    else if (cp == 0x0649) cp = 0x064A;
    else if (cp == 0x0629) cp = 0x0647;
    mapped.push_back(cp);
  }

  std::vector<char32_t> out;
  out.reserve(mapped.size());
  int run = 0;
  char32_t prev = 0;
  bool pending_space = false;
  for (char32_t cp : mapped) {
    if (detail::is_space_cp(cp)) {
      if (!out.empty()) pending_space = true;
      run = 0;
      prev = 0;
      continue;
    }
    if (pending_space) {
      out.push_back(U' ');
      pending_space = false;
    }
    if (cp == prev) {
      if (++run >= 2) continue;
    } else {
      prev = cp;
      run = 0;
    }
    out.push_back(cp);
  }
  return utf8::encode(out);
}

// Tokenizer over already-normalized text. Emoticons are matched first
// (longest match over the supplied lists, verbatim byte comparison), then
// mentions, URLs, hashtags, question/exclamation marks, other punctuation,
// and maximal word-character runs.
inline TokenizedTweet tokenize(std::string_view normalized,
                               const std::vector<std::string>& emoticons,
                               std::string tweet_id = {}) {
  TokenizedTweet tt;
  tt.tweet_id = std::move(tweet_id);

  std::vector<char32_t> cps = utf8::decode(normalized);
  // Byte offset of each codepoint, for emoticon prefix matching.
  std::vector<size_t> offs;
  offs.reserve(cps.size() + 1);
  {
    std::string tmp;
    for (char32_t cp : cps) {
      offs.push_back(tmp.size());
      utf8::append(tmp, cp);
    }
    offs.push_back(tmp.size());
  }

  auto starts_with = [&](size_t i, std::string_view prefix) {
    return normalized.substr(offs[i]).substr(0, prefix.size()) == prefix;
  };

  size_t i = 0;
  const size_t n = cps.size();
  while (i < n) {
    char32_t cp = cps[i];
    if (detail::is_space_cp(cp) || detail::is_zero_width(cp)) {
      ++i;
      continue;
    }

    // Longest emoticon match at this position.
    size_t best = 0;
    for (const std::string& e : emoticons) {
      if (e.size() > best && starts_with(i, e)) best = e.size();
    }
    if (best > 0) {
      tt.tokens.push_back({std::string(normalized.substr(offs[i], best)),
                           TokenKind::Emoticon});
      size_t end = offs[i] + best;
      while (i < n && offs[i] < end) ++i;
      continue;
    }

    if (starts_with(i, "http://") || starts_with(i, "https://") ||
        starts_with(i, "www.")) {
      size_t j = i;
      while (j < n && !detail::is_space_cp(cps[j])) ++j;
      tt.tokens.push_back(
          {std::string(normalized.substr(offs[i], offs[j] - offs[i])),
           TokenKind::Url});
      i = j;
      continue;
    }

    if (cp == U'@' && i + 1 < n && detail::is_word_cp(cps[i + 1])) {
      size_t j = i + 1;
      while (j < n && detail::is_word_cp(cps[j])) ++j;
      tt.tokens.push_back(
          {std::string(normalized.substr(offs[i], offs[j] - offs[i])),
           TokenKind::Mention});
      i = j;
      continue;
    }

    if (cp == U'#' && i + 1 < n && detail::is_word_cp(cps[i + 1])) {
      size_t j = i + 1;
      while (j < n && detail::is_word_cp(cps[j])) ++j;
      tt.tokens.push_back(
          {std::string(normalized.substr(offs[i + 1], offs[j] - offs[i + 1])),
           TokenKind::Hashtag});
      i = j;
      continue;
    }

    if (cp == U'?' || cp == 0x061F) {
      tt.tokens.push_back({std::string(normalized.substr(
                               offs[i], offs[i + 1] - offs[i])),
                           TokenKind::QuestionMark});
      ++i;
      continue;
    }
    if (cp == U'!') {
      tt.tokens.push_back({"!", TokenKind::ExclamationMark});
      ++i;
      continue;
    }

    if (detail::is_word_cp(cp)) {
      size_t j = i;
      while (j < n && detail::is_word_cp(cps[j])) ++j;
      tt.tokens.push_back(
          {std::string(normalized.substr(offs[i], offs[j] - offs[i])),
           TokenKind::Word});
      i = j;
      continue;
    }

    tt.tokens.push_back(
        {std::string(normalized.substr(offs[i], offs[i + 1] - offs[i])),
         TokenKind::OtherPunct});
    ++i;
  }

  for (const Token& t : tt.tokens) {
    if (t.kind == TokenKind::Word || t.kind == TokenKind::Hashtag)
      ++tt.word_count;
  }
  return tt;
}

}  // namespace sentiment
