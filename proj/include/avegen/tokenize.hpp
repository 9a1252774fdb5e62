// Copyright 2026 The avegen Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Tokenizations of a title with character offsets. Positional targets index
// into one of these, so every scheme has to satisfy the same contract: tokens
// are exact, non-overlapping, strictly increasing slices of the title.

#pragma once

#include <charconv>
#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avegen/core.hpp"

namespace avegen {

// Half-open byte range [begin, end) into the source title.
struct CharRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const CharRange&, const CharRange&) = default;
};

// 0-based token indices, end inclusive.
struct TokenSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

struct Tokenization {
  std::string title;
  std::string scheme;
  std::vector<std::string> tokens;
  std::vector<CharRange> offsets;

  std::size_t size() const noexcept { return tokens.size(); }
  bool contains(TokenSpan span) const noexcept {
    return span.start <= span.end && span.end < tokens.size();
  }
  CharRange char_range(TokenSpan span) const {
    return {offsets.at(span.start).begin, offsets.at(span.end).end};
  }
};

// Anything that turns a title into a Tokenization can back the positional
// paradigm.
template <typename T>
concept Tokenizer = requires(const T& t, std::string_view title) {
  { t(title) } -> std::same_as<Tokenization>;
};

// Throws ValidationError describing the first broken invariant.
inline void validate(const Tokenization& tok) {
  if (tok.tokens.size() != tok.offsets.size()) {
    throw ValidationError("tokenization: token and offset counts differ");
  }
  std::size_t prev_end = 0;
  for (std::size_t i = 0; i < tok.tokens.size(); ++i) {
    const CharRange r = tok.offsets[i];
    if (r.begin >= r.end || r.end > tok.title.size() ||
        (i > 0 && r.begin < prev_end)) {
      throw ValidationError("tokenization: bad offsets at token " +
                            std::to_string(i));
    }
    if (std::string_view(tok.title).substr(r.begin, r.end - r.begin) !=
        tok.tokens[i]) {
      throw ValidationError("tokenization: token " + std::to_string(i) +
                            " does not match its offsets");
    }
    prev_end = r.end;
  }
}

// Tokens are maximal runs of non-whitespace bytes; punctuation stays attached.
inline Tokenization whitespace_tokenize(std::string_view title) {
  Tokenization tok;
  tok.title = std::string(title);
  tok.scheme = "whitespace";
  std::size_t i = 0;
  while (i < title.size()) {
    while (i < title.size() && is_space(title[i])) ++i;
    if (i == title.size()) break;
    const std::size_t begin = i;
    while (i < title.size() && !is_space(title[i])) ++i;
    tok.tokens.emplace_back(title.substr(begin, i - begin));
    tok.offsets.push_back({begin, i});
  }
  if (tok.tokens.empty()) {
    throw ValidationError("cannot tokenize an empty or all-whitespace title");
  }
  return tok;
}

namespace detail {

inline bool is_utf8_continuation(char c) noexcept {
  return (static_cast<unsigned char>(c) & 0xC0) == 0x80;
}

}  // namespace detail

// Deterministic stand-in for a subword tokenizer: every whitespace token is
// cut into consecutive pieces of at most `max_piece_len` code points.
inline Tokenization mock_subword_tokenize(std::string_view title,
                                          std::size_t max_piece_len) {
  if (max_piece_len == 0) {
    throw ValidationError("mock-subword: max_piece_len must be >= 1");
  }
  const Tokenization words = whitespace_tokenize(title);
  Tokenization tok;
  tok.title = words.title;
  tok.scheme = "mock-subword:" + std::to_string(max_piece_len);
  for (const CharRange word : words.offsets) {
    std::size_t i = word.begin;
    while (i < word.end) {
      const std::size_t begin = i;
      std::size_t code_points = 0;
      while (i < word.end && code_points < max_piece_len) {
        ++i;
        while (i < word.end && detail::is_utf8_continuation(title[i])) ++i;
        ++code_points;
      }
      tok.tokens.emplace_back(title.substr(begin, i - begin));
      tok.offsets.push_back({begin, i});
    }
  }
  return tok;
}

// Scheme keys: "whitespace" or "mock-subword:<max_piece_len>".
class TokenizerScheme {
 public:
  TokenizerScheme() = default;

  static TokenizerScheme whitespace() { return {}; }
  static TokenizerScheme mock_subword(std::size_t max_piece_len) {
    if (max_piece_len == 0) {
      throw ValidationError("mock-subword: max_piece_len must be >= 1");
    }
    TokenizerScheme s;
    s.max_piece_len_ = max_piece_len;
    return s;
  }

  static TokenizerScheme parse(std::string_view key) {
    if (key == "whitespace") return whitespace();
    constexpr std::string_view kPrefix = "mock-subword:";
    if (key.substr(0, kPrefix.size()) == kPrefix) {
      const std::string_view digits = key.substr(kPrefix.size());
      std::size_t n = 0;
      auto [ptr, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), n);
      if (ec == std::errc() && ptr == digits.data() + digits.size() && n > 0) {
        return mock_subword(n);
      }
    }
    throw ValidationError("unknown tokenizer scheme '" + std::string(key) +
                          "' (expected whitespace or mock-subword:<n>)");
  }

  bool is_whitespace() const noexcept { return max_piece_len_ == 0; }

  std::string key() const {
    return is_whitespace() ? "whitespace"
                           : "mock-subword:" + std::to_string(max_piece_len_);
  }

  Tokenization operator()(std::string_view title) const {
    return is_whitespace() ? whitespace_tokenize(title)
                           : mock_subword_tokenize(title, max_piece_len_);
  }

  friend bool operator==(const TokenizerScheme&,
                         const TokenizerScheme&) = default;

 private:
  std::size_t max_piece_len_ = 0;  // 0 selects whitespace
};

static_assert(Tokenizer<TokenizerScheme>);

// Tokens start..end joined with one space wherever the title has a gap
// between consecutive tokens, and nothing where they are adjacent pieces.
inline std::string span_text(const Tokenization& tok, TokenSpan span) {
  std::string out;
  for (std::size_t i = span.start; i <= span.end; ++i) {
    if (i > span.start && tok.offsets[i].begin > tok.offsets[i - 1].end) {
      out.push_back(' ');
    }
    out += tok.tokens[i];
  }
  return out;
}

// Leftmost (then shortest) contiguous run whose text normalizes to the
// normalized value, either as-is or with edge punctuation stripped.
inline std::optional<TokenSpan> find_value_span(
    const Tokenization& tok, std::string_view value,
    CaseMode mode = CaseMode::Insensitive) {
  const std::string target = normalize(value, mode);
  if (target.empty()) return std::nullopt;
  const std::string_view title = tok.title;
  for (std::size_t start = 0; start < tok.size(); ++start) {
    for (std::size_t end = start; end < tok.size(); ++end) {
      const std::size_t begin = tok.offsets[start].begin;
      const std::string_view run =
          title.substr(begin, tok.offsets[end].end - begin);
      // Normalized runs only grow; once the raw run is far longer than the
      // target no longer run can match.
      if (normalize(strip_edge_punct(run), mode).size() > target.size() &&
          normalize(run, mode).size() > target.size()) {
        break;
      }
      if (normalize(run, mode) == target ||
          normalize(strip_edge_punct(run), mode) == target) {
        return TokenSpan{start, end};
      }
    }
  }
  return std::nullopt;
}

// Minimal span of `to` covering the characters of `span` in `from`.
inline std::optional<TokenSpan> remap_span(TokenSpan span,
                                           const Tokenization& from,
                                           const Tokenization& to) {
  if (from.title != to.title) {
    throw ValidationError("remap_span: tokenizations of different titles");
  }
  if (!from.contains(span)) {
    throw ValidationError("remap_span: span outside the source tokenization");
  }
  const CharRange chars = from.char_range(span);
  std::optional<std::size_t> first;
  std::size_t last = 0;
  for (std::size_t i = 0; i < to.size(); ++i) {
    const CharRange r = to.offsets[i];
    if (r.end <= chars.begin) continue;
    if (r.begin >= chars.end) break;
    if (!first) first = i;
    last = i;
  }
  if (!first) return std::nullopt;
  return TokenSpan{*first, last};
}

}  // namespace avegen
