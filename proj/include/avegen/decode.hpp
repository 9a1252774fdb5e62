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

// Parsing of generated text back into attribute-value pairs.
//
// Every function here is total: malformed input never throws, it turns into
// discard records. For any input the "|"-separated segments are accounted
// for exactly once:
//
//   pairs.size() + discarded.size() + duplicates_removed == segment count

#pragma once

#include <charconv>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "avegen/core.hpp"
#include "avegen/tokenize.hpp"

namespace avegen {

enum class DiscardReason {
  MissingSeparator,  // word segment without ';'
  MissingField,      // positional segment with fewer than three fields
  NonIntegerIndex,
  InvertedSpan,
  OutOfRange,
  EmptyField,
};

inline std::string_view to_string(DiscardReason r) noexcept {
  switch (r) {
    case DiscardReason::MissingSeparator: return "MissingSeparator";
    case DiscardReason::MissingField: return "MissingField";
    case DiscardReason::NonIntegerIndex: return "NonIntegerIndex";
    case DiscardReason::InvertedSpan: return "InvertedSpan";
    case DiscardReason::OutOfRange: return "OutOfRange";
    case DiscardReason::EmptyField: return "EmptyField";
  }
  return "Unknown";
}

struct Discard {
  std::string segment;
  DiscardReason reason;

  friend bool operator==(const Discard&, const Discard&) = default;
};

// Raw indices as generated; ordering and bounds are checked on resolution.
struct PositionalTriple {
  TokenSpan span;
  std::string attribute;
  std::string segment;

  friend bool operator==(const PositionalTriple&,
                         const PositionalTriple&) = default;
};

struct PositionalParse {
  std::vector<PositionalTriple> triples;
  std::vector<Discard> discarded;
};

struct DecodeReport {
  std::vector<AVPair> pairs;
  std::vector<Discard> discarded;
  std::size_t duplicates_removed = 0;
};

inline std::vector<std::string_view> split_segments(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  for (;;) {
    const std::size_t bar = text.find(kPairSeparator, begin);
    if (bar == std::string_view::npos) {
      out.push_back(text.substr(begin));
      return out;
    }
    out.push_back(text.substr(begin, bar - begin));
    begin = bar + 1;
  }
}

namespace detail {

class PairCollector {
 public:
  PairCollector(DecodeReport& report, CaseMode mode)
      : report_(report), mode_(mode) {}

  void add(std::string_view attribute, std::string_view value) {
    AVPair pair{normalize(attribute, mode_), normalize(value, mode_)};
    if (seen_.insert(pair).second) {
      report_.pairs.push_back(std::move(pair));
    } else {
      ++report_.duplicates_removed;
    }
  }

 private:
  DecodeReport& report_;
  CaseMode mode_;
  PairSet seen_;
};

// Non-negative decimal; values past size_t saturate (and land OutOfRange).
inline bool parse_index(std::string_view text, std::size_t& out) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec == std::errc::result_out_of_range) {
    out = std::numeric_limits<std::size_t>::max();
    return true;
  }
  return ec == std::errc() && ptr == text.data() + text.size();
}

inline std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t begin = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > begin) out.push_back(text.substr(begin, i - begin));
  }
  return out;
}

}  // namespace detail

// Each segment splits at its first ';' into value (left) and attribute
// (right); any later ';' stays in the attribute.
inline DecodeReport parse_word_sequence(std::string_view text,
                                        CaseMode mode = CaseMode::Insensitive) {
  DecodeReport report;
  detail::PairCollector collect(report, mode);
  for (std::string_view segment : split_segments(text)) {
    const std::size_t semi = segment.find(kFieldSeparator);
    if (trim(segment).empty()) {
      report.discarded.push_back({std::string(segment), DiscardReason::EmptyField});
      continue;
    }
    if (semi == std::string_view::npos) {
      report.discarded.push_back(
          {std::string(segment), DiscardReason::MissingSeparator});
      continue;
    }
    const std::string_view value = trim(segment.substr(0, semi));
    const std::string_view attribute = trim(segment.substr(semi + 1));
    if (value.empty() || attribute.empty()) {
      report.discarded.push_back({std::string(segment), DiscardReason::EmptyField});
      continue;
    }
    collect.add(attribute, value);
  }
  return report;
}

// Each segment must be "<start> <end> <attribute words...>".
inline PositionalParse parse_positional_sequence(std::string_view text) {
  PositionalParse out;
  for (std::string_view segment : split_segments(text)) {
    const auto fields = detail::split_whitespace(segment);
    if (fields.empty()) {
      out.discarded.push_back({std::string(segment), DiscardReason::EmptyField});
      continue;
    }
    if (fields.size() < 3) {
      out.discarded.push_back({std::string(segment), DiscardReason::MissingField});
      continue;
    }
    TokenSpan span;
    if (!detail::parse_index(fields[0], span.start) ||
        !detail::parse_index(fields[1], span.end)) {
      out.discarded.push_back(
          {std::string(segment), DiscardReason::NonIntegerIndex});
      continue;
    }
    std::string attribute(fields[2]);
    for (std::size_t i = 3; i < fields.size(); ++i) {
      attribute.push_back(' ');
      attribute.append(fields[i]);
    }
    out.triples.push_back({span, std::move(attribute), std::string(segment)});
  }
  return out;
}

// Turns triples into pairs by reading the value off the title. The value is
// the covered token text with edge punctuation stripped (unless that would
// leave nothing), matching how find_value_span locates values.
inline DecodeReport resolve_spans(const std::vector<PositionalTriple>& triples,
                                  const Tokenization& tok,
                                  CaseMode mode = CaseMode::Insensitive) {
  DecodeReport report;
  detail::PairCollector collect(report, mode);
  for (const auto& t : triples) {
    if (t.span.start > t.span.end) {
      report.discarded.push_back({t.segment, DiscardReason::InvertedSpan});
      continue;
    }
    if (t.span.end >= tok.size()) {
      report.discarded.push_back({t.segment, DiscardReason::OutOfRange});
      continue;
    }
    const std::string text = span_text(tok, t.span);
    std::string_view value = strip_edge_punct(text);
    if (value.empty()) value = text;
    collect.add(t.attribute, value);
  }
  return report;
}

// Dispatch on paradigm. `title` is only consulted for positional decoding;
// an empty or blank title there makes every triple OutOfRange.
inline DecodeReport decode(std::string_view text, Paradigm paradigm,
                           std::string_view title = {},
                           const TokenizerScheme& scheme = {},
                           CaseMode mode = CaseMode::Insensitive) {
  if (paradigm == Paradigm::WordSequence) return parse_word_sequence(text, mode);

  PositionalParse parsed = parse_positional_sequence(text);
  Tokenization tok;
  if (!trim(title).empty()) tok = scheme(title);
  DecodeReport report = resolve_spans(parsed.triples, tok, mode);
  report.discarded.insert(report.discarded.begin(),
                          std::make_move_iterator(parsed.discarded.begin()),
                          std::make_move_iterator(parsed.discarded.end()));
  return report;
}

}  // namespace avegen
