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

// Domain types shared by every stage of the extraction pipeline: attribute
// value pairs, product records, and the text normalization that defines what
// "exact match" means for evaluation.

#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace avegen {

// Input that violates a contract (bad record, bad flag value, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure to open, read or write a file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CaseMode { Insensitive, Sensitive };

enum class Paradigm { WordSequence, PositionalSequence };

enum class Cardinality { Single, Multi };

// Separators reserved by both target formats.
inline constexpr char kPairSeparator = '|';
inline constexpr char kFieldSeparator = ';';

struct AVPair {
  std::string attribute;
  std::string value;

  friend bool operator==(const AVPair&, const AVPair&) = default;
  friend auto operator<=>(const AVPair&, const AVPair&) = default;
};

struct ProductRecord {
  std::string id;
  std::string title;
  std::vector<AVPair> pairs;

  friend bool operator==(const ProductRecord&, const ProductRecord&) = default;
};

inline constexpr bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline constexpr bool is_ascii_punct(char c) noexcept {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
         (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}

inline constexpr char ascii_lower(char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string_view trim(std::string_view text) noexcept {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && is_space(text[begin])) ++begin;
  while (end > begin && is_space(text[end - 1])) --end;
  return text.substr(begin, end - begin);
}

// Trims, collapses internal whitespace runs to one space, and (unless
// case-sensitive) lowercases ASCII letters. Bytes >= 0x80 pass through.
inline std::string normalize(std::string_view text,
                             CaseMode mode = CaseMode::Insensitive) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : trim(text)) {
    if (is_space(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(mode == CaseMode::Insensitive ? ascii_lower(c) : c);
  }
  return out;
}

inline AVPair normalize(const AVPair& pair,
                        CaseMode mode = CaseMode::Insensitive) {
  return {normalize(pair.attribute, mode), normalize(pair.value, mode)};
}

// Strips leading and trailing ASCII punctuation ("white," -> "white").
inline std::string_view strip_edge_punct(std::string_view text) noexcept {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && is_ascii_punct(text[begin])) ++begin;
  while (end > begin && is_ascii_punct(text[end - 1])) --end;
  return text.substr(begin, end - begin);
}

inline bool has_reserved_separator(std::string_view text) noexcept {
  return text.find(kPairSeparator) != std::string_view::npos ||
         text.find(kFieldSeparator) != std::string_view::npos;
}

namespace detail {

struct PairHash {
  std::size_t operator()(const AVPair& p) const noexcept {
    std::size_t h = std::hash<std::string>{}(p.attribute);
    return h ^ (std::hash<std::string>{}(p.value) + 0x9e3779b97f4a7c15ULL +
                (h << 6) + (h >> 2));
  }
};

}  // namespace detail

using PairSet = std::unordered_set<AVPair, detail::PairHash>;

// Normalizes every pair and keeps the first occurrence of each, preserving
// relative order.
inline std::vector<AVPair> dedup_pairs(const std::vector<AVPair>& pairs,
                                       CaseMode mode = CaseMode::Insensitive) {
  std::vector<AVPair> out;
  PairSet seen;
  for (const auto& pair : pairs) {
    AVPair n = normalize(pair, mode);
    if (seen.insert(n).second) out.push_back(std::move(n));
  }
  return out;
}

inline Cardinality cardinality(const ProductRecord& record) {
  if (record.pairs.empty()) {
    throw ValidationError("record '" + record.id +
                          "' has no pairs and therefore no cardinality");
  }
  return record.pairs.size() == 1 ? Cardinality::Single : Cardinality::Multi;
}

inline std::string_view to_string(Cardinality c) noexcept {
  return c == Cardinality::Single ? "single" : "multi";
}

inline std::string_view to_string(Paradigm p) noexcept {
  return p == Paradigm::WordSequence ? "word" : "positional";
}

inline Paradigm parse_paradigm(std::string_view key) {
  if (key == "word") return Paradigm::WordSequence;
  if (key == "positional") return Paradigm::PositionalSequence;
  throw ValidationError("unknown paradigm '" + std::string(key) +
                        "' (expected word or positional)");
}

inline std::string synthesize_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06zu", index);
  return buf;
}

// Collapses whitespace without touching case; this is the stored form of
// titles, attributes and values.
inline std::string canonical_text(std::string_view text) {
  return normalize(text, CaseMode::Sensitive);
}

struct IngestResult {
  ProductRecord record;
  std::vector<std::string> warnings;
};

// Validates a record read from outside: trims fields, drops pairs that are
// empty or contain a reserved separator, drops duplicate pairs (keeping the
// first spelling), and synthesizes a missing id from `index`.
inline IngestResult ingest_record(ProductRecord raw, std::size_t index,
                                  CaseMode mode = CaseMode::Insensitive) {
  IngestResult result;
  ProductRecord& rec = result.record;
  rec.id = raw.id.empty() ? synthesize_id(index) : std::move(raw.id);
  rec.title = std::string(trim(raw.title));
  if (rec.title.empty()) {
    throw ValidationError("record '" + rec.id + "' has an empty title");
  }
  PairSet seen;
  for (auto& pair : raw.pairs) {
    AVPair clean{canonical_text(pair.attribute), canonical_text(pair.value)};
    if (clean.attribute.empty() || clean.value.empty()) {
      result.warnings.push_back("record '" + rec.id +
                                "': dropped pair with an empty field");
      continue;
    }
    if (has_reserved_separator(clean.attribute) ||
        has_reserved_separator(clean.value)) {
      result.warnings.push_back("record '" + rec.id + "': dropped pair (" +
                                clean.attribute + ", " + clean.value +
                                ") containing '|' or ';'");
      continue;
    }
    if (!seen.insert(normalize(clean, mode)).second) continue;
    rec.pairs.push_back(std::move(clean));
  }
  return result;
}

}  // namespace avegen
