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

// Target serialization for both generation paradigms.
//
//   word:        "<value> ; <attribute> | <value> ; <attribute> ..."
//   positional:  "<start> <end> <attribute> | ..."
//
// Positions are 0-based inclusive token indices under the selected scheme.
// Value spans are always located on the whitespace tokenization and then
// remapped, so every scheme agrees on which words a value covers.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "avegen/core.hpp"
#include "avegen/random.hpp"
#include "avegen/tokenize.hpp"

namespace avegen {

enum class OnUnfindable { Skip, Error };

enum class PairOrder { TitleOrder, InputOrder };

struct EncodeOptions {
  Paradigm paradigm = Paradigm::WordSequence;
  TokenizerScheme tokenizer = TokenizerScheme::whitespace();
  OnUnfindable on_unfindable = OnUnfindable::Skip;
  PairOrder pair_order = PairOrder::TitleOrder;
  CaseMode case_mode = CaseMode::Insensitive;
};

struct EncodedTarget {
  std::string target;
  // Pairs left out because their value has no span in the title.
  std::vector<AVPair> skipped;
};

inline constexpr std::string_view kRenderedPairSeparator = " | ";
inline constexpr std::string_view kRenderedFieldSeparator = " ; ";

namespace detail {

struct LocatedPair {
  const AVPair* pair;
  std::optional<TokenSpan> span;  // on the whitespace tokenization
};

inline std::vector<LocatedPair> locate_pairs(const ProductRecord& record,
                                             const Tokenization& words,
                                             const EncodeOptions& opts) {
  std::vector<LocatedPair> located;
  located.reserve(record.pairs.size());
  for (const auto& pair : record.pairs) {
    located.push_back(
        {&pair, find_value_span(words, pair.value, opts.case_mode)});
  }
  if (opts.pair_order == PairOrder::TitleOrder) {
    // Unfindable values sort last, in input order.
    std::stable_sort(located.begin(), located.end(),
                     [](const LocatedPair& a, const LocatedPair& b) {
                       if (!a.span || !b.span) return a.span && !b.span;
                       return a.span->start < b.span->start;
                     });
  }
  return located;
}

inline void require_pairs(const ProductRecord& record) {
  if (record.pairs.empty()) {
    throw ValidationError("record '" + record.id + "' has no pairs to encode");
  }
}

}  // namespace detail

// One emitted pair; `span` is set (on the selected scheme) for positional
// targets only.
struct TargetSegment {
  AVPair pair;
  std::optional<TokenSpan> span;
};

struct TargetPlan {
  Paradigm paradigm = Paradigm::WordSequence;
  std::vector<TargetSegment> segments;
  std::vector<AVPair> skipped;
  std::size_t n_tokens = 0;  // size of the scheme tokenization
};

// Orders the pairs and locates their spans; render_target turns the result
// into text.
inline TargetPlan plan_target(const ProductRecord& record,
                              const EncodeOptions& opts) {
  detail::require_pairs(record);
  const Tokenization words = whitespace_tokenize(record.title);
  const auto located = detail::locate_pairs(record, words, opts);

  TargetPlan plan;
  plan.paradigm = opts.paradigm;
  plan.n_tokens = words.size();
  if (opts.paradigm == Paradigm::WordSequence) {
    for (const auto& lp : located) plan.segments.push_back({*lp.pair, {}});
    return plan;
  }

  std::optional<Tokenization> scheme_tok;
  if (!opts.tokenizer.is_whitespace()) {
    scheme_tok = opts.tokenizer(record.title);
    plan.n_tokens = scheme_tok->size();
  }
  for (const auto& lp : located) {
    std::optional<TokenSpan> span = lp.span;
    if (span && scheme_tok) span = remap_span(*span, words, *scheme_tok);
    if (!span) {
      if (opts.on_unfindable == OnUnfindable::Error) {
        throw ValidationError("record '" + record.id + "': value '" +
                              lp.pair->value + "' of attribute '" +
                              lp.pair->attribute + "' is not in the title");
      }
      plan.skipped.push_back(*lp.pair);
      continue;
    }
    plan.segments.push_back({*lp.pair, span});
  }
  if (plan.segments.empty()) {
    throw ValidationError("record '" + record.id +
                          "': no value could be located in the title");
  }
  return plan;
}

inline std::string render_segment(const TargetSegment& seg, Paradigm paradigm) {
  if (paradigm == Paradigm::WordSequence) {
    return seg.pair.value + std::string(kRenderedFieldSeparator) +
           seg.pair.attribute;
  }
  return std::to_string(seg.span->start) + ' ' + std::to_string(seg.span->end) +
         ' ' + seg.pair.attribute;
}

inline std::string render_target(std::span<const TargetSegment> segments,
                                 Paradigm paradigm) {
  std::string out;
  for (const auto& seg : segments) {
    if (!out.empty()) out += kRenderedPairSeparator;
    out += render_segment(seg, paradigm);
  }
  return out;
}

inline EncodedTarget encode(const ProductRecord& record,
                            const EncodeOptions& opts) {
  TargetPlan plan = plan_target(record, opts);
  return {render_target(plan.segments, plan.paradigm), std::move(plan.skipped)};
}

inline std::string encode_word_sequence(const ProductRecord& record,
                                        EncodeOptions opts) {
  opts.paradigm = Paradigm::WordSequence;
  return encode(record, opts).target;
}

inline std::string encode_positional_sequence(const ProductRecord& record,
                                              EncodeOptions opts) {
  opts.paradigm = Paradigm::PositionalSequence;
  return encode(record, opts).target;
}

// Same pairs in a seed-determined order. Note that a TitleOrder encode of the
// result sorts them back; shuffled targets need PairOrder::InputOrder.
inline ProductRecord shuffle_pairs(ProductRecord record, std::uint64_t seed) {
  Rng rng = stream_for(seed, 0);
  shuffle(std::span<AVPair>(record.pairs), rng);
  return record;
}

}  // namespace avegen
