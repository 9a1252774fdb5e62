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

// Exact-match scoring of extracted pairs.
//
// Counts are micro-aggregated: true positives, predictions and gold pairs are
// summed over all records before dividing. Per record, both sides are
// normalized and deduplicated, and the attribute-only / value-only columns
// project each side to a set of strings before intersecting.

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "avegen/core.hpp"

namespace avegen {

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t tp = 0;
  std::size_t n_pred = 0;
  std::size_t n_gold = 0;

  friend bool operator==(const PRF&, const PRF&) = default;
};

struct MatchCounts {
  std::size_t tp = 0;
  std::size_t n_pred = 0;
  std::size_t n_gold = 0;

  MatchCounts& operator+=(const MatchCounts& o) noexcept {
    tp += o.tp;
    n_pred += o.n_pred;
    n_gold += o.n_gold;
    return *this;
  }
  friend bool operator==(const MatchCounts&, const MatchCounts&) = default;
};

enum class Field { Attribute, Value };

// Undefined precision or recall is reported as 0.
inline PRF prf(std::size_t tp, std::size_t n_pred, std::size_t n_gold) {
  if (tp > n_pred || tp > n_gold) {
    throw ValidationError("prf: tp=" + std::to_string(tp) +
                          " exceeds n_pred=" + std::to_string(n_pred) +
                          " or n_gold=" + std::to_string(n_gold));
  }
  PRF out;
  out.tp = tp;
  out.n_pred = n_pred;
  out.n_gold = n_gold;
  out.precision = n_pred == 0 ? 0.0 : static_cast<double>(tp) / n_pred;
  out.recall = n_gold == 0 ? 0.0 : static_cast<double>(tp) / n_gold;
  const double sum = out.precision + out.recall;
  out.f1 = sum > 0.0 ? 2.0 * out.precision * out.recall / sum : 0.0;
  return out;
}

inline PRF prf(const MatchCounts& c) { return prf(c.tp, c.n_pred, c.n_gold); }

namespace detail {

inline PairSet to_pair_set(std::span<const AVPair> pairs, CaseMode mode) {
  PairSet out;
  for (const auto& p : pairs) out.insert(normalize(p, mode));
  return out;
}

inline std::unordered_set<std::string> project(const PairSet& pairs,
                                               Field field) {
  std::unordered_set<std::string> out;
  for (const auto& p : pairs) {
    out.insert(field == Field::Attribute ? p.attribute : p.value);
  }
  return out;
}

template <typename Set>
std::size_t intersection_size(const Set& a, const Set& b) {
  const Set& small = a.size() <= b.size() ? a : b;
  const Set& large = a.size() <= b.size() ? b : a;
  return static_cast<std::size_t>(
      std::count_if(small.begin(), small.end(),
                    [&large](const auto& x) { return large.contains(x); }));
}

}  // namespace detail

// Pairs match when both attribute and value are equal after normalization.
inline std::size_t match_joint(std::span<const AVPair> gold,
                               std::span<const AVPair> pred,
                               CaseMode mode = CaseMode::Insensitive) {
  return detail::intersection_size(detail::to_pair_set(gold, mode),
                                   detail::to_pair_set(pred, mode));
}

inline MatchCounts match_projected(std::span<const AVPair> gold,
                                   std::span<const AVPair> pred, Field field,
                                   CaseMode mode = CaseMode::Insensitive) {
  const auto g = detail::project(detail::to_pair_set(gold, mode), field);
  const auto p = detail::project(detail::to_pair_set(pred, mode), field);
  return {detail::intersection_size(g, p), p.size(), g.size()};
}

struct RecordCounts {
  MatchCounts joint;
  MatchCounts attribute;
  MatchCounts value;
};

inline RecordCounts count_record(std::span<const AVPair> gold,
                                 std::span<const AVPair> pred,
                                 CaseMode mode = CaseMode::Insensitive) {
  const PairSet g = detail::to_pair_set(gold, mode);
  const PairSet p = detail::to_pair_set(pred, mode);
  RecordCounts c;
  c.joint = {detail::intersection_size(g, p), p.size(), g.size()};
  for (Field f : {Field::Attribute, Field::Value}) {
    const auto gp = detail::project(g, f);
    const auto pp = detail::project(p, f);
    MatchCounts m{detail::intersection_size(gp, pp), pp.size(), gp.size()};
    (f == Field::Attribute ? c.attribute : c.value) = m;
  }
  return c;
}

struct EvalReport {
  PRF joint;
  PRF attribute;
  PRF value;
  // Joint matching restricted to records of each gold cardinality.
  std::map<Cardinality, PRF> by_cardinality;
  std::size_t record_count = 0;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

struct EvalOptions {
  CaseMode case_mode = CaseMode::Insensitive;
  // Error when a gold record has no prediction entry instead of scoring it
  // as an empty prediction.
  bool strict_ids = false;
};

using Predictions = std::unordered_map<std::string, std::vector<AVPair>>;

inline EvalReport evaluate(std::span<const ProductRecord> gold,
                           const Predictions& predictions,
                           const EvalOptions& opts = {}) {
  std::unordered_set<std::string_view> gold_ids;
  for (const auto& rec : gold) {
    if (!gold_ids.insert(rec.id).second) {
      throw ValidationError("duplicate gold record id '" + rec.id + "'");
    }
  }
  std::vector<std::string> unknown;
  for (const auto& [id, pairs] : predictions) {
    if (!gold_ids.contains(id)) unknown.push_back(id);
  }
  if (!unknown.empty()) {
    std::sort(unknown.begin(), unknown.end());
    std::string msg = "predictions for unknown record ids:";
    for (const auto& id : unknown) msg += " " + id;
    throw ValidationError(msg);
  }

  static const std::vector<AVPair> kEmpty;
  MatchCounts joint, attribute, value;
  std::map<Cardinality, MatchCounts> by_card;
  for (const auto& rec : gold) {
    auto it = predictions.find(rec.id);
    if (it == predictions.end() && opts.strict_ids) {
      throw ValidationError("no prediction for gold record '" + rec.id + "'");
    }
    const auto& pred = it == predictions.end() ? kEmpty : it->second;
    const RecordCounts c = count_record(rec.pairs, pred, opts.case_mode);
    if (c.joint.n_gold == 0) {
      throw ValidationError("gold record '" + rec.id + "' has no pairs");
    }
    joint += c.joint;
    attribute += c.attribute;
    value += c.value;
    const Cardinality card =
        c.joint.n_gold == 1 ? Cardinality::Single : Cardinality::Multi;
    by_card[card] += c.joint;
  }

  EvalReport report;
  report.joint = prf(joint);
  report.attribute = prf(attribute);
  report.value = prf(value);
  for (Cardinality card : {Cardinality::Single, Cardinality::Multi}) {
    report.by_cardinality[card] = prf(by_card[card]);
  }
  report.record_count = gold.size();
  return report;
}

}  // namespace avegen
