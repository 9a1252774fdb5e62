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

// Dataset derivation from raw (title, attribute, value) tuples, seeded
// train/valid/test splits, and corpus statistics.
//
// derive() runs these stages in order, counting what each one removes:
//   0. drop malformed tuples (empty field, reserved '|' or ';')
//   1. drop tuples whose value is a null marker or a dropped literal
//   2. optionally drop tuples whose value has no span in the title
//   3. drop attributes outside [min_attr_freq, max_attr_freq], with
//      frequencies counted on the tuples that survived stages 0-2
//   4. group by exact title, merging duplicate pairs
//   5. drop records left without pairs

#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "avegen/core.hpp"
#include "avegen/io.hpp"
#include "avegen/random.hpp"
#include "avegen/tokenize.hpp"

namespace avegen {

struct RawTuple {
  std::string title;
  std::string attribute;
  std::string value;
};

struct PipelineConfig {
  std::size_t min_attr_freq = 1;
  std::optional<std::size_t> max_attr_freq;
  std::set<std::string> drop_value_literals;
  bool require_value_in_title = false;
  std::set<std::string> null_markers;
  CaseMode case_mode = CaseMode::Insensitive;

  void validate() const {
    if (min_attr_freq < 1) {
      throw ValidationError("min_attr_freq must be >= 1");
    }
    if (max_attr_freq && *max_attr_freq <= min_attr_freq) {
      throw ValidationError("max_attr_freq must exceed min_attr_freq");
    }
  }
};

// AliExpress-derived corpus: NULL values removed, attributes seen >= 60 times.
inline PipelineConfig av_data_v1_preset() {
  PipelineConfig c;
  c.min_attr_freq = 60;
  c.null_markers = {"NULL"};
  c.require_value_in_title = false;
  return c;
}

// MAE-derived corpus: yes/no/na values removed, values must appear in the
// title, attributes seen >= 700 times.
inline PipelineConfig av_mae_preset() {
  PipelineConfig c;
  c.min_attr_freq = 700;
  c.drop_value_literals = {"yes", "no", "na"};
  c.require_value_in_title = true;
  return c;
}

inline PipelineConfig preset(std::string_view name) {
  if (name == "av-data-v1") return av_data_v1_preset();
  if (name == "av-mae") return av_mae_preset();
  throw ValidationError("unknown preset '" + std::string(name) +
                        "' (expected av-data-v1 or av-mae)");
}

// Reads the PipelineConfig fields present in `obj` on top of `base`.
inline PipelineConfig config_from_json(const json& obj,
                                       PipelineConfig base = {}) {
  try {
    if (obj.contains("min_attr_freq")) {
      base.min_attr_freq = obj.at("min_attr_freq").get<std::size_t>();
    }
    if (obj.contains("max_attr_freq")) {
      const auto& v = obj.at("max_attr_freq");
      base.max_attr_freq =
          v.is_null() ? std::nullopt
                      : std::optional<std::size_t>(v.get<std::size_t>());
    }
    if (obj.contains("drop_value_literals")) {
      base.drop_value_literals =
          obj.at("drop_value_literals").get<std::set<std::string>>();
    }
    if (obj.contains("require_value_in_title")) {
      base.require_value_in_title = obj.at("require_value_in_title").get<bool>();
    }
    if (obj.contains("null_markers")) {
      base.null_markers = obj.at("null_markers").get<std::set<std::string>>();
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("pipeline config: ") + e.what());
  }
  base.validate();
  return base;
}

inline json config_to_json(const PipelineConfig& c) {
  return {{"min_attr_freq", c.min_attr_freq},
          {"max_attr_freq", c.max_attr_freq ? json(*c.max_attr_freq) : json()},
          {"drop_value_literals", c.drop_value_literals},
          {"require_value_in_title", c.require_value_in_title},
          {"null_markers", c.null_markers}};
}

struct Attrition {
  std::size_t tuples_in = 0;
  std::size_t dropped_malformed = 0;
  std::size_t dropped_null_or_literal = 0;
  std::size_t dropped_value_not_in_title = 0;
  std::size_t dropped_attr_frequency = 0;
  std::size_t tuples_kept = 0;
  std::size_t duplicate_pairs_merged = 0;
  std::size_t records_dropped_empty = 0;
  std::size_t records_out = 0;
  // Normalized attribute -> frequency after stage 2, split by verdict.
  std::map<std::string, std::size_t> attributes_kept;
  std::map<std::string, std::size_t> attributes_dropped;

  friend bool operator==(const Attrition&, const Attrition&) = default;
};

inline json attrition_to_json(const Attrition& a) {
  return {{"tuples_in", a.tuples_in},
          {"dropped_malformed", a.dropped_malformed},
          {"dropped_null_or_literal", a.dropped_null_or_literal},
          {"dropped_value_not_in_title", a.dropped_value_not_in_title},
          {"dropped_attr_frequency", a.dropped_attr_frequency},
          {"tuples_kept", a.tuples_kept},
          {"duplicate_pairs_merged", a.duplicate_pairs_merged},
          {"records_dropped_empty", a.records_dropped_empty},
          {"records_out", a.records_out},
          {"attributes_kept", a.attributes_kept},
          {"attributes_dropped", a.attributes_dropped}};
}

struct DeriveResult {
  std::vector<ProductRecord> records;
  Attrition attrition;
};

inline DeriveResult derive(std::span<const RawTuple> raw,
                           const PipelineConfig& config) {
  config.validate();
  if (raw.empty()) throw ValidationError("derive: no input tuples");
  const CaseMode mode = config.case_mode;

  std::set<std::string> dropped_values;
  for (const auto& v : config.null_markers) dropped_values.insert(normalize(v, mode));
  for (const auto& v : config.drop_value_literals) {
    dropped_values.insert(normalize(v, mode));
  }

  DeriveResult result;
  Attrition& att = result.attrition;
  att.tuples_in = raw.size();

  struct Clean {
    const RawTuple* raw;
    AVPair pair;  // canonical spelling
    std::string key;  // normalized attribute
  };
  std::vector<Clean> kept;
  for (const auto& t : raw) {
    AVPair pair{canonical_text(t.attribute), canonical_text(t.value)};
    if (trim(t.title).empty() || pair.attribute.empty() || pair.value.empty() ||
        has_reserved_separator(pair.attribute) ||
        has_reserved_separator(pair.value)) {
      ++att.dropped_malformed;
      continue;
    }
    if (dropped_values.contains(normalize(pair.value, mode))) {
      ++att.dropped_null_or_literal;
      continue;
    }
    if (config.require_value_in_title &&
        !find_value_span(whitespace_tokenize(t.title), pair.value, mode)) {
      ++att.dropped_value_not_in_title;
      continue;
    }
    std::string key = normalize(pair.attribute, mode);
    kept.push_back({&t, std::move(pair), std::move(key)});
  }

  std::map<std::string, std::size_t> freq;
  for (const auto& c : kept) ++freq[c.key];
  for (const auto& [attr, n] : freq) {
    const bool ok = n >= config.min_attr_freq &&
                    (!config.max_attr_freq || n <= *config.max_attr_freq);
    (ok ? att.attributes_kept : att.attributes_dropped)[attr] = n;
  }

  std::unordered_map<std::string, std::size_t> record_of_title;
  std::vector<PairSet> seen;
  for (auto& c : kept) {
    if (!att.attributes_kept.contains(c.key)) {
      ++att.dropped_attr_frequency;
      continue;
    }
    ++att.tuples_kept;
    auto [it, fresh] =
        record_of_title.try_emplace(c.raw->title, result.records.size());
    if (fresh) {
      result.records.push_back(
          {synthesize_id(result.records.size()), std::string(trim(c.raw->title)), {}});
      seen.emplace_back();
    }
    if (!seen[it->second].insert(normalize(c.pair, mode)).second) {
      ++att.duplicate_pairs_merged;
      continue;
    }
    result.records[it->second].pairs.push_back(std::move(c.pair));
  }

  std::erase_if(result.records, [&att](const ProductRecord& r) {
    if (!r.pairs.empty()) return false;
    ++att.records_dropped_empty;
    return true;
  });
  att.records_out = result.records.size();
  if (result.records.empty()) {
    throw ValidationError(
        "derive: nothing survived filtering (in=" + std::to_string(att.tuples_in) +
        ", malformed=" + std::to_string(att.dropped_malformed) +
        ", null/literal=" + std::to_string(att.dropped_null_or_literal) +
        ", not-in-title=" + std::to_string(att.dropped_value_not_in_title) +
        ", attr-frequency=" + std::to_string(att.dropped_attr_frequency) + ")");
  }
  return result;
}

inline RawTuple raw_tuple_from_json(const json& obj, const std::string& where) {
  return {get_string(obj, "title", where), get_string(obj, "attribute", where),
          get_string(obj, "value", where)};
}

enum class RawFormat { Jsonl, Tsv };

// .tsv/.tab/.txt are tab-separated title, attribute, value; anything else is
// JSONL.
inline RawFormat raw_format_for(std::string_view path) {
  for (std::string_view ext : {".tsv", ".tab", ".txt"}) {
    if (path.size() >= ext.size() &&
        path.substr(path.size() - ext.size()) == ext) {
      return RawFormat::Tsv;
    }
  }
  return RawFormat::Jsonl;
}

inline std::vector<RawTuple> read_raw_tuples(std::istream& in, RawFormat format,
                                             const std::string& name) {
  std::vector<RawTuple> out;
  if (format == RawFormat::Jsonl) {
    JsonlReader reader(in, name);
    while (auto obj = reader.next()) {
      out.push_back(raw_tuple_from_json(*obj, reader.where()));
    }
    return out;
  }
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> cols;
    std::size_t begin = 0;
    for (std::size_t tab; (tab = line.find('\t', begin)) != std::string::npos;
         begin = tab + 1) {
      cols.push_back(line.substr(begin, tab - begin));
    }
    cols.push_back(line.substr(begin));
    if (cols.size() != 3) {
      throw ValidationError(name + ":" + std::to_string(line_no) +
                            ": expected 3 tab-separated columns, got " +
                            std::to_string(cols.size()));
    }
    out.push_back({std::move(cols[0]), std::move(cols[1]), std::move(cols[2])});
  }
  if (in.bad()) throw IoError(name + ": read error");
  return out;
}

struct SplitRatios {
  double train = 0.8;
  double valid = 0.1;
  double test = 0.1;
};

inline SplitRatios parse_ratios(std::string_view text) {
  std::vector<double> parts;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t comma = text.find(',', begin);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string field(trim(text.substr(begin, comma - begin)));
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw ValidationError("bad ratio '" + field + "'");
    }
    begin = comma + 1;
  }
  if (parts.size() != 3) {
    throw ValidationError("expected three comma-separated ratios");
  }
  return {parts[0], parts[1], parts[2]};
}

struct Splits {
  std::vector<ProductRecord> train;
  std::vector<ProductRecord> valid;
  std::vector<ProductRecord> test;
};

// Seeded shuffle, then valid and test take floor(n * ratio) records each and
// train takes the rest.
inline Splits split(std::vector<ProductRecord> records, SplitRatios ratios,
                    std::uint64_t seed) {
  if (!(ratios.train > 0 && ratios.valid > 0 && ratios.test > 0) ||
      std::abs(ratios.train + ratios.valid + ratios.test - 1.0) > 1e-9) {
    throw ValidationError("split ratios must be positive and sum to 1");
  }
  if (records.size() < 3) {
    throw ValidationError("split needs at least 3 records, got " +
                          std::to_string(records.size()));
  }
  Rng rng = stream_for(seed, 0);
  shuffle(std::span<ProductRecord>(records), rng);

  const double n = static_cast<double>(records.size());
  // The epsilon absorbs products like 0.1 * 290 = 28.999999999999996.
  const auto n_valid = static_cast<std::size_t>(std::floor(n * ratios.valid + 1e-9));
  const auto n_test = static_cast<std::size_t>(std::floor(n * ratios.test + 1e-9));
  const std::size_t n_train = records.size() - n_valid - n_test;

  Splits out;
  auto first = std::make_move_iterator(records.begin());
  out.train.assign(first, first + n_train);
  out.valid.assign(first + n_train, first + n_train + n_valid);
  out.test.assign(first + n_train + n_valid, std::make_move_iterator(records.end()));
  return out;
}

struct DatasetStats {
  std::size_t n_sentences = 0;  // records with at least one pair
  std::size_t n_single = 0;
  std::size_t n_multi = 0;
  std::size_t n_pairs = 0;
  std::size_t n_attributes = 0;  // distinct normalized attributes

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

namespace detail {

inline void accumulate_stats(std::span<const ProductRecord> records,
                             DatasetStats& stats, std::set<std::string>& attrs,
                             CaseMode mode) {
  for (const auto& rec : records) {
    if (rec.pairs.empty()) continue;
    ++stats.n_sentences;
    ++(rec.pairs.size() == 1 ? stats.n_single : stats.n_multi);
    stats.n_pairs += rec.pairs.size();
    for (const auto& p : rec.pairs) attrs.insert(normalize(p.attribute, mode));
  }
}

}  // namespace detail

inline DatasetStats stats(std::span<const ProductRecord> records,
                          CaseMode mode = CaseMode::Insensitive) {
  DatasetStats s;
  std::set<std::string> attrs;
  detail::accumulate_stats(records, s, attrs, mode);
  s.n_attributes = attrs.size();
  return s;
}

struct NamedSplit {
  std::string name;
  std::vector<ProductRecord> records;
};

struct CorpusStats {
  std::vector<std::pair<std::string, DatasetStats>> splits;
  DatasetStats total;
};

inline CorpusStats stats_by_split(std::span<const NamedSplit> named,
                                  CaseMode mode = CaseMode::Insensitive) {
  CorpusStats out;
  std::set<std::string> all_attrs;
  for (const auto& s : named) {
    out.splits.emplace_back(s.name, stats(s.records, mode));
    detail::accumulate_stats(s.records, out.total, all_attrs, mode);
  }
  out.total.n_attributes = all_attrs.size();
  return out;
}

inline json stats_to_json(const DatasetStats& s) {
  return {{"n_sentences", s.n_sentences}, {"n_single", s.n_single},
          {"n_multi", s.n_multi},         {"n_pairs", s.n_pairs},
          {"n_attributes", s.n_attributes}};
}

}  // namespace avegen
