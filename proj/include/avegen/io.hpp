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

// JSONL reading and writing for records, generations and predictions.

#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "avegen/core.hpp"
#include "avegen/decode.hpp"

namespace avegen {

using json = nlohmann::json;

// Reads one JSON object per non-blank line.
class JsonlReader {
 public:
  explicit JsonlReader(std::istream& in, std::string name = "<input>")
      : in_(in), name_(std::move(name)) {}

  std::optional<json> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (trim(line).empty()) continue;
      json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
      if (obj.is_discarded() || !obj.is_object()) {
        throw ValidationError(where() + ": not a JSON object");
      }
      return obj;
    }
    if (in_.bad()) throw IoError(name_ + ": read error");
    return std::nullopt;
  }

  std::size_t line_no() const noexcept { return line_no_; }
  std::string where() const { return name_ + ":" + std::to_string(line_no_); }

 private:
  std::istream& in_;
  std::string name_;
  std::size_t line_no_ = 0;
};

// Compact single-line dump; invalid UTF-8 is replaced rather than thrown on.
inline void write_jsonl(std::ostream& out, const json& obj) {
  out << obj.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
}

inline std::string get_string(const json& obj, const char* key,
                              const std::string& where, bool required = true) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    if (required) {
      throw ValidationError(where + ": missing field '" + key + "'");
    }
    return {};
  }
  if (!it->is_string()) {
    throw ValidationError(where + ": field '" + key + "' is not a string");
  }
  return it->get<std::string>();
}

inline json pairs_to_json(const std::vector<AVPair>& pairs) {
  json arr = json::array();
  for (const auto& p : pairs) {
    arr.push_back({{"attribute", p.attribute}, {"value", p.value}});
  }
  return arr;
}

inline std::vector<AVPair> pairs_from_json(const json& obj,
                                           const std::string& where) {
  auto it = obj.find("pairs");
  if (it == obj.end() || !it->is_array()) {
    throw ValidationError(where + ": missing array field 'pairs'");
  }
  std::vector<AVPair> pairs;
  for (const auto& p : *it) {
    if (!p.is_object()) {
      throw ValidationError(where + ": pair is not an object");
    }
    pairs.push_back(
        {get_string(p, "attribute", where), get_string(p, "value", where)});
  }
  return pairs;
}

inline json record_to_json(const ProductRecord& rec) {
  return {{"id", rec.id}, {"title", rec.title}, {"pairs", pairs_to_json(rec.pairs)}};
}

// Parses without validation; see ingest_record.
inline ProductRecord record_from_json(const json& obj, const std::string& where) {
  ProductRecord rec;
  rec.id = get_string(obj, "id", where, /*required=*/false);
  rec.title = get_string(obj, "title", where);
  rec.pairs = pairs_from_json(obj, where);
  return rec;
}

inline json discards_to_json(const std::vector<Discard>& discards) {
  json arr = json::array();
  for (const auto& d : discards) {
    arr.push_back({{"segment", d.segment}, {"reason", to_string(d.reason)}});
  }
  return arr;
}

// Reads and ingests a whole record file; warnings are appended to `warnings`.
inline std::vector<ProductRecord> read_records(
    std::istream& in, const std::string& name,
    std::vector<std::string>* warnings = nullptr,
    CaseMode mode = CaseMode::Insensitive) {
  JsonlReader reader(in, name);
  std::vector<ProductRecord> records;
  while (auto obj = reader.next()) {
    IngestResult r = ingest_record(record_from_json(*obj, reader.where()),
                                   records.size(), mode);
    if (warnings) {
      warnings->insert(warnings->end(), r.warnings.begin(), r.warnings.end());
    }
    records.push_back(std::move(r.record));
  }
  return records;
}

inline void write_records(std::ostream& out,
                          const std::vector<ProductRecord>& records) {
  for (const auto& rec : records) write_jsonl(out, record_to_json(rec));
}

}  // namespace avegen
