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

// Records and generators shared by the unit and acceptance tests.

#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "avegen/avegen.hpp"

namespace avegen::testing {

inline ProductRecord jacket_record() {
  return {"jacket",
          "New Band Women Skiing Jacket Outdoor Thicken Snowboarding Jacket "
          "Waterproof Windproof Outerwear Hooded Ski Coats WY006",
          {{"Gender", "Women"},
           {"Sport Type", "Snowboarding"},
           {"Collar", "Hooded"},
           {"Model Number", "WY006"}}};
}

// Note the double space before "shoes,".
inline constexpr const char* kAdidasTitle =
    "adidas superstar gold label, men's skateboarding  shoes, white, wrap "
    "abrasion lightweight breathable b34308";

inline ProductRecord adidas_record() {
  return {"adidas", kAdidasTitle,
          {{"brand name", "adidas"}, {"model number", "b34308"}}};
}

// Generated sequences for the adidas title.
inline constexpr const char* kWdecWord = "adidas ; model | skateboarding shoes ; model";
inline constexpr const char* kBartWord = "adidas ; brand name | breathable ; feature";
inline constexpr const char* kT5Word =
    "adidas ; brand name | breathable ; feature | b34308 ; model number";
inline constexpr const char* kPndecPos = "25 28 model number | 0 1 brand name";
inline constexpr const char* kBartPos = "0 0 brand name | 11 11 feature | 12 12 model number";
inline constexpr const char* kT5Pos = "0 0 brand name | 11 11 feature | 12 12 model number";

inline std::set<AVPair> as_set(const std::vector<AVPair>& pairs) {
  return {pairs.begin(), pairs.end()};
}

// Random record whose values are contiguous slices of its title. Some title
// words carry attached commas or parentheses; values never start or end with
// punctuation.
inline ProductRecord random_planted_record(Rng& rng, std::size_t index) {
  static const std::vector<std::string> kWords = {
      "Red", "blue", "cotton", "Slim", "fit", "Shirt", "men", "women", "XL",
      "2021", "b34308", "WY006", "ultra", "light", "Running", "shoes",
      "leather", "watch", "gold", "tone", "steel", "waterproof", "men's",
      "3.5mm", "USB-C", "pack", "of", "two", "v2"};
  static const std::vector<std::string> kAttributes = {
      "brand", "Color", "material", "model number", "Sport Type", "size",
      "gender", "feature", "Band Color", "pattern"};

  const std::size_t n_words = 3 + uniform_below(rng, 12);
  std::vector<std::string> words;
  for (std::size_t i = 0; i < n_words; ++i) {
    std::string w = kWords[uniform_below(rng, kWords.size())];
    switch (uniform_below(rng, 8)) {
      case 0: w += ","; break;
      case 1: w = "(" + w + ")"; break;
      default: break;
    }
    words.push_back(std::move(w));
  }
  std::string title;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) title += uniform_below(rng, 6) == 0 ? "  " : " ";
    title += words[i];
  }

  ProductRecord rec;
  rec.id = synthesize_id(index);
  rec.title = title;
  const std::size_t n_pairs = 1 + uniform_below(rng, 4);
  for (std::size_t k = 0; k < n_pairs; ++k) {
    const std::size_t start = uniform_below(rng, words.size());
    const std::size_t len = 1 + uniform_below(rng, std::min<std::size_t>(3, words.size() - start));
    std::string value;
    for (std::size_t i = start; i < start + len; ++i) {
      if (i > start) value += ' ';
      value += words[i];
    }
    std::string stripped(strip_edge_punct(value));
    if (stripped.empty()) continue;
    rec.pairs.push_back({kAttributes[uniform_below(rng, kAttributes.size())], stripped});
  }
  if (rec.pairs.empty()) {
    rec.pairs.push_back({"brand", std::string(strip_edge_punct(words[0]))});
  }
  return ingest_record(rec, index).record;
}

// Ten raw tuples over attributes {a x5, b x3, c x2}. Tuple 6 is a NULL value,
// tuple 8 a "yes" literal, tuple 9 a value absent from its title.
inline std::vector<RawTuple> clothing_tuples() {
  return {{"red cotton shirt XL", "a", "red"},
          {"red cotton shirt XL", "b", "XL"},
          {"blue denim jeans", "a", "blue"},
          {"blue denim jeans", "c", "denim"},
          {"green wool hat", "a", "green"},
          {"green wool hat", "b", "NULL"},
          {"black leather belt", "a", "black"},
          {"black leather belt", "c", "yes"},
          {"white canvas shoes", "a", "ivory"},
          {"white canvas shoes", "b", "canvas"}};
}

}  // namespace avegen::testing
