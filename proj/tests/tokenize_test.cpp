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

#include <catch_amalgamated.hpp>

#include "avegen/tokenize.hpp"
#include "fixtures.hpp"

using namespace avegen;
using avegen::testing::jacket_record;
using avegen::testing::kAdidasTitle;

namespace {

// Rebuilds the title from tokens and the gaps between their offsets.
std::string reconstruct(const Tokenization& tok) {
  std::string out = tok.title.substr(0, tok.offsets.empty() ? 0 : tok.offsets[0].begin);
  for (std::size_t i = 0; i < tok.size(); ++i) {
    out += tok.tokens[i];
    const std::size_t next = i + 1 < tok.size() ? tok.offsets[i + 1].begin : tok.title.size();
    out += tok.title.substr(tok.offsets[i].end, next - tok.offsets[i].end);
  }
  return out;
}

std::string random_title(Rng& rng) {
  const std::string alphabet = "abcXYZ019,.()'- \t\xC3\xA9";
  std::string s;
  while (trim(s).empty()) {
    s.clear();
    const auto len = 1 + uniform_below(rng, 40);
    for (std::uint64_t k = 0; k < len; ++k) s += alphabet[uniform_below(rng, alphabet.size())];
  }
  return s;
}

bool covers(const Tokenization& a, TokenSpan sa, const Tokenization& b, TokenSpan sb) {
  const CharRange ra = a.char_range(sa);
  const CharRange rb = b.char_range(sb);
  return ra.begin <= rb.begin && rb.end <= ra.end;
}

}  // namespace

TEST_CASE("whitespace tokens index the worked examples", "[tokenize]") {
  const Tokenization jacket = whitespace_tokenize(jacket_record().title);
  REQUIRE(jacket.size() == 16);
  CHECK(jacket.tokens[2] == "Women");
  CHECK(jacket.tokens[7] == "Snowboarding");
  CHECK(jacket.tokens[12] == "Hooded");
  CHECK(jacket.tokens[15] == "WY006");

  const Tokenization adidas = whitespace_tokenize(kAdidasTitle);
  REQUIRE(adidas.size() == 13);
  CHECK(adidas.tokens[0] == "adidas");
  CHECK(adidas.tokens[12] == "b34308");
  CHECK(adidas.tokens[7] == "white,");
}

TEST_CASE("whitespace tokenization edge cases", "[tokenize]") {
  const Tokenization t = whitespace_tokenize("a  b");
  CHECK(t.tokens == std::vector<std::string>{"a", "b"});
  CHECK(t.offsets == std::vector<CharRange>{{0, 1}, {3, 4}});
  CHECK(t.scheme == "whitespace");
  CHECK_THROWS_AS(whitespace_tokenize("   \t "), ValidationError);
  CHECK_THROWS_AS(whitespace_tokenize(""), ValidationError);
}

TEST_CASE("mock subword tokenization chunks words", "[tokenize]") {
  const Tokenization t = mock_subword_tokenize("adidas b34308", 3);
  CHECK(t.tokens == std::vector<std::string>{"adi", "das", "b34", "308"});
  CHECK(t.offsets == std::vector<CharRange>{{0, 3}, {3, 6}, {7, 10}, {10, 13}});
  CHECK(t.scheme == "mock-subword:3");
  CHECK_NOTHROW(validate(t));
  CHECK_THROWS_AS(mock_subword_tokenize("x", 0), ValidationError);

  // Multi-byte code points are never cut.
  const Tokenization u = mock_subword_tokenize("\xC3\xA9t\xC3\xA9", 2);
  CHECK(u.tokens == std::vector<std::string>{"\xC3\xA9t", "\xC3\xA9"});
}

TEST_CASE("tokenizer scheme keys", "[tokenize]") {
  CHECK(TokenizerScheme::parse("whitespace").is_whitespace());
  CHECK(TokenizerScheme::parse("mock-subword:4").key() == "mock-subword:4");
  CHECK_THROWS_AS(TokenizerScheme::parse("bert"), ValidationError);
  CHECK_THROWS_AS(TokenizerScheme::parse("mock-subword:0"), ValidationError);
  CHECK_THROWS_AS(TokenizerScheme::parse("mock-subword:3x"), ValidationError);
  CHECK(TokenizerScheme::parse("mock-subword:2")("abc").tokens ==
        std::vector<std::string>{"ab", "c"});
}

TEST_CASE("tokenizations are exact and reconstruct the title", "[tokenize][property]") {
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    const std::string title = random_title(rng);
    const Tokenization ws = whitespace_tokenize(title);
    REQUIRE_NOTHROW(validate(ws));
    REQUIRE(reconstruct(ws) == title);
    const std::size_t piece = 1 + uniform_below(rng, 5);
    const Tokenization sub = mock_subword_tokenize(title, piece);
    REQUIRE_NOTHROW(validate(sub));
    REQUIRE(reconstruct(sub) == title);
    // Large enough pieces reproduce the whitespace tokens.
    REQUIRE(mock_subword_tokenize(title, 1000).tokens == ws.tokens);
  }
}

TEST_CASE("find_value_span locates leftmost matches", "[tokenize]") {
  const Tokenization jacket = whitespace_tokenize(jacket_record().title);
  CHECK(find_value_span(jacket, "Snowboarding") == TokenSpan{7, 7});
  CHECK(find_value_span(jacket, "snowboarding") == TokenSpan{7, 7});
  CHECK_FALSE(find_value_span(jacket, "snowboarding", CaseMode::Sensitive));
  // "Jacket" occurs at 4 and 8.
  CHECK(find_value_span(jacket, "Jacket") == TokenSpan{4, 4});
  CHECK(find_value_span(jacket, "ski coats") == TokenSpan{13, 14});

  const Tokenization adidas = whitespace_tokenize(kAdidasTitle);
  CHECK(find_value_span(adidas, "breathable") == TokenSpan{11, 11});
  CHECK(find_value_span(adidas, "white") == TokenSpan{7, 7});
  CHECK(find_value_span(adidas, "white,") == TokenSpan{7, 7});
  CHECK(find_value_span(adidas, "skateboarding shoes") == TokenSpan{5, 6});
  CHECK(find_value_span(adidas, "men's") == TokenSpan{4, 4});
  CHECK_FALSE(find_value_span(adidas, "reebok"));
  CHECK_FALSE(find_value_span(adidas, ""));
  CHECK_FALSE(find_value_span(adidas, "dida"));
}

TEST_CASE("find_value_span results match the value", "[tokenize][property]") {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const ProductRecord rec = avegen::testing::random_planted_record(rng, i);
    const Tokenization tok = whitespace_tokenize(rec.title);
    for (const auto& pair : rec.pairs) {
      const auto span = find_value_span(tok, pair.value);
      REQUIRE(span);
      const std::string text = span_text(tok, *span);
      const std::string nv = normalize(pair.value);
      REQUIRE((normalize(text) == nv || normalize(strip_edge_punct(text)) == nv));
    }
  }
}

TEST_CASE("remap_span covers character ranges", "[tokenize]") {
  const Tokenization ws = whitespace_tokenize(kAdidasTitle);
  const Tokenization sub = mock_subword_tokenize(kAdidasTitle, 3);
  REQUIRE(sub.tokens[0] == "adi");
  REQUIRE(sub.tokens[1] == "das");

  CHECK(remap_span({0, 0}, ws, ws) == TokenSpan{0, 0});
  CHECK(remap_span({5, 6}, ws, ws) == TokenSpan{5, 6});
  CHECK(remap_span({0, 0}, ws, sub) == TokenSpan{0, 1});
  // Back to words from the second piece only.
  CHECK(remap_span({1, 1}, sub, ws) == TokenSpan{0, 0});

  CHECK_THROWS_AS(remap_span({0, 0}, ws, whitespace_tokenize("other title")), ValidationError);
  CHECK_THROWS_AS(remap_span({0, 99}, ws, sub), ValidationError);
}

TEST_CASE("remap there and back covers the original span", "[tokenize][property]") {
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const std::string title = random_title(rng);
    const Tokenization a = whitespace_tokenize(title);
    const Tokenization b = mock_subword_tokenize(title, 1 + uniform_below(rng, 4));
    const std::size_t start = uniform_below(rng, a.size());
    const std::size_t end = start + uniform_below(rng, a.size() - start);
    const TokenSpan s{start, end};
    const auto there = remap_span(s, a, b);
    REQUIRE(there);
    REQUIRE(covers(b, *there, a, s));
    const auto back = remap_span(*there, b, a);
    REQUIRE(back);
    REQUIRE(covers(a, *back, a, s));
    // Spans of b also survive the reverse trip.
    const std::size_t bs = uniform_below(rng, b.size());
    const auto up = remap_span({bs, bs}, b, a);
    REQUIRE(up);
    REQUIRE(covers(b, *remap_span(*up, a, b), b, {bs, bs}));
  }
}
