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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "fixtures.hpp"

using namespace avegen;
using namespace avegen::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Fresh scratch directory per test case.
class Scratch {
 public:
  Scratch() {
    static int counter = 0;
    dir_ = fs::temp_directory_path() /
           ("avegen_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<json> read_jsonl(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<json> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

void write_records_file(const std::string& path, const std::vector<ProductRecord>& records) {
  std::ofstream f(path, std::ios::binary);
  write_records(f, records);
}

}  // namespace

TEST_CASE("exit codes", "[cli]") {
  Scratch s;
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"encode", "--bogus"}).code == 1);
  CHECK(run({"encode", "--paradigm", "tree"}).code == 1);
  CHECK(run({"oracle", "--p-drop", "2"}).code == 1);

  const Run missing = run({"encode", "--in", s.path("absent.jsonl")});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("absent.jsonl") != std::string::npos);

  write_file(s.path("bad.jsonl"), "{\"id\": \"x\", \"title\": \"t\", \"pairs\": [{\"attribute\": \"a\", \"value\": \"t\"}]}\n[1]\n");
  const Run bad = run({"encode", "--in", s.path("bad.jsonl"), "--out", s.path("o.jsonl")});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("bad.jsonl:2") != std::string::npos);
}

TEST_CASE("encode writes target lines and a manifest", "[cli]") {
  Scratch s;
  write_records_file(s.path("gold.jsonl"), {jacket_record()});
  const Run r = run({"--seed", "5", "encode", "--in", s.path("gold.jsonl"), "--out",
                     s.path("enc.jsonl"), "--paradigm", "positional"});
  REQUIRE(r.code == 0);
  const auto lines = read_jsonl(s.path("enc.jsonl"));
  REQUIRE(lines.size() == 1);
  CHECK(lines[0]["id"] == "jacket");
  CHECK(lines[0]["target"] == "2 2 Gender | 7 7 Sport Type | 12 12 Collar | 15 15 Model Number");

  const json manifest = json::parse(read_file(s.path("enc.jsonl.manifest.json")));
  CHECK(manifest["subcommand"] == "encode");
  CHECK(manifest["seed"] == 5);
  CHECK(manifest["config"]["paradigm"] == "positional");
  CHECK(manifest.contains("duration_seconds"));
  CHECK(manifest.contains("version"));
}

TEST_CASE("encode --shuffle depends on the seed only", "[cli]") {
  Scratch s;
  write_records_file(s.path("gold.jsonl"), {jacket_record()});
  auto target = [&](const std::string& seed) {
    REQUIRE(run({"--seed", seed, "encode", "--in", s.path("gold.jsonl"), "--out",
                 s.path("enc.jsonl"), "--shuffle"})
                .code == 0);
    return read_jsonl(s.path("enc.jsonl"))[0]["target"].get<std::string>();
  };
  CHECK(target("1") == target("1"));
  bool differs = false;
  for (int seed = 2; seed < 12 && !differs; ++seed) differs = target(std::to_string(seed)) != target("1");
  CHECK(differs);
}

TEST_CASE("decode joins titles for bare generation files", "[cli]") {
  Scratch s;
  write_records_file(s.path("gold.jsonl"), {adidas_record()});
  write_file(s.path("gen.jsonl"),
             json({{"id", "adidas"}, {"generated", kT5Pos}}).dump() + "\n");
  const Run r = run({"decode", "--in", s.path("gen.jsonl"), "--out", s.path("pred.jsonl"),
                     "--paradigm", "positional", "--records", s.path("gold.jsonl")});
  REQUIRE(r.code == 0);
  const auto lines = read_jsonl(s.path("pred.jsonl"));
  REQUIRE(lines.size() == 1);
  const auto pairs = pairs_from_json(lines[0], "pred");
  CHECK(as_set(pairs) == std::set<AVPair>{{"brand name", "adidas"},
                                          {"feature", "breathable"},
                                          {"model number", "b34308"}});
  CHECK(lines[0]["discards"].empty());

  // Without titles every span is out of range.
  REQUIRE(run({"--quiet", "decode", "--in", s.path("gen.jsonl"), "--out", s.path("pred.jsonl"),
               "--paradigm", "positional"})
              .code == 0);
  const auto bare = read_jsonl(s.path("pred.jsonl"));
  CHECK(bare[0]["pairs"].empty());
  CHECK(bare[0]["discards"].size() == 3);
}

TEST_CASE("evaluate prints a table", "[cli]") {
  Scratch s;
  write_records_file(s.path("gold.jsonl"), {adidas_record(), jacket_record()});
  write_records_file(s.path("pred.jsonl"), {adidas_record(), jacket_record()});
  const Run r = run({"evaluate", "--gold", s.path("gold.jsonl"), "--pred", s.path("pred.jsonl"),
                     "--by-cardinality", "--report", s.path("report.json")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("joint        1.0000   1.0000   1.0000        6        6        6") !=
        std::string::npos);
  CHECK(r.out.find("records: 2") != std::string::npos);
  const json report = json::parse(read_file(s.path("report.json")));
  CHECK(report["joint"]["f1"] == 1.0);
  CHECK(report["by_cardinality"]["multi"]["n_gold"] == 6);

  write_file(s.path("dup.jsonl"), read_file(s.path("pred.jsonl")) + read_file(s.path("pred.jsonl")));
  CHECK(run({"evaluate", "--gold", s.path("gold.jsonl"), "--pred", s.path("dup.jsonl")}).code == 1);
}

TEST_CASE("stats prints per-file columns", "[cli]") {
  Scratch s;
  write_records_file(s.path("train.jsonl"), {adidas_record(), jacket_record()});
  write_records_file(s.path("test.jsonl"), {{"x", "red hat", {{"color", "red"}}}});
  const Run r = run({"stats", s.path("train.jsonl"), s.path("test.jsonl")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("train") != std::string::npos);
  CHECK(r.out.find("#sent               2          1          3") != std::string::npos);
  CHECK(r.out.find("single              0          1          1") != std::string::npos);
}

TEST_CASE("full pipeline with the copy oracle scores perfectly", "[cli]") {
  Scratch s;
  Rng rng(8);
  std::ostringstream raw;
  for (std::size_t i = 0; i < 60; ++i) {
    const ProductRecord rec = random_planted_record(rng, i);
    for (const auto& p : rec.pairs) {
      write_jsonl(raw, {{"title", rec.title}, {"attribute", p.attribute}, {"value", p.value}});
    }
  }
  write_file(s.path("raw.jsonl"), raw.str());

  REQUIRE(run({"--quiet", "preprocess", "--in", s.path("raw.jsonl"), "--out",
               s.path("records.jsonl"), "--report", s.path("attrition.json")})
              .code == 0);
  CHECK(fs::exists(s.path("records.jsonl.manifest.json")));
  CHECK(json::parse(read_file(s.path("attrition.json")))["records_out"] > 50);

  REQUIRE(run({"--seed", "3", "--quiet", "split", "--in", s.path("records.jsonl"),
               "--out-dir", s.path("splits")})
              .code == 0);
  const std::string test = s.path("splits/test.jsonl");
  CHECK(read_jsonl(test).size() >= 5);

  for (const char* paradigm : {"word", "positional"}) {
    for (const char* tokenizer : {"whitespace", "mock-subword:3"}) {
      REQUIRE(run({"--quiet", "oracle", "--in", test, "--out", s.path("gen.jsonl"),
                   "--paradigm", paradigm, "--tokenizer", tokenizer})
                  .code == 0);
      REQUIRE(run({"--quiet", "decode", "--in", s.path("gen.jsonl"), "--out",
                   s.path("pred.jsonl"), "--paradigm", paradigm, "--tokenizer", tokenizer})
                  .code == 0);
      REQUIRE(run({"evaluate", "--gold", test, "--pred", s.path("pred.jsonl"), "--report",
                   s.path("report.json")})
                  .code == 0);
      const json report = json::parse(read_file(s.path("report.json")));
      INFO(paradigm << " " << tokenizer);
      CHECK(report["joint"]["f1"] == 1.0);
    }
  }

  REQUIRE(run({"--seed", "3", "oracle", "--in", test, "--out", s.path("gen.jsonl"),
               "--p-drop", "1"})
              .code == 0);
  REQUIRE(run({"decode", "--in", s.path("gen.jsonl"), "--out", s.path("pred.jsonl")}).code == 0);
  REQUIRE(run({"evaluate", "--gold", test, "--pred", s.path("pred.jsonl"), "--report",
               s.path("report.json")})
              .code == 0);
  CHECK(json::parse(read_file(s.path("report.json")))["joint"]["recall"] == 0.0);
}
