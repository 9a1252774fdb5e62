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

#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>

#include "avegen/avegen.hpp"

namespace avegen::cli {
namespace {

namespace fs = std::filesystem;

struct Globals {
  std::uint64_t seed = 0;
  bool case_sensitive = false;
  bool quiet = false;

  CaseMode case_mode() const {
    return case_sensitive ? CaseMode::Sensitive : CaseMode::Insensitive;
  }
};

struct Context {
  Globals globals;
  std::vector<std::string> args;
  std::ostream& out;
  std::ostream& err;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  void warn(const std::string& msg) const {
    if (!globals.quiet) err << "warning: " << msg << '\n';
  }
  void note(const std::string& msg) const {
    if (!globals.quiet) err << msg << '\n';
  }
};

class Input {
 public:
  explicit Input(const std::string& path) : path_(path) {
    if (path == "-") return;
    file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*file_) throw IoError("cannot open '" + path + "' for reading");
  }
  std::istream& stream() { return file_ ? *file_ : std::cin; }
  const std::string& name() const { return path_; }

 private:
  std::string path_;
  std::unique_ptr<std::ifstream> file_;
};

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback)
      : path_(path), fallback_(fallback) {
    if (path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file_) throw IoError("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : fallback_; }
  bool is_file() const { return file_ != nullptr; }
  const std::string& path() const { return path_; }

  void close() {
    stream().flush();
    if (!stream()) throw IoError("write to '" + path_ + "' failed");
    if (file_) file_->close();
  }

 private:
  std::string path_;
  std::ostream& fallback_;
  std::unique_ptr<std::ofstream> file_;
};

// Run metadata stored next to every output file as <path>.manifest.json.
void write_manifest(const Context& ctx, const std::string& subcommand,
                    const json& config, const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs) {
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - ctx.started)
                             .count();
  json manifest = {{"subcommand", subcommand},
                   {"argv", ctx.args},
                   {"config", config},
                   {"inputs", inputs},
                   {"outputs", outputs},
                   {"seed", ctx.globals.seed},
                   {"case_sensitive", ctx.globals.case_sensitive},
                   {"version", kVersion},
                   {"duration_seconds", seconds}};
  for (const auto& path : outputs) {
    if (path == "-") continue;
    std::ofstream f(path + ".manifest.json", std::ios::binary | std::ios::trunc);
    f << manifest.dump(2) << '\n';
    if (!f) throw IoError("cannot write manifest for '" + path + "'");
  }
}

std::vector<ProductRecord> load_records(const std::string& path,
                                        const Context& ctx) {
  Input in(path);
  std::vector<std::string> warnings;
  auto records = read_records(in.stream(), in.name(), &warnings,
                              ctx.globals.case_mode());
  for (const auto& w : warnings) ctx.warn(w);
  return records;
}

// Applies `fn` to every ingested record of `in`, in order, without holding
// the file in memory.
template <typename Fn>
std::size_t for_each_record(Input& in, const Context& ctx, Fn&& fn) {
  JsonlReader reader(in.stream(), in.name());
  std::size_t index = 0;
  while (auto obj = reader.next()) {
    IngestResult r = ingest_record(record_from_json(*obj, reader.where()),
                                   index, ctx.globals.case_mode());
    for (const auto& w : r.warnings) ctx.warn(w);
    fn(r.record, index);
    ++index;
  }
  return index;
}

EncodeOptions make_encode_options(const std::string& paradigm,
                                  const std::string& tokenizer,
                                  const std::string& on_missing,
                                  const std::string& order,
                                  const Context& ctx) {
  EncodeOptions opts;
  opts.paradigm = parse_paradigm(paradigm);
  opts.tokenizer = TokenizerScheme::parse(tokenizer);
  if (on_missing == "skip") {
    opts.on_unfindable = OnUnfindable::Skip;
  } else if (on_missing == "error") {
    opts.on_unfindable = OnUnfindable::Error;
  } else {
    throw ValidationError("--on-missing must be skip or error");
  }
  if (order == "title") {
    opts.pair_order = PairOrder::TitleOrder;
  } else if (order == "input") {
    opts.pair_order = PairOrder::InputOrder;
  } else {
    throw ValidationError("--order must be title or input");
  }
  opts.case_mode = ctx.globals.case_mode();
  return opts;
}

json encode_options_json(const EncodeOptions& o) {
  return {{"paradigm", to_string(o.paradigm)},
          {"tokenizer", o.tokenizer.key()},
          {"on_missing", o.on_unfindable == OnUnfindable::Skip ? "skip" : "error"},
          {"order", o.pair_order == PairOrder::TitleOrder ? "title" : "input"}};
}

// ---------------------------------------------------------------------------

struct PreprocessArgs {
  std::string preset;
  std::string config;
  std::string in;
  std::string out = "-";
  std::string report;
  std::optional<std::size_t> min_attr_freq;
  std::optional<std::size_t> max_attr_freq;
};

int do_preprocess(const PreprocessArgs& a, Context& ctx) {
  PipelineConfig config;
  if (!a.preset.empty()) config = preset(a.preset);
  if (!a.config.empty()) {
    Input cfg(a.config);
    json obj = json::parse(cfg.stream(), nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      throw ValidationError(a.config + ": not a JSON object");
    }
    config = config_from_json(obj, config);
  }
  if (a.min_attr_freq) config.min_attr_freq = *a.min_attr_freq;
  if (a.max_attr_freq) config.max_attr_freq = *a.max_attr_freq;
  config.case_mode = ctx.globals.case_mode();
  config.validate();

  Input in(a.in);
  const auto raw = read_raw_tuples(in.stream(), raw_format_for(a.in), in.name());
  const DeriveResult result = derive(raw, config);

  Output out(a.out, ctx.out);
  write_records(out.stream(), result.records);
  out.close();
  std::vector<std::string> outputs{a.out};
  if (!a.report.empty()) {
    Output report(a.report, ctx.out);
    report.stream() << attrition_to_json(result.attrition).dump(2) << '\n';
    report.close();
    outputs.push_back(a.report);
  }
  write_manifest(ctx, "preprocess", config_to_json(config), {a.in}, outputs);
  ctx.note("preprocess: " + std::to_string(raw.size()) + " tuples -> " +
           std::to_string(result.records.size()) + " records");
  return kOk;
}

struct SplitArgs {
  std::string in;
  std::string out_dir = ".";
  std::string ratios = "0.8,0.1,0.1";
};

int do_split(const SplitArgs& a, Context& ctx) {
  const SplitRatios ratios = parse_ratios(a.ratios);
  Splits parts = split(load_records(a.in, ctx), ratios, ctx.globals.seed);
  std::error_code ec;
  fs::create_directories(a.out_dir, ec);
  if (ec) throw IoError("cannot create '" + a.out_dir + "': " + ec.message());
  std::vector<std::string> outputs;
  for (auto [name, records] : {std::pair{"train", &parts.train},
                               std::pair{"valid", &parts.valid},
                               std::pair{"test", &parts.test}}) {
    const std::string path = (fs::path(a.out_dir) / (std::string(name) + ".jsonl")).string();
    Output out(path, ctx.out);
    write_records(out.stream(), *records);
    out.close();
    outputs.push_back(path);
  }
  write_manifest(ctx, "split",
                 {{"ratios", {ratios.train, ratios.valid, ratios.test}}}, {a.in},
                 outputs);
  ctx.note("split: train=" + std::to_string(parts.train.size()) +
           " valid=" + std::to_string(parts.valid.size()) +
           " test=" + std::to_string(parts.test.size()));
  return kOk;
}

struct StatsArgs {
  std::vector<std::string> inputs;
  std::string report;
};

int do_stats(const StatsArgs& a, Context& ctx) {
  std::vector<NamedSplit> named;
  for (const auto& path : a.inputs) {
    named.push_back({fs::path(path).stem().string(), load_records(path, ctx)});
  }
  const CorpusStats s = stats_by_split(named, ctx.globals.case_mode());

  std::ostream& o = ctx.out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-10s", "");
  o << line;
  for (const auto& [name, st] : s.splits) {
    std::snprintf(line, sizeof(line), " %10s", name.c_str());
    o << line;
  }
  std::snprintf(line, sizeof(line), " %10s\n", "total");
  o << line;
  auto row = [&](const char* label, std::size_t DatasetStats::*field) {
    std::snprintf(line, sizeof(line), "%-10s", label);
    o << line;
    for (const auto& [name, st] : s.splits) {
      std::snprintf(line, sizeof(line), " %10zu", st.*field);
      o << line;
    }
    std::snprintf(line, sizeof(line), " %10zu\n", s.total.*field);
    o << line;
  };
  row("#sent", &DatasetStats::n_sentences);
  row("single", &DatasetStats::n_single);
  row("multi", &DatasetStats::n_multi);
  row("#pairs", &DatasetStats::n_pairs);
  row("#attr", &DatasetStats::n_attributes);

  if (!a.report.empty()) {
    json splits = json::object();
    for (const auto& [name, st] : s.splits) splits[name] = stats_to_json(st);
    Output report(a.report, ctx.out);
    report.stream() << json{{"splits", splits}, {"total", stats_to_json(s.total)}}.dump(2)
                    << '\n';
    report.close();
    write_manifest(ctx, "stats", json::object(), a.inputs, {a.report});
  }
  return kOk;
}

struct EncodeArgs {
  std::string in = "-";
  std::string out = "-";
  std::string paradigm = "word";
  std::string tokenizer = "whitespace";
  std::string on_missing = "skip";
  std::string order = "title";
  bool shuffle = false;
  std::optional<std::uint64_t> shuffle_seed;
};

int do_encode(const EncodeArgs& a, Context& ctx) {
  EncodeOptions opts =
      make_encode_options(a.paradigm, a.tokenizer, a.on_missing, a.order, ctx);
  const bool shuffling = a.shuffle || a.shuffle_seed.has_value();
  const std::uint64_t shuffle_seed = a.shuffle_seed.value_or(ctx.globals.seed);
  // A shuffled order only survives if encoding keeps input order.
  if (shuffling) opts.pair_order = PairOrder::InputOrder;

  Input in(a.in);
  Output out(a.out, ctx.out);
  std::size_t skipped = 0;
  const std::size_t n = for_each_record(in, ctx, [&](ProductRecord& rec, std::size_t i) {
    if (shuffling) rec = shuffle_pairs(std::move(rec), splitmix64(shuffle_seed) ^ i);
    EncodedTarget enc = encode(rec, opts);
    for (const auto& p : enc.skipped) {
      ctx.warn("record '" + rec.id + "': skipped (" + p.attribute + ", " +
               p.value + "), value not in title");
    }
    skipped += enc.skipped.size();
    write_jsonl(out.stream(),
                {{"id", rec.id}, {"title", rec.title}, {"target", enc.target}});
  });
  out.close();
  json config = encode_options_json(opts);
  if (shuffling) config["shuffle_seed"] = shuffle_seed;
  write_manifest(ctx, "encode", config, {a.in}, {a.out});
  ctx.note("encode: " + std::to_string(n) + " records, " +
           std::to_string(skipped) + " pairs skipped");
  return kOk;
}

struct DecodeArgs {
  std::string in = "-";
  std::string out = "-";
  std::string paradigm = "word";
  std::string tokenizer = "whitespace";
  std::string records;
};

int do_decode(const DecodeArgs& a, Context& ctx) {
  const Paradigm paradigm = parse_paradigm(a.paradigm);
  const TokenizerScheme scheme = TokenizerScheme::parse(a.tokenizer);
  std::unordered_map<std::string, std::string> titles;
  if (!a.records.empty()) {
    for (auto& rec : load_records(a.records, ctx)) {
      titles.emplace(std::move(rec.id), std::move(rec.title));
    }
  }

  Input in(a.in);
  Output out(a.out, ctx.out);
  JsonlReader reader(in.stream(), in.name());
  std::size_t n = 0;
  while (auto obj = reader.next()) {
    const std::string where = reader.where();
    std::string id = get_string(*obj, "id", where);
    std::string title = get_string(*obj, "title", where, /*required=*/false);
    if (title.empty()) {
      if (auto it = titles.find(id); it != titles.end()) title = it->second;
    }
    if (title.empty() && paradigm == Paradigm::PositionalSequence) {
      ctx.warn(where + ": no title for '" + id + "'; every span is out of range");
    }
    const std::string generated = get_string(*obj, "generated", where);
    const DecodeReport report =
        decode(generated, paradigm, title, scheme, ctx.globals.case_mode());
    write_jsonl(out.stream(), {{"id", id},
                               {"pairs", pairs_to_json(report.pairs)},
                               {"discards", discards_to_json(report.discarded)},
                               {"duplicates_removed", report.duplicates_removed}});
    ++n;
  }
  out.close();
  std::vector<std::string> inputs{a.in};
  if (!a.records.empty()) inputs.push_back(a.records);
  write_manifest(ctx, "decode",
                 {{"paradigm", to_string(paradigm)}, {"tokenizer", scheme.key()}},
                 inputs, {a.out});
  ctx.note("decode: " + std::to_string(n) + " generations");
  return kOk;
}

struct EvaluateArgs {
  std::string gold;
  std::string pred;
  std::string report;
  bool by_cardinality = false;
  bool strict_ids = false;
};

Predictions load_predictions(const std::string& path) {
  Input in(path);
  JsonlReader reader(in.stream(), in.name());
  Predictions preds;
  while (auto obj = reader.next()) {
    const std::string where = reader.where();
    std::string id = get_string(*obj, "id", where);
    auto pairs = pairs_from_json(*obj, where);
    if (!preds.emplace(id, std::move(pairs)).second) {
      throw ValidationError(where + ": duplicate prediction id '" + id + "'");
    }
  }
  return preds;
}

json prf_to_json(const PRF& p) {
  return {{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1},
          {"tp", p.tp}, {"n_pred", p.n_pred}, {"n_gold", p.n_gold}};
}

int do_evaluate(const EvaluateArgs& a, Context& ctx) {
  const auto gold = load_records(a.gold, ctx);
  const auto preds = load_predictions(a.pred);
  EvalOptions opts;
  opts.case_mode = ctx.globals.case_mode();
  opts.strict_ids = a.strict_ids;
  const EvalReport r = evaluate(gold, preds, opts);

  char line[256];
  std::snprintf(line, sizeof(line), "%-10s %8s %8s %8s %8s %8s %8s\n", "", "P",
                "R", "F1", "tp", "n_pred", "n_gold");
  ctx.out << line;
  auto row = [&](const char* label, const PRF& p) {
    std::snprintf(line, sizeof(line), "%-10s %8.4f %8.4f %8.4f %8zu %8zu %8zu\n",
                  label, p.precision, p.recall, p.f1, p.tp, p.n_pred, p.n_gold);
    ctx.out << line;
  };
  row("joint", r.joint);
  row("attribute", r.attribute);
  row("value", r.value);
  if (a.by_cardinality) {
    row("single", r.by_cardinality.at(Cardinality::Single));
    row("multi", r.by_cardinality.at(Cardinality::Multi));
  }
  std::snprintf(line, sizeof(line), "records: %zu\n", r.record_count);
  ctx.out << line;

  if (!a.report.empty()) {
    json report = {{"joint", prf_to_json(r.joint)},
                   {"attribute", prf_to_json(r.attribute)},
                   {"value", prf_to_json(r.value)},
                   {"by_cardinality",
                    {{"single", prf_to_json(r.by_cardinality.at(Cardinality::Single))},
                     {"multi", prf_to_json(r.by_cardinality.at(Cardinality::Multi))}}},
                   {"record_count", r.record_count}};
    Output out(a.report, ctx.out);
    out.stream() << report.dump(2) << '\n';
    out.close();
    write_manifest(ctx, "evaluate", {{"strict_ids", a.strict_ids}},
                   {a.gold, a.pred}, {a.report});
  }
  return kOk;
}

struct OracleArgs {
  std::string in = "-";
  std::string out = "-";
  std::string paradigm = "word";
  std::string tokenizer = "whitespace";
  NoiseSpec noise;
};

int do_oracle(const OracleArgs& a, Context& ctx) {
  a.noise.validate();
  const EncodeOptions opts =
      make_encode_options(a.paradigm, a.tokenizer, "skip", "title", ctx);
  Input in(a.in);
  Output out(a.out, ctx.out);
  const std::size_t n = for_each_record(in, ctx, [&](const ProductRecord& rec, std::size_t i) {
    write_jsonl(out.stream(),
                {{"id", rec.id},
                 {"title", rec.title},
                 {"generated", oracle_generate(rec, i, a.noise, ctx.globals.seed, opts)}});
  });
  out.close();
  json config = encode_options_json(opts);
  config["p_drop"] = a.noise.p_drop;
  config["p_attr"] = a.noise.p_attr;
  config["p_val"] = a.noise.p_val;
  write_manifest(ctx, "oracle", config, {a.in}, {a.out});
  ctx.note("oracle: " + std::to_string(n) + " generations");
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Generative attribute-value extraction toolkit", "avegen"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  Context ctx{{}, args, out, err};
  Globals& g = ctx.globals;
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_flag("--case-sensitive", g.case_sensitive,
               "Compare strings without lowercasing");
  app.add_flag("--quiet", g.quiet, "Suppress warnings and progress lines");

  const auto paradigm_check = CLI::IsMember({"word", "positional"});

  PreprocessArgs pre;
  auto* pre_cmd = app.add_subcommand("preprocess", "Derive records from raw tuples");
  pre_cmd->add_option("--preset", pre.preset, "av-data-v1 or av-mae")
      ->check(CLI::IsMember({"av-data-v1", "av-mae"}));
  pre_cmd->add_option("--config", pre.config, "JSON pipeline config (overrides preset)");
  pre_cmd->add_option("--in", pre.in, "Raw tuples (.jsonl or .tsv)")->required();
  pre_cmd->add_option("--out", pre.out, "Record JSONL output");
  pre_cmd->add_option("--report", pre.report, "Attrition report (JSON)");
  pre_cmd->add_option("--min-attr-freq", pre.min_attr_freq);
  pre_cmd->add_option("--max-attr-freq", pre.max_attr_freq);

  SplitArgs sp;
  auto* split_cmd = app.add_subcommand("split", "Seeded train/valid/test split");
  split_cmd->add_option("--in", sp.in, "Record JSONL")->required();
  split_cmd->add_option("--out-dir", sp.out_dir, "Directory for {train,valid,test}.jsonl");
  split_cmd->add_option("--ratios", sp.ratios, "train,valid,test");

  StatsArgs st;
  auto* stats_cmd = app.add_subcommand("stats", "Sentence/single/multi counts per file");
  stats_cmd->add_option("inputs", st.inputs, "Record JSONL files")->required();
  stats_cmd->add_option("--report", st.report, "JSON report");

  EncodeArgs enc;
  auto* enc_cmd = app.add_subcommand("encode", "Records -> target strings");
  enc_cmd->add_option("--in", enc.in);
  enc_cmd->add_option("--out", enc.out);
  enc_cmd->add_option("--paradigm", enc.paradigm)->check(paradigm_check);
  enc_cmd->add_option("--tokenizer", enc.tokenizer, "whitespace | mock-subword:<n>");
  enc_cmd->add_option("--on-missing", enc.on_missing)
      ->check(CLI::IsMember({"skip", "error"}));
  enc_cmd->add_option("--order", enc.order)->check(CLI::IsMember({"title", "input"}));
  enc_cmd->add_flag("--shuffle", enc.shuffle, "Shuffle pairs using --seed");
  enc_cmd->add_option("--shuffle-seed", enc.shuffle_seed, "Shuffle pairs with this seed");

  DecodeArgs dec;
  auto* dec_cmd = app.add_subcommand("decode", "Generations -> pairs");
  dec_cmd->add_option("--in", dec.in);
  dec_cmd->add_option("--out", dec.out);
  dec_cmd->add_option("--paradigm", dec.paradigm)->check(paradigm_check);
  dec_cmd->add_option("--tokenizer", dec.tokenizer);
  dec_cmd->add_option("--records", dec.records,
                      "Record JSONL to look up titles missing from the input");

  EvaluateArgs ev;
  auto* ev_cmd = app.add_subcommand("evaluate", "Score predictions against gold");
  ev_cmd->add_option("--gold", ev.gold)->required();
  ev_cmd->add_option("--pred", ev.pred)->required();
  ev_cmd->add_option("--report", ev.report, "Machine-readable report (JSON)");
  ev_cmd->add_flag("--by-cardinality", ev.by_cardinality);
  ev_cmd->add_flag("--strict-ids", ev.strict_ids);

  OracleArgs orc;
  auto* orc_cmd = app.add_subcommand("oracle", "Pseudo-model generations from gold");
  orc_cmd->add_option("--in", orc.in);
  orc_cmd->add_option("--out", orc.out);
  orc_cmd->add_option("--paradigm", orc.paradigm)->check(paradigm_check);
  orc_cmd->add_option("--tokenizer", orc.tokenizer);
  orc_cmd->add_option("--p-drop", orc.noise.p_drop)->check(CLI::Range(0.0, 1.0));
  orc_cmd->add_option("--p-attr", orc.noise.p_attr)->check(CLI::Range(0.0, 1.0));
  orc_cmd->add_option("--p-val", orc.noise.p_val)->check(CLI::Range(0.0, 1.0));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidationError;
  }

  try {
    if (*pre_cmd) return do_preprocess(pre, ctx);
    if (*split_cmd) return do_split(sp, ctx);
    if (*stats_cmd) return do_stats(st, ctx);
    if (*enc_cmd) return do_encode(enc, ctx);
    if (*dec_cmd) return do_decode(dec, ctx);
    if (*ev_cmd) return do_evaluate(ev, ctx);
    if (*orc_cmd) return do_oracle(orc, ctx);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }
  return kValidationError;
}

}  // namespace avegen::cli
