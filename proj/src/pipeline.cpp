// Copyright 2026 The tweetprep Authors
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


#include "tweetprep/pipeline.hpp"

#include <charconv>
#include <set>

#include <json.hpp>

#include "tweetprep/bench.hpp"
#include "tweetprep/error.hpp"
#include "tweetprep/io.hpp"
#include "tweetprep/records.hpp"

namespace tweetprep {
namespace {

namespace fs = std::filesystem;

constexpr std::pair<Stage, std::string_view> kStageNames[] = {
    {Stage::kNormalize, "normalize"}, {Stage::kTrainTokenizer, "train-tokenizer"},
    {Stage::kEncode, "encode"},       {Stage::kPack, "pack"},
    {Stage::kStats, "stats"},         {Stage::kSplit, "split"},
    {Stage::kPrompt, "prompt"},       {Stage::kCost, "cost"},
    {Stage::kBench, "bench"},
};

template <typename T>
T ParseNumber(const std::string& key, const std::string& value) {
  T out{};
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || p != value.data() + value.size()) {
    throw BadConfig("invalid value '" + value + "' for " + key);
  }
  return out;
}

bool ParseBool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw BadConfig("invalid boolean '" + value + "' for " + key);
}

void Require(bool ok, std::string_view stage, std::string_view what) {
  if (!ok) throw BadConfig(std::string(stage) + ": " + std::string(what));
}

void RequireFile(const fs::path& p, std::string_view what) {
  if (!fs::exists(p)) throw IoFailure(std::string(what) + " not found: " + p.string());
}

EmojiLexicon LoadLexicon(const PipelineConfig& cfg) {
  return cfg.lexicon.empty() ? EmojiLexicon::bundled() : EmojiLexicon::load(cfg.lexicon);
}

// The pre-training filter runs on normalized text: retweets, then short ones.
struct Filtered {
  std::vector<NormalizedText> kept;
  FilterCounters counters;
};

Filtered FilterNormalized(std::vector<NormalizedText> texts, const BpeModel& model,
                          const PipelineConfig& cfg) {
  const auto verdicts = parallel_map(texts, cfg.workers, [&](const NormalizedText& t) {
    return classify_pretrain(RawTweet{t.source_id, t.text, t.is_retweet}, model, cfg.min_tokens,
                             cfg.count_mode);
  });
  Filtered f;
  f.counters.n_input = texts.size();
  for (std::size_t i = 0; i < texts.size(); ++i) {
    switch (verdicts[i]) {
      case FilterVerdict::kKeep:
        f.kept.push_back(std::move(texts[i]));
        break;
      case FilterVerdict::kRetweet:
        ++f.counters.n_dropped_retweets;
        break;
      case FilterVerdict::kTooShort:
        ++f.counters.n_dropped_short;
        break;
    }
  }
  return f;
}

std::string FilterSummary(const FilterCounters& c) {
  return "kept " + std::to_string(c.kept()) + " of " + std::to_string(c.n_input) +
         " (dropped " + std::to_string(c.n_dropped_retweets) + " retweets, " +
         std::to_string(c.n_dropped_short) + " short)";
}

fs::path Sidecar(const fs::path& output, std::string_view suffix) {
  fs::path p = output;
  p += suffix;
  return p;
}

std::string RunNormalize(const PipelineConfig& cfg) {
  const auto tweets = parse_tweets(read_file(cfg.input), cfg.input.string());
  const EmojiLexicon lex = LoadLexicon(cfg);
  const auto lines = parallel_map(tweets, cfg.workers, [&](const RawTweet& t) {
    return normalized_record(normalize_tweet(t, lex));
  });
  write_file_atomic(cfg.output, join_lines(lines));
  return "normalized " + std::to_string(lines.size()) + " tweets";
}

std::string RunTrainTokenizer(const PipelineConfig& cfg) {
  const auto texts = parse_normalized(read_file(cfg.input), cfg.input.string());
  BpeTrainOptions opts;
  opts.vocab_size = cfg.vocab_size;
  opts.workers = cfg.workers;
  BpeTrainer trainer(opts);
  for (const auto& t : texts) {
    if (!t.is_retweet) trainer.add(t.text);
  }
  const BpeModel model = trainer.train();
  model.save(cfg.model_dir);
  return "trained " + std::to_string(model.merges().size()) + " merges, vocabulary of " +
         std::to_string(model.vocab_size()) + " over " + std::to_string(trainer.num_words()) +
         " words";
}

std::string RunEncode(const PipelineConfig& cfg) {
  const BpeModel model = BpeModel::load(cfg.model_dir);
  auto f = FilterNormalized(parse_normalized(read_file(cfg.input), cfg.input.string()), model, cfg);
  const auto lines = parallel_map(f.kept, cfg.workers, [&](const NormalizedText& t) {
    return encoded_record(model.encode(t.text, t.source_id));
  });
  write_file_atomic(cfg.output, join_lines(lines));
  return "encoded: " + FilterSummary(f.counters);
}

std::string RunPack(const PipelineConfig& cfg) {
  const auto seqs = parse_encoded(read_file(cfg.input), cfg.input.string());
  const auto blocks = pack_blocks(seqs, cfg.block_len);
  write_file_atomic(cfg.output, serialize_blocks(blocks, cfg.block_len));
  std::string summary = "packed " + std::to_string(seqs.size()) + " sequences into " +
                        std::to_string(blocks.size()) + " blocks of " +
                        std::to_string(cfg.block_len);
  if (cfg.mask_rate > 0) {
    const BpeModel model = BpeModel::load(cfg.model_dir);
    MaskingOptions mo;
    mo.rate = cfg.mask_rate;
    mo.vocab_size = model.vocab_size();
    mo.n_reserved = model.num_reserved();
    mo.entity_tokens_eligible = cfg.mask_entities;
    for (const auto& b : blocks) {
      for (TokenId id : b.ids) {
        if (id < 0 || static_cast<std::size_t>(id) >= model.vocab_size()) {
          throw UnknownId("token id " + std::to_string(id) + " outside the model vocabulary");
        }
      }
    }
    std::vector<std::size_t> index(blocks.size());
    for (std::size_t i = 0; i < index.size(); ++i) index[i] = i;
    const auto masked = parallel_map(index, cfg.workers, [&](std::size_t i) {
      return mask_block(blocks[i], mo, block_seed(cfg.seed, i));
    });
    write_file_atomic(Sidecar(cfg.output, ".masked"), serialize_masked(masked, cfg.block_len));
    summary += "; masked copy written";
  }
  return summary;
}

std::string RunStats(const PipelineConfig& cfg) {
  const BpeModel model = BpeModel::load(cfg.model_dir);
  auto f = FilterNormalized(parse_normalized(read_file(cfg.input), cfg.input.string()), model, cfg);
  const CorpusReport report = build_corpus_report(f.kept, model, f.counters);
  write_file_atomic(cfg.output, report.to_json());
  const fs::path dir = cfg.output.parent_path();
  const std::string stem = cfg.output.stem().string();
  write_file_atomic(dir / (stem + ".tokens.csv"), report.lengths.tokens.to_csv());
  write_file_atomic(dir / (stem + ".chars.csv"), report.lengths.chars.to_csv());
  for (const auto& [kind, h] : report.special) {
    write_file_atomic(dir / (stem + "." + std::string(kind_name(kind)) + ".csv"), h.to_csv());
  }
  return "stats: " + FilterSummary(f.counters) + ", " + std::to_string(report.n_tokens) +
         " tokens";
}

std::vector<DatasetManifest> LoadManifests(const PipelineConfig& cfg) {
  std::vector<DatasetManifest> out;
  std::set<std::string> names;
  for (const auto& [name, path] : cfg.manifests) {
    if (!names.insert(name).second) throw BadConfig("dataset '" + name + "' given twice");
    RequireFile(path, "manifest");
    out.push_back(parse_manifest(read_file(path), name));
  }
  return out;
}

std::string RunSplit(const PipelineConfig& cfg) {
  const auto manifests = LoadManifests(cfg);
  std::map<std::string, FoldAssignment> assignments;
  std::vector<std::string> lines;
  std::string summary;
  for (const auto& m : manifests) {
    const FoldAssignment a = stratified_kfold(m, cfg.k, cfg.seed, cfg.workers);
    for (const auto& inst : m.instances) lines.push_back(split_record(m.name, inst.id, a.fold(inst.id)));
    for (const auto& diff : compare_with_published(m)) summary += "warning: " + diff + "\n";
    assignments.emplace(m.name, a);
  }
  write_file_atomic(cfg.output, join_lines(lines));
  summary += "assigned " + std::to_string(lines.size()) + " instances to " + std::to_string(cfg.k) +
             " folds";
  if (!cfg.held_out.empty()) {
    const OodSplit split = leave_one_dataset_out(manifests, cfg.held_out, assignments, cfg.fold);
    std::vector<std::string> ood;
    for (const auto& key : split.train_ids) {
      ood.push_back(nlohmann::ordered_json{{"id", key.id}, {"dataset", key.dataset}, {"role", "train"}}.dump());
    }
    for (const auto& key : split.test_ids) {
      ood.push_back(nlohmann::ordered_json{{"id", key.id}, {"dataset", key.dataset}, {"role", "test"}}.dump());
    }
    write_file_atomic(cfg.ood_output, join_lines(ood));
    summary += "; held out " + cfg.held_out + " fold " + std::to_string(cfg.fold) + ": " +
               std::to_string(split.train_ids.size()) + " train, " +
               std::to_string(split.test_ids.size()) + " test";
  }
  return summary;
}

std::string RunPrompt(const PipelineConfig& cfg) {
  const DatasetManifest m = parse_manifest(read_file(cfg.input), cfg.input.stem().string());
  std::vector<std::string> lines;
  lines.reserve(m.instances.size());
  for (const auto& inst : m.instances) {
    if (cfg.chat) {
      lines.push_back(chat_to_json(render_chat_messages(inst.text, inst.label)));
    } else {
      const auto label = cfg.with_labels ? std::optional<std::string_view>(inst.label) : std::nullopt;
      lines.push_back(nlohmann::ordered_json{
          {"id", inst.id}, {"prompt", render_causal_prompt(cfg.task, inst.text, label)}}.dump());
    }
  }
  write_file_atomic(cfg.output, join_lines(lines));
  return "rendered " + std::to_string(lines.size()) + (cfg.chat ? " chat records" : " prompts");
}

std::string RunCost(const PipelineConfig& cfg) {
  Pricing pricing;
  if (!cfg.pricing.empty()) {
    RequireFile(cfg.pricing, "pricing file");
    pricing = parse_pricing(parse_key_values(read_file(cfg.pricing), cfg.pricing.string()));
  }
  std::uint64_t n_tokens = 0;
  std::uint64_t n_tweets = 0;
  if (!cfg.input.empty() && (!cfg.n_tokens || !cfg.n_tweets)) {
    for (const auto& seq : parse_encoded(read_file(cfg.input), cfg.input.string())) {
      n_tokens += seq.ids.size();
      ++n_tweets;
    }
  }
  if (cfg.n_tokens) n_tokens = *cfg.n_tokens;
  if (cfg.n_tweets) n_tweets = *cfg.n_tweets;
  const CostReport report = estimate_cost(n_tokens, n_tweets, pricing);
  if (!cfg.output.empty()) write_file_atomic(cfg.output, report.to_json());
  return report.to_json();
}

std::string RunBench(const PipelineConfig& cfg) {
  auto tweets = parse_tweets(read_file(cfg.input), cfg.input.string());
  if (tweets.empty()) throw EmptyInput("benchmark input is empty");
  if (tweets.size() < cfg.n_samples) {
    throw BadConfig("bench needs " + std::to_string(cfg.n_samples) + " samples, input has " +
                    std::to_string(tweets.size()));
  }
  tweets.resize(cfg.n_samples);
  const BpeModel model = BpeModel::load(cfg.model_dir);
  const EmojiLexicon lex = LoadLexicon(cfg);
  BenchOptions opts;
  opts.repeats = cfg.repeats;
  opts.batch_size = cfg.batch_size;
  opts.block_len = cfg.block_len;
  const BenchReport report = bench_throughput(tweets, model, lex, opts);
  if (!cfg.output.empty()) write_file_atomic(cfg.output, report.to_json());
  return report.to_json();
}

}  // namespace

std::string_view stage_name(Stage stage) {
  for (const auto& [s, name] : kStageNames) {
    if (s == stage) return name;
  }
  return "?";
}

std::optional<Stage> parse_stage(std::string_view name) {
  for (const auto& [s, n] : kStageNames) {
    if (n == name) return s;
  }
  return std::nullopt;
}

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

void PipelineConfig::validate(Stage stage) const {
  const std::string_view s = stage_name(stage);
  Require(workers >= 1, s, "workers must be at least 1");
  Require(mask_rate >= 0.0 && mask_rate <= 1.0, s, "mask_rate must lie in [0, 1]");
  auto need_input = [&] {
    Require(!input.empty(), s, "--input is required");
    RequireFile(input, "input");
  };
  auto need_output = [&] { Require(!output.empty(), s, "--output is required"); };
  auto need_model = [&] {
    Require(!model_dir.empty(), s, "--model is required");
    RequireFile(model_dir / "merges.txt", "model merges");
    RequireFile(model_dir / "vocab.txt", "model vocabulary");
  };
  if (!lexicon.empty()) RequireFile(lexicon, "lexicon");
  switch (stage) {
    case Stage::kNormalize:
      need_input();
      need_output();
      break;
    case Stage::kTrainTokenizer:
      need_input();
      Require(!model_dir.empty(), s, "--model is required");
      Require(vocab_size > 0, s, "vocab_size must be positive");
      break;
    case Stage::kEncode:
    case Stage::kStats:
      need_input();
      need_model();
      need_output();
      break;
    case Stage::kPack:
      Require(block_len >= kMinBlockLen, s,
              "block_len must be at least " + std::to_string(kMinBlockLen));
      need_input();
      need_output();
      if (mask_rate > 0) need_model();
      break;
    case Stage::kSplit:
      Require(!manifests.empty(), s, "at least one --manifest NAME=PATH is required");
      Require(k >= 2, s, "k must be at least 2");
      need_output();
      if (!held_out.empty()) {
        Require(!ood_output.empty(), s, "--ood-output is required with --held-out");
        Require(fold < k, s, "fold must be below k");
      }
      break;
    case Stage::kPrompt:
      need_input();
      need_output();
      Require(!(chat && !with_labels), s, "chat records always carry the label");
      break;
    case Stage::kCost:
      if (!n_tokens || !n_tweets) need_input();
      break;
    case Stage::kBench:
      Require(block_len >= kMinBlockLen, s,
              "block_len must be at least " + std::to_string(kMinBlockLen));
      Require(repeats >= 1 && batch_size >= 1 && n_samples >= 1, s,
              "repeats, batch_size and n_samples must be positive");
      need_input();
      need_model();
      break;
  }
}

void apply_config(PipelineConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "input") cfg.input = value;
    else if (key == "output") cfg.output = value;
    else if (key == "model_dir") cfg.model_dir = value;
    else if (key == "lexicon") cfg.lexicon = value;
    else if (key == "pricing") cfg.pricing = value;
    else if (key == "ood_output") cfg.ood_output = value;
    else if (key.starts_with("manifest.")) cfg.manifests.emplace_back(key.substr(9), value);
    else if (key == "block_len") cfg.block_len = ParseNumber<std::size_t>(key, value);
    else if (key == "mask_rate") cfg.mask_rate = ParseNumber<double>(key, value);
    else if (key == "mask_entities") cfg.mask_entities = ParseBool(key, value);
    else if (key == "vocab_size") cfg.vocab_size = ParseNumber<std::size_t>(key, value);
    else if (key == "min_tokens") cfg.min_tokens = ParseNumber<std::size_t>(key, value);
    else if (key == "count_mode") {
      if (value == "subword") cfg.count_mode = TokenCountMode::kSubword;
      else if (value == "whitespace") cfg.count_mode = TokenCountMode::kWhitespace;
      else throw BadConfig("count_mode must be subword or whitespace");
    }
    else if (key == "seed") cfg.seed = ParseNumber<std::uint64_t>(key, value);
    else if (key == "batch_size") cfg.batch_size = ParseNumber<std::size_t>(key, value);
    else if (key == "repeats") cfg.repeats = ParseNumber<std::size_t>(key, value);
    else if (key == "n_samples") cfg.n_samples = ParseNumber<std::size_t>(key, value);
    else if (key == "workers") cfg.workers = ParseNumber<unsigned>(key, value);
    else if (key == "k") cfg.k = ParseNumber<std::size_t>(key, value);
    else if (key == "held_out") cfg.held_out = value;
    else if (key == "fold") cfg.fold = ParseNumber<std::size_t>(key, value);
    else if (key == "task") {
      const auto t = parse_task(value);
      if (!t) throw BadConfig("task must be sentiment or hate");
      cfg.task = *t;
    }
    else if (key == "chat") cfg.chat = ParseBool(key, value);
    else if (key == "with_labels") cfg.with_labels = ParseBool(key, value);
    else if (key == "n_tokens") cfg.n_tokens = ParseNumber<std::uint64_t>(key, value);
    else if (key == "n_tweets") cfg.n_tweets = ParseNumber<std::uint64_t>(key, value);
    else throw BadConfig("unknown config key '" + key + "'");
  }
}

std::string run_stage(const PipelineConfig& cfg, Stage stage) {
  cfg.validate(stage);
  switch (stage) {
    case Stage::kNormalize: return RunNormalize(cfg);
    case Stage::kTrainTokenizer: return RunTrainTokenizer(cfg);
    case Stage::kEncode: return RunEncode(cfg);
    case Stage::kPack: return RunPack(cfg);
    case Stage::kStats: return RunStats(cfg);
    case Stage::kSplit: return RunSplit(cfg);
    case Stage::kPrompt: return RunPrompt(cfg);
    case Stage::kCost: return RunCost(cfg);
    case Stage::kBench: return RunBench(cfg);
  }
  return {};
}

}  // namespace tweetprep
