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


// tweetprep: corpus preparation and evaluation-protocol stages.
//
//   tweetprep [--seed N] [--workers N] [--config FILE] <stage> [options]
//
// Exit status: 0 success, 1 usage, 2 data error, 3 I/O error.

#include <functional>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "tweetprep/error.hpp"
#include "tweetprep/io.hpp"
#include "tweetprep/pipeline.hpp"

namespace {

using tweetprep::PipelineConfig;
using Applier = std::function<void(PipelineConfig&)>;

// Registers an option whose value is copied into the config only when the
// user actually passed it, so config-file values survive otherwise.
template <typename T, typename Set>
void Opt(CLI::App* app, std::vector<Applier>& appliers, const std::string& name,
         const std::string& help, Set set) {
  auto value = std::make_shared<T>();
  CLI::Option* opt = app->add_option(name, *value, help);
  appliers.push_back([opt, value, set](PipelineConfig& c) {
    if (opt->count() > 0) set(c, *value);
  });
}

void Flag(CLI::App* app, std::vector<Applier>& appliers, const std::string& name,
          const std::string& help, std::function<void(PipelineConfig&)> set) {
  CLI::Option* opt = app->add_flag(name, help);
  appliers.push_back([opt, set](PipelineConfig& c) {
    if (opt->count() > 0) set(c);
  });
}

using Path = std::string;

void Input(CLI::App* a, std::vector<Applier>& ap, const std::string& help) {
  Opt<Path>(a, ap, "-i,--input", help, [](PipelineConfig& c, const Path& v) { c.input = v; });
}
void Output(CLI::App* a, std::vector<Applier>& ap, const std::string& help) {
  Opt<Path>(a, ap, "-o,--output", help, [](PipelineConfig& c, const Path& v) { c.output = v; });
}
void Model(CLI::App* a, std::vector<Applier>& ap) {
  Opt<Path>(a, ap, "-m,--model", "Tokenizer directory (merges.txt, vocab.txt)",
            [](PipelineConfig& c, const Path& v) { c.model_dir = v; });
}
void Lexicon(CLI::App* a, std::vector<Applier>& ap) {
  Opt<Path>(a, ap, "--lexicon", "Emoji lexicon (sequence<TAB>name)",
            [](PipelineConfig& c, const Path& v) { c.lexicon = v; });
}
void MinTokens(CLI::App* a, std::vector<Applier>& ap) {
  Opt<std::size_t>(a, ap, "--min-tokens", "Drop tweets with fewer tokens (default 10)",
                   [](PipelineConfig& c, std::size_t v) { c.min_tokens = v; });
  Opt<std::string>(a, ap, "--count-mode", "Token count used by the filter: subword|whitespace",
                   [](PipelineConfig& c, const std::string& v) {
                     tweetprep::apply_config(c, {{"count_mode", v}});
                   });
}
void BlockLen(CLI::App* a, std::vector<Applier>& ap) {
  Opt<std::size_t>(a, ap, "--block-len", "Block length (default 128)",
                   [](PipelineConfig& c, std::size_t v) { c.block_len = v; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tweet corpus preparation and evaluation-protocol toolkit", "tweetprep"};
  app.require_subcommand(1);
  app.fallthrough();

  std::vector<Applier> global;
  std::string config_path;
  app.add_option("--config", config_path, "key = value config file");
  Opt<std::uint64_t>(&app, global, "--seed", "Random seed (default 0)",
                     [](PipelineConfig& c, std::uint64_t v) { c.seed = v; });
  Opt<unsigned>(&app, global, "--workers", "Worker threads (default: hardware threads)",
                [](PipelineConfig& c, unsigned v) { c.workers = v; });

  std::map<CLI::App*, std::pair<tweetprep::Stage, std::vector<Applier>>> stages;
  auto stage = [&](tweetprep::Stage s, const std::string& help) {
    CLI::App* sub = app.add_subcommand(std::string(tweetprep::stage_name(s)), help);
    return std::pair{sub, &stages[sub].second};
  };

  {
    auto [s, ap] = stage(tweetprep::Stage::kNormalize, "Rewrite entities into tag form");
    stages[s].first = tweetprep::Stage::kNormalize;
    Input(s, *ap, "Tweets (JSONL: id, text, is_retweet)");
    Output(s, *ap, "Normalized tweets (JSONL with spans)");
    Lexicon(s, *ap);
  }
  {
    auto [s, ap] = stage(tweetprep::Stage::kTrainTokenizer, "Train the BPE tokenizer");
    stages[s].first = tweetprep::Stage::kTrainTokenizer;
    Input(s, *ap, "Normalized tweets");
    Model(s, *ap);
    Opt<std::size_t>(s, *ap, "--vocab-size", "Vocabulary size (default 100000)",
                     [](PipelineConfig& c, std::size_t v) { c.vocab_size = v; });
  }
  {
    auto [s, ap] = stage(tweetprep::Stage::kEncode, "Filter and encode normalized tweets");
    stages[s].first = tweetprep::Stage::kEncode;
    Input(s, *ap, "Normalized tweets");
    Model(s, *ap);
    Output(s, *ap, "Encoded records (JSONL: id, ids)");
    MinTokens(s, *ap);
  }
  {
    auto [s, ap] = stage(tweetprep::Stage::kPack, "Pack encoded tweets into blocks and mask them");
    stages[s].first = tweetprep::Stage::kPack;
    Input(s, *ap, "Encoded records");
    Output(s, *ap, "Block file; the masked copy goes to <output>.masked");
    Model(s, *ap);
    BlockLen(s, *ap);
    Opt<double>(s, *ap, "--mask-rate", "Masking rate, 0 disables (default 0.15)",
                [](PipelineConfig& c, double v) { c.mask_rate = v; });
    Flag(s, *ap, "--mask-entities", "Allow entity tokens to be masked",
         [](PipelineConfig& c) { c.mask_entities = true; });
  }
  {
    auto [s, ap] = stage(tweetprep::Stage::kStats, "Corpus report and histogram files");
    stages[s].first = tweetprep::Stage::kStats;
    Input(s, *ap, "Normalized tweets");
    Model(s, *ap);
    Output(s, *ap, "Report JSON; CSV files are written beside it");
    MinTokens(s, *ap);
  }
  {
    auto [s, ap] = stage(tweetprep::Stage::kSplit, "Stratified folds and leave-one-dataset-out splits");
    stages[s].first = tweetprep::Stage::kSplit;
    Opt<std::vector<std::string>>(
        s, *ap, "--manifest", "NAME=PATH of a labelled manifest (repeatable)",
        [](PipelineConfig& c, const std::vector<std::string>& v) {
          for (const auto& item : v) {
            const auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0) {
              throw tweetprep::BadConfig("--manifest expects NAME=PATH, got '" + item + "'");
            }
            c.manifests.emplace_back(item.substr(0, eq), item.substr(eq + 1));
          }
        });
    Output(s, *ap, "Fold records (JSONL: id, dataset, fold)");
    Opt<std::size_t>(s, *ap, "-k,--folds", "Number of folds (default 5)",
                     [](PipelineConfig& c, std::size_t v) { c.k = v; });
    Opt<std::string>(s, *ap, "--held-out", "Dataset to hold out",
                     [](PipelineConfig& c, const std::string& v) { c.held_out = v; });
    Opt<std::size_t>(s, *ap, "--fold", "Fold used as the held-out test fold",
                     [](PipelineConfig& c, std::size_t v) { c.fold = v; });
    Opt<Path>(s, *ap, "--ood-output", "Held-out split records (JSONL: id, dataset, role)",
              [](PipelineConfig& c, const Path& v) { c.ood_output = v; });
  }
  {
    auto [s, ap] = stage(tweetprep::Stage::kPrompt, "Render fine-tuning prompts");
    stages[s].first = tweetprep::Stage::kPrompt;
    Input(s, *ap, "Manifest (JSONL: id, text, label)");
    Output(s, *ap, "Prompt records");
    Opt<std::string>(s, *ap, "--task", "sentiment|hate",
                     [](PipelineConfig& c, const std::string& v) {
                       tweetprep::apply_config(c, {{"task", v}});
                     });
    Flag(s, *ap, "--chat", "Chat records instead of causal prompts",
         [](PipelineConfig& c) { c.chat = true; });
    Flag(s, *ap, "--no-label", "Inference form (prompt ends at 'A:')",
         [](PipelineConfig& c) { c.with_labels = false; });
  }
  {
    auto [s, ap] = stage(tweetprep::Stage::kCost, "Inference cost estimate");
    stages[s].first = tweetprep::Stage::kCost;
    Input(s, *ap, "Encoded records to count (optional with --tokens/--tweets)");
    Output(s, *ap, "Report JSON");
    Opt<std::uint64_t>(s, *ap, "--tokens", "Input token count",
                       [](PipelineConfig& c, std::uint64_t v) { c.n_tokens = v; });
    Opt<std::uint64_t>(s, *ap, "--tweets", "Tweet count",
                       [](PipelineConfig& c, std::uint64_t v) { c.n_tweets = v; });
    Opt<Path>(s, *ap, "--pricing", "Price file (key = value)",
              [](PipelineConfig& c, const Path& v) { c.pricing = v; });
  }
  {
    auto [s, ap] = stage(tweetprep::Stage::kBench, "Normalize+encode+pad throughput");
    stages[s].first = tweetprep::Stage::kBench;
    Input(s, *ap, "Raw tweets (JSONL)");
    Model(s, *ap);
    Lexicon(s, *ap);
    Output(s, *ap, "Report JSON");
    BlockLen(s, *ap);
    Opt<std::size_t>(s, *ap, "--repeats", "Passes (default 100)",
                     [](PipelineConfig& c, std::size_t v) { c.repeats = v; });
    Opt<std::size_t>(s, *ap, "--batch-size", "Samples per batch (default 1000)",
                     [](PipelineConfig& c, std::size_t v) { c.batch_size = v; });
    Opt<std::size_t>(s, *ap, "--n-samples", "Sample size (default 1000)",
                     [](PipelineConfig& c, std::size_t v) { c.n_samples = v; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(tweetprep::ErrorClass::kUsage);
  }

  CLI::App* chosen = app.get_subcommands().front();
  const auto& [which, appliers] = stages.at(chosen);
  try {
    PipelineConfig cfg;
    if (!config_path.empty()) {
      tweetprep::apply_config(cfg, tweetprep::parse_key_values(tweetprep::read_file(config_path),
                                                               config_path));
    }
    for (const auto& apply : global) apply(cfg);
    for (const auto& apply : appliers) apply(cfg);
    std::string summary = tweetprep::run_stage(cfg, which);
    if (summary.empty() || summary.back() != '\n') summary += '\n';
    std::cout << summary << std::flush;
    return 0;
  } catch (const tweetprep::Error& e) {
    std::cerr << "tweetprep " << chosen->get_name() << ": " << e.what() << "\n";
    return static_cast<int>(e.error_class());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "tweetprep " << chosen->get_name() << ": " << e.what() << "\n";
    return static_cast<int>(tweetprep::ErrorClass::kIo);
  } catch (const std::exception& e) {
    std::cerr << "tweetprep " << chosen->get_name() << ": " << e.what() << "\n";
    return static_cast<int>(tweetprep::ErrorClass::kData);
  }
}
