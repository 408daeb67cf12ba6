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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tweetprep/bpe.hpp"
#include "tweetprep/corpus.hpp"
#include "tweetprep/domain.hpp"
#include "tweetprep/emoji.hpp"
#include "tweetprep/error.hpp"
#include "tweetprep/evaluate.hpp"
#include "tweetprep/normalize.hpp"
#include "tweetprep/pack.hpp"

namespace py = pybind11;
using namespace tweetprep;

namespace {

py::dict SpanDict(const EntitySpan& s) {
  py::dict d;
  d["kind"] = std::string(kind_name(s.kind));
  d["start"] = s.start;
  d["end"] = s.end;
  d["payload"] = s.payload;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tweet normalization, BPE tokenization, block packing and evaluation helpers.";

  static py::exception<Error> error(m, "Error");
  static py::exception<BadConfig> bad_config(m, "BadConfig", error.ptr());
  static py::exception<IoFailure> io_failure(m, "IoFailure", error.ptr());
  static py::exception<DataError> data_error(m, "DataError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const BadConfig& e) {
      py::set_error(bad_config, e.what());
    } catch (const IoFailure& e) {
      py::set_error(io_failure, e.what());
    } catch (const DataError& e) {
      py::set_error(data_error, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  // normalize ---------------------------------------------------------------
  py::class_<EmojiLexicon>(m, "EmojiLexicon")
      .def_static("bundled", &EmojiLexicon::bundled, py::return_value_policy::reference)
      .def_static("load", &EmojiLexicon::load, py::arg("path"))
      .def_static("with_overrides", &EmojiLexicon::with_overrides, py::arg("entries"))
      .def("lookup",
           [](const EmojiLexicon& lex, const std::string& seq) -> std::optional<std::string> {
             auto name = lex.lookup(unicode::Decode(seq));
             if (!name) return std::nullopt;
             return std::string(*name);
           })
      .def("__len__", &EmojiLexicon::size);

  m.def(
      "normalize_text",
      [](const std::string& text, const EmojiLexicon* lex) {
        return normalize_text(text, lex ? *lex : EmojiLexicon::bundled());
      },
      py::arg("text"), py::arg("lexicon") = nullptr);
  m.def(
      "normalize_tweet",
      [](const std::string& id, const std::string& text, bool is_retweet, const EmojiLexicon* lex) {
        const NormalizedText n =
            normalize_tweet({id, text, is_retweet}, lex ? *lex : EmojiLexicon::bundled());
        py::list spans;
        for (const auto& s : n.spans) spans.append(SpanDict(s));
        py::dict d;
        d["id"] = n.source_id;
        d["text"] = n.text;
        d["is_retweet"] = n.is_retweet;
        d["spans"] = spans;
        return d;
      },
      py::arg("id"), py::arg("text"), py::arg("is_retweet") = false, py::arg("lexicon") = nullptr);
  m.def(
      "scan_entities",
      [](const std::string& text, const EmojiLexicon* lex) {
        py::list out;
        for (const auto& s : scan_entities(std::string_view(text), lex ? *lex : EmojiLexicon::bundled())) {
          out.append(SpanDict(s));
        }
        return out;
      },
      py::arg("text"), py::arg("lexicon") = nullptr);
  m.def("extract_domain", &extract_domain, py::arg("url"));
  m.def(
      "emoji_name",
      [](const std::string& seq, const EmojiLexicon* lex) {
        return emoji_name(std::string_view(seq), lex ? *lex : EmojiLexicon::bundled());
      },
      py::arg("seq"), py::arg("lexicon") = nullptr);

  // bpetok ------------------------------------------------------------------
  py::class_<BpeModel>(m, "BpeModel")
      .def_static(
          "train",
          [](const std::vector<std::string>& corpus, std::size_t vocab_size, unsigned workers) {
            BpeTrainOptions o;
            o.vocab_size = vocab_size;
            o.workers = workers;
            py::gil_scoped_release release;
            return train_bpe(corpus, o);
          },
          py::arg("corpus"), py::arg("vocab_size"), py::arg("workers") = 1)
      .def_static("load", &BpeModel::load, py::arg("path"))
      .def("save", &BpeModel::save, py::arg("path"))
      .def("encode",
           [](const BpeModel& model, const std::string& text) { return model.encode(text).ids; })
      .def("decode", [](const BpeModel& model, const std::vector<TokenId>& ids) {
        return model.decode(ids);
      })
      .def("count_subwords", &BpeModel::count_subwords)
      .def("id_of", &BpeModel::id_of)
      .def("token", &BpeModel::token)
      .def_property_readonly("merges",
                             [](const BpeModel& model) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& mg : model.merges()) out.emplace_back(mg.left, mg.right);
                               return out;
                             })
      .def_property_readonly("vocab_size", &BpeModel::vocab_size)
      .def_property_readonly("num_reserved", &BpeModel::num_reserved);

  // pack --------------------------------------------------------------------
  m.def(
      "pack_blocks",
      [](const std::vector<std::vector<TokenId>>& docs, std::size_t block_len) {
        std::vector<TokenSequence> seqs;
        for (const auto& d : docs) seqs.push_back({d, {}});
        std::vector<std::pair<std::vector<TokenId>, std::size_t>> out;
        for (auto& b : pack_blocks(seqs, block_len)) out.emplace_back(std::move(b.ids), b.n_real);
        return out;
      },
      py::arg("docs"), py::arg("block_len") = kDefaultBlockLen);
  m.def(
      "mask_block",
      [](const std::vector<TokenId>& ids, std::size_t vocab_size, double rate, std::uint64_t seed,
         std::size_t n_reserved, bool entity_tokens_eligible) {
        MaskingOptions o{rate, vocab_size, n_reserved, entity_tokens_eligible};
        const MaskedBlock mb = mask_block({ids, ids.size()}, o, seed);
        return std::pair{mb.ids, mb.labels};
      },
      py::arg("ids"), py::arg("vocab_size"), py::arg("rate") = kDefaultMaskRate,
      py::arg("seed") = 0, py::arg("n_reserved") = 15, py::arg("entity_tokens_eligible") = false);
  m.def("block_seed", &block_seed, py::arg("global_seed"), py::arg("block_index"));
  m.def("estimate_block_count", &estimate_block_count, py::arg("total_bytes"),
        py::arg("avg_subwords_per_byte"), py::arg("block_len") = kDefaultBlockLen);
  m.attr("IGNORE_LABEL") = kIgnoreLabel;

  // evaluate ----------------------------------------------------------------
  m.def(
      "stratified_kfold",
      [](const std::vector<std::pair<std::string, std::string>>& id_labels, std::size_t k,
         std::uint64_t seed) {
        std::vector<Instance> inst;
        for (const auto& [id, label] : id_labels) inst.push_back({id, {}, label});
        return stratified_kfold(make_manifest("python", std::move(inst)), k, seed).fold_of;
      },
      py::arg("instances"), py::arg("k") = 5, py::arg("seed") = 0);
  m.def(
      "render_causal_prompt",
      [](const std::string& task, const std::string& text, std::optional<std::string> label) {
        const auto t = parse_task(task);
        if (!t) throw BadConfig("task must be 'sentiment' or 'hate'");
        return render_causal_prompt(*t, text,
                                    label ? std::optional<std::string_view>(*label) : std::nullopt);
      },
      py::arg("task"), py::arg("text"), py::arg("label") = std::nullopt);
  m.def(
      "render_chat_messages",
      [](const std::string& text, const std::string& label) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& msg : render_chat_messages(text, label).messages) {
          out.emplace_back(msg.role, msg.content);
        }
        return out;
      },
      py::arg("text"), py::arg("label"));
  m.def(
      "weighted_f1",
      [](const std::vector<std::string>& pred, const std::vector<std::string>& gold,
         const std::vector<std::string>& labels) { return weighted_f1(pred, gold, labels); },
      py::arg("predictions"), py::arg("gold"), py::arg("label_set") = std::vector<std::string>{});
  m.def(
      "estimate_cost",
      [](std::uint64_t n_tokens, std::uint64_t n_tweets) {
        const CostReport r = estimate_cost(n_tokens, n_tweets);
        py::dict d;
        d["n_tokens"] = r.n_tokens;
        d["n_tweets"] = r.n_tweets;
        d["input_cost"] = r.input_usd();
        d["output_cost"] = r.output_usd();
        d["total"] = r.total_usd();
        d["input_cost_nano"] = r.input_cost;
        d["output_cost_nano"] = r.output_cost;
        d["total_nano"] = r.total;
        return d;
      },
      py::arg("n_tokens"), py::arg("n_tweets"));
}
