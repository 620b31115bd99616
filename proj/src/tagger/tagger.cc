#include "radnlp/tagger/tagger.h"

#include <sstream>

#include "radnlp/corpus/tokenizer.h"
#include "radnlp/error.h"

namespace radnlp::tagger {

using corpus::Tag;
using corpus::TagGrid;

std::vector<std::uint8_t> grid_targets(const TagGrid& grid) {
  std::vector<std::uint8_t> out;
  out.reserve(grid.size() * corpus::kNumChannels);
  for (std::size_t t = 0; t < grid.size(); ++t) {
    for (int c = 0; c < corpus::kNumChannels; ++c) {
      out.push_back(static_cast<std::uint8_t>(grid.at(t, c)));
    }
  }
  return out;
}

TagGrid decode_argmax(const TagProbabilities& probs) {
  if (probs.channels != corpus::kNumChannels || probs.tags != corpus::kNumTags) {
    throw Error("decode: expected 5 channels of 5 tags");
  }
  static constexpr Tag kPreference[] = {Tag::O, Tag::S, Tag::B, Tag::I, Tag::E};
  TagGrid grid(probs.n);
  for (std::size_t t = 0; t < probs.n; ++t) {
    for (int c = 0; c < corpus::kNumChannels; ++c) {
      Tag best = kPreference[0];
      double best_p = probs.at(t, c, static_cast<std::size_t>(best));
      for (Tag cand : kPreference) {
        const double p = probs.at(t, c, static_cast<std::size_t>(cand));
        if (p > best_p) {
          best = cand;
          best_p = p;
        }
      }
      grid.set(t, c, best);
    }
  }
  return grid;
}

double loss(const SequenceModel& m, std::span<const std::size_t> x,
            const TagGrid& grid) {
  if (grid.size() != x.size()) throw Error("loss: grid length differs from sentence");
  if (m.shape().channels != corpus::kNumChannels) throw Error("loss: model is not a tagger");
  const auto targets = grid_targets(grid);
  return loss_and_grad(m, x, targets);
}

TagGrid predict_tags(const SequenceModel& m, std::span<const std::size_t> x) {
  if (x.empty()) return TagGrid(0);
  return decode_argmax(forward_chunked(m, x));
}

Example make_example(const corpus::LabelledSentence& ls,
                     const corpus::Vocabulary& vocab) {
  return {corpus::encode_sentence(ls.sentence, vocab), grid_targets(ls.grid)};
}

Tagger::Tagger(TaggerConfig config, corpus::Vocabulary vocab, SequenceModel model)
    : config_(std::move(config)), vocab_(std::move(vocab)), model_(std::move(model)) {
  config_.validate();
  if (model_.shape().vocab_size != vocab_.size()) {
    throw Error("tagger: model vocabulary size differs from vocabulary");
  }
}

Tagger Tagger::create(const TaggerConfig& config, corpus::Vocabulary vocab,
                      const nn::Matrix* initial_embedding) {
  config.validate();
  nn::Rng rng(config.seed);
  auto model = SequenceModel::initialized(config.shape(vocab.size()), rng,
                                          initial_embedding);
  return Tagger(config, std::move(vocab), std::move(model));
}

TrainLog Tagger::train(const std::vector<corpus::LabelledSentence>& data,
                       const std::function<void(std::size_t, double)>& on_epoch) {
  std::vector<Example> examples;
  examples.reserve(data.size());
  for (const auto& ls : data) {
    if (!ls.sentence.empty()) examples.push_back(make_example(ls, vocab_));
  }
  TrainOptions opt;
  opt.epochs = config_.epochs;
  opt.batch_size = config_.batch_size;
  opt.learning_rate = config_.learning_rate;
  opt.momentum = config_.momentum;
  opt.clip_norm = config_.clip_norm;
  opt.fine_tune_embeddings = config_.fine_tune_embeddings;
  opt.seed = config_.seed;
  return train_model(model_, examples, opt, on_epoch);
}

TagGrid Tagger::tag(const corpus::Sentence& s) const {
  const auto x = corpus::encode_sentence(s, vocab_);
  return predict_tags(model_, x);
}

std::vector<corpus::TaggedSentence> Tagger::tag_report(const std::string& text,
                                                       const std::string& id) const {
  std::vector<corpus::TaggedSentence> out;
  for (const auto& s : corpus::tokenize_and_split(text, id)) {
    corpus::TaggedSentence ts;
    ts.report_id = id;
    for (const auto& t : s.tokens) ts.surfaces.push_back(t.surface);
    ts.grid = tag(s);
    out.push_back(std::move(ts));
  }
  return out;
}

nn::Checkpoint Tagger::to_checkpoint() const {
  nn::Checkpoint ckpt;
  std::ostringstream cfg, voc;
  config_.write(cfg);
  vocab_.write(voc);
  ckpt.meta["kind"] = "tagger";
  ckpt.meta["config"] = cfg.str();
  ckpt.meta["vocabulary"] = voc.str();
  model_.write_to(ckpt);
  return ckpt;
}

Tagger Tagger::from_checkpoint(const nn::Checkpoint& ckpt) {
  if (ckpt.get("kind") != "tagger") throw Error("checkpoint does not hold a tagger");
  std::istringstream cfg(ckpt.get("config")), voc(ckpt.get("vocabulary"));
  auto config = TaggerConfig::from_key_values(parse_key_values(cfg));
  auto vocab = corpus::Vocabulary::read(voc);
  return Tagger(config, std::move(vocab), SequenceModel::read_from(ckpt));
}

}  // namespace radnlp::tagger
