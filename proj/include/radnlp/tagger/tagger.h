#pragma once

#include <string>
#include <vector>

#include "radnlp/corpus/iobes.h"
#include "radnlp/corpus/vocabulary.h"
#include "radnlp/nn/checkpoint.h"
#include "radnlp/tagger/config.h"
#include "radnlp/tagger/model.h"
#include "radnlp/tagger/trainer.h"

namespace radnlp::tagger {

// Row-major n x C tag indices of a grid.
std::vector<std::uint8_t> grid_targets(const corpus::TagGrid& grid);

// Per-cell argmax. Ties prefer O, then S, B, I, E.
corpus::TagGrid decode_argmax(const TagProbabilities& probs);

// Mean cross-entropy of the true grid; throws Error on a shape mismatch.
double loss(const SequenceModel& m, std::span<const std::size_t> x,
            const corpus::TagGrid& grid);

// Chunks sequences longer than max_len.
corpus::TagGrid predict_tags(const SequenceModel& m, std::span<const std::size_t> x);

// The joint NER + negation tagger: configuration, vocabulary and weights.
class Tagger {
 public:
  Tagger(TaggerConfig config, corpus::Vocabulary vocab, SequenceModel model);

  // Fresh model; `initial_embedding` (|V| x d) seeds W, otherwise W is
  // drawn from (-0.01, 0.01).
  static Tagger create(const TaggerConfig& config, corpus::Vocabulary vocab,
                       const nn::Matrix* initial_embedding = nullptr);

  TrainLog train(const std::vector<corpus::LabelledSentence>& data,
                 const std::function<void(std::size_t, double)>& on_epoch = {});

  corpus::TagGrid tag(const corpus::Sentence& s) const;
  std::vector<corpus::TaggedSentence> tag_report(const std::string& text,
                                                 const std::string& report_id) const;

  const TaggerConfig& config() const { return config_; }
  const corpus::Vocabulary& vocabulary() const { return vocab_; }
  const SequenceModel& model() const { return model_; }
  SequenceModel& model() { return model_; }

  nn::Checkpoint to_checkpoint() const;
  static Tagger from_checkpoint(const nn::Checkpoint& ckpt);

 private:
  TaggerConfig config_;
  corpus::Vocabulary vocab_;
  SequenceModel model_;
};

Example make_example(const corpus::LabelledSentence& ls,
                     const corpus::Vocabulary& vocab);

}  // namespace radnlp::tagger
