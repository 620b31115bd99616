#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "radnlp/tagger/model.h"

namespace radnlp::tagger {

struct Example {
  std::vector<std::size_t> x;
  std::vector<std::uint8_t> targets;  // x.size() * channels
};

struct TrainOptions {
  std::size_t epochs = 20;
  std::size_t batch_size = 10;
  double learning_rate = 0.5;
  double momentum = 0.9;
  double clip_norm = 5.0;
  bool fine_tune_embeddings = true;
  std::uint64_t seed = 1;
};

struct TrainLog {
  std::vector<double> epoch_loss;  // mean example loss seen during each epoch
  bool diverged = false;           // a non-finite loss stopped training
};

// Examples longer than max_len become consecutive max_len pieces.
std::vector<Example> split_long_examples(const std::vector<Example>& examples,
                                         std::size_t max_len);

// Mini-batch SGD with Nesterov momentum. The batch gradient is the mean of
// the per-example gradients, accumulated in shuffled order. With
// fine_tune_embeddings=false the embedding is never touched.
// Throws Error on an empty training set.
TrainLog train_model(SequenceModel& model, const std::vector<Example>& examples,
                     const TrainOptions& options,
                     const std::function<void(std::size_t, double)>& on_epoch = {});

// Same loop, but the examples of each epoch come from `epoch_examples(e)`,
// e.g. a fresh corruption of an unlabelled corpus.
using EpochSource = std::function<std::vector<Example>(std::size_t epoch)>;
TrainLog train_model(SequenceModel& model, const EpochSource& epoch_examples,
                     const TrainOptions& options,
                     const std::function<void(std::size_t, double)>& on_epoch = {});

}  // namespace radnlp::tagger
