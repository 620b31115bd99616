#pragma once

#include <cstdint>
#include <vector>

#include "radnlp/nn/matrix.h"
#include "radnlp/nn/random.h"
#include "radnlp/tagger/model.h"
#include "radnlp/tagger/trainer.h"

namespace radnlp::embeddings {

inline constexpr std::uint8_t kReplacedLabel = 0;
inline constexpr std::uint8_t kUnchangedLabel = 1;

struct CorruptionLmConfig {
  std::size_t dim = 50;
  std::size_t cell_size = 100;
  std::size_t max_len = 40;
  std::size_t epochs = 20;
  std::size_t batch_size = 10;
  double learning_rate = 0.5;
  double momentum = 0.9;
  double clip_norm = 5.0;
  double p_replace = 0.2;
  bool peephole = true;
  std::uint64_t seed = 1;

  tagger::ModelShape shape(std::size_t vocab_size) const;
};

// Each token is replaced with probability p by a different word drawn
// uniformly from the vocabulary. Labels: 0 replaced, 1 unchanged.
tagger::Example corrupt_sentence(const std::vector<std::size_t>& x, std::size_t vocab_size,
                                 double p_replace, nn::Rng& rng);

struct CorruptionLmResult {
  nn::Matrix embedding;  // the learned W
  tagger::TrainLog log;
};

// Trains the BiLSTM trunk with a one-channel, two-tag head to spot replaced
// words, drawing a fresh corruption every epoch. Throws Error on an empty
// corpus or a vocabulary of fewer than two words.
CorruptionLmResult corruption_lm_train(const std::vector<std::vector<std::size_t>>& sentences,
                                       std::size_t vocab_size, const CorruptionLmConfig& config);

}  // namespace radnlp::embeddings
