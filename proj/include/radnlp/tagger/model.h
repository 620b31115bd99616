#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "radnlp/nn/checkpoint.h"
#include "radnlp/nn/lstm.h"
#include "radnlp/nn/matrix.h"
#include "radnlp/nn/params.h"
#include "radnlp/nn/random.h"

namespace radnlp::tagger {

// Dimensions of the embedding -> BiLSTM -> projection -> softmax trunk.
// The NER tagger uses channels = tags = 5; the corruption language model
// reuses the trunk with one channel of two tags.
struct ModelShape {
  std::size_t vocab_size = 0;
  std::size_t embedding_dim = 50;
  std::size_t cell_size = 100;
  std::size_t max_len = 40;
  std::size_t channels = 5;
  std::size_t tags = 5;
  bool peephole = true;
  // false: one linear map from the flattened 2*k*max_len vector to
  //        max_len*C*T logits (position dependent).
  // true:  a shared 2k -> C*T map applied at every position.
  bool per_position_projection = false;

  std::size_t cells_per_position() const { return channels * tags; }
  std::size_t proj_in() const {
    return per_position_projection ? 2 * cell_size : 2 * cell_size * max_len;
  }
  std::size_t proj_out() const {
    return per_position_projection ? cells_per_position()
                                   : max_len * cells_per_position();
  }
  void validate() const;
};

// n x C x T probabilities, row-major.
struct TagProbabilities {
  std::size_t n = 0;
  std::size_t channels = 0;
  std::size_t tags = 0;
  std::vector<double> data;

  double at(std::size_t t, std::size_t c, std::size_t tag) const {
    return data[(t * channels + c) * tags + tag];
  }
  std::span<const double> cell(std::size_t t, std::size_t c) const {
    return {data.data() + (t * channels + c) * tags, tags};
  }
};

class SequenceModel {
 public:
  SequenceModel() = default;
  explicit SequenceModel(const ModelShape& shape);  // all zeros

  // LSTM weights Glorot-uniform, forget bias 1, projection Glorot-uniform.
  // The embedding is copied from `embedding` when given (shape |V| x d),
  // otherwise drawn uniformly from (-0.01, 0.01).
  static SequenceModel initialized(const ModelShape& shape, nn::Rng& rng,
                                   const nn::Matrix* embedding = nullptr);

  SequenceModel zeros_like() const { return SequenceModel(shape_); }

  const ModelShape& shape() const { return shape_; }

  nn::Matrix& embedding() { return embedding_; }
  const nn::Matrix& embedding() const { return embedding_; }
  nn::LstmParams& forward_lstm() { return fwd_; }
  nn::LstmParams& backward_lstm() { return bwd_; }
  const nn::LstmParams& forward_lstm() const { return fwd_; }
  const nn::LstmParams& backward_lstm() const { return bwd_; }
  nn::Matrix& projection() { return proj_; }
  nn::Matrix& projection_bias() { return proj_bias_; }
  const nn::Matrix& projection() const { return proj_; }
  const nn::Matrix& projection_bias() const { return proj_bias_; }

  // Stable names: "W", "fwd.W_x", "fwd.W_h", "fwd.peep", "fwd.b", "bwd.*",
  // "P", "P.b". The embedding is omitted when include_embedding is false.
  nn::ParamList params(bool include_embedding = true);
  nn::ConstParamList params(bool include_embedding = true) const;

  void set_zero();

  void write_to(nn::Checkpoint& ckpt) const;
  static SequenceModel read_from(const nn::Checkpoint& ckpt);

  bool operator==(const SequenceModel& o) const;

 private:
  ModelShape shape_;
  nn::Matrix embedding_;
  nn::LstmParams fwd_;
  nn::LstmParams bwd_;
  nn::Matrix proj_;
  nn::Matrix proj_bias_;
};

// Probabilities for a sequence of 1..max_len word indices. Throws Error for
// an empty sequence, a longer one, or an index outside the vocabulary.
TagProbabilities forward(const SequenceModel& m, std::span<const std::size_t> x);

// Mean cross-entropy over the n x C cells. targets has n*C entries in
// [0, T). When `grads` is given, d(scale * loss) is accumulated into it.
double loss_and_grad(const SequenceModel& m, std::span<const std::size_t> x,
                     std::span<const std::uint8_t> targets,
                     SequenceModel* grads = nullptr, double scale = 1.0);

// Splits a long sequence into consecutive pieces of at most max_len.
std::vector<std::pair<std::size_t, std::size_t>> chunk_ranges(std::size_t n,
                                                              std::size_t max_len);

// forward() applied per chunk and concatenated, for any n >= 1.
TagProbabilities forward_chunked(const SequenceModel& m,
                                 std::span<const std::size_t> x);

}  // namespace radnlp::tagger
