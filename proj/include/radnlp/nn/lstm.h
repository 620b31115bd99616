#pragma once

#include <string>
#include <vector>

#include "radnlp/nn/matrix.h"
#include "radnlp/nn/params.h"
#include "radnlp/nn/random.h"

namespace radnlp::nn {

// Peephole LSTM cell (Graves 2013):
//   i  = sig(x W_xi + h W_hi + p_i * c_prev + b_i)
//   f  = sig(x W_xf + h W_hf + p_f * c_prev + b_f)
//   g  = tanh(x W_xc + h W_hc + b_c)
//   c  = f * c_prev + i * g
//   o  = sig(x W_xo + h W_ho + p_o * c + b_o)
//   h  = o * tanh(c)
// Gate blocks are packed along columns in the order [i f c o].
struct LstmParams {
  std::size_t input_size = 0;
  std::size_t cell_size = 0;
  bool peephole = true;

  Matrix w_x;   // d x 4k
  Matrix w_h;   // k x 4k
  Matrix peep;  // 3 x k, rows [i f o]; unused when !peephole
  Matrix bias;  // 1 x 4k

  LstmParams() = default;
  LstmParams(std::size_t d, std::size_t k, bool peephole = true);

  // Weights uniform in +-sqrt(6 / (fan_in + fan_out)) per gate block,
  // forget-gate bias 1, other biases and peepholes 0.
  static LstmParams initialized(std::size_t d, std::size_t k, Rng& rng,
                                bool peephole = true);

  LstmParams zeros_like() const;
  void append_to(ParamList& out, const std::string& prefix);
  void append_to(ConstParamList& out, const std::string& prefix) const;
};

struct LstmState {
  Vector h;
  Vector c;
};

// Everything a backward pass needs from one forward step.
struct CellCache {
  Vector x, h_prev, c_prev;
  Vector i, f, g, o;
  Vector c, tanh_c, h;
};

// Throws Error on shape mismatch.
LstmState lstm_cell_step(const LstmParams& p, std::span<const double> x,
                         std::span<const double> h_prev,
                         std::span<const double> c_prev,
                         CellCache* cache = nullptr);

// dh, dc: gradients flowing into h_t and c_t. Accumulates parameter
// gradients into `grads` and writes dx, dh_prev, dc_prev.
void lstm_cell_backward(const LstmParams& p, const CellCache& cache,
                        std::span<const double> dh, std::span<const double> dc,
                        LstmParams& grads, std::span<double> dx,
                        std::span<double> dh_prev, std::span<double> dc_prev);

struct LstmLayerCache {
  std::vector<CellCache> steps;  // indexed by sequence position
  std::vector<bool> mask;
  bool reverse = false;
};

struct LstmLayerOutput {
  Matrix h;           // n x k, zero rows at masked positions
  LstmState final_state;
};

// Runs the cell over the rows of `inputs` (n x d). Masked-out positions
// carry the state through unchanged and emit a zero row. With reverse=true
// the sequence is read back to front; rows stay aligned to positions.
LstmLayerOutput lstm_layer_forward(const LstmParams& p, const Matrix& inputs,
                                   const std::vector<bool>& mask, bool reverse,
                                   LstmLayerCache* cache = nullptr,
                                   const LstmState* initial = nullptr);

// BPTT through a cached layer. dh: n x k gradient on the layer output.
// Returns dInputs (n x d); masked rows are zero.
Matrix lstm_layer_backward(const LstmParams& p, const LstmLayerCache& cache,
                           const Matrix& dh, LstmParams& grads);

}  // namespace radnlp::nn
