#pragma once

#include <span>
#include <vector>

#include "radnlp/nn/matrix.h"
#include "radnlp/nn/params.h"

namespace radnlp::nn {

struct ClipResult {
  double norm = 0.0;   // global L2 norm before clipping
  double scale = 1.0;  // factor applied to every gradient
};

// Scales all gradients by clip_norm / norm when the global norm exceeds
// clip_norm. Throws Error naming the first tensor with a non-finite entry.
ClipResult clip_global_norm(std::span<const ParamSlot> slots, double clip_norm);

// SGD with Nesterov momentum:
//   v     <- mu * v - lr * g
//   theta <- theta + mu * v - lr * g
// applied after global-norm clipping. Velocities are created on first use
// and keyed by slot position.
class NesterovSgd {
 public:
  NesterovSgd(double learning_rate, double momentum = 0.9, double clip_norm = 5.0);

  ClipResult step(std::span<const ParamSlot> slots);

  double learning_rate() const { return learning_rate_; }
  double momentum() const { return momentum_; }
  double clip_norm() const { return clip_norm_; }
  const std::vector<Matrix>& velocity() const { return velocity_; }

 private:
  double learning_rate_;
  double momentum_;
  double clip_norm_;
  std::vector<Matrix> velocity_;
};

inline constexpr double kAdaGradEps = 1e-8;

// acc += g^2; theta -= lr * g / (sqrt(acc) + eps), elementwise.
void adagrad_update(std::span<double> theta, std::span<double> acc,
                    std::span<const double> grad, double learning_rate,
                    double eps);

class AdaGrad {
 public:
  explicit AdaGrad(double learning_rate, double eps = kAdaGradEps);

  void step(std::span<const ParamSlot> slots);

  const std::vector<Matrix>& accumulators() const { return acc_; }

 private:
  double learning_rate_;
  double eps_;
  std::vector<Matrix> acc_;
};

}  // namespace radnlp::nn
