#include "radnlp/nn/optim.h"

#include <cmath>

#include "radnlp/error.h"

namespace radnlp::nn {

namespace {

void check_finite(std::span<const ParamSlot> slots) {
  for (const auto& s : slots) {
    if (!s.grad->all_finite()) throw Error("non-finite gradient in " + s.name);
  }
}

void ensure_state(std::vector<Matrix>& state, std::span<const ParamSlot> slots) {
  if (state.empty()) {
    for (const auto& s : slots) state.push_back(Matrix::zeros_like(*s.value));
  }
  if (state.size() != slots.size()) throw Error("optimizer: slot count changed");
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!state[i].same_shape(*slots[i].value) ||
        !slots[i].grad->same_shape(*slots[i].value)) {
      throw Error("optimizer: shape mismatch in " + slots[i].name);
    }
  }
}

}  // namespace

ClipResult clip_global_norm(std::span<const ParamSlot> slots, double clip_norm) {
  check_finite(slots);
  double sq = 0.0;
  for (const auto& s : slots) sq += s.grad->squared_norm();
  ClipResult r;
  r.norm = std::sqrt(sq);
  if (clip_norm > 0.0 && r.norm > clip_norm) {
    r.scale = clip_norm / r.norm;
    for (const auto& s : slots) {
      for (double& g : s.grad->values()) g *= r.scale;
    }
  }
  return r;
}

NesterovSgd::NesterovSgd(double learning_rate, double momentum, double clip_norm)
    : learning_rate_(learning_rate), momentum_(momentum), clip_norm_(clip_norm) {
  if (!(learning_rate > 0.0)) throw Error("sgd: learning rate must be > 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw Error("sgd: momentum must be in [0, 1)");
}

ClipResult NesterovSgd::step(std::span<const ParamSlot> slots) {
  ensure_state(velocity_, slots);
  ClipResult clip = clip_global_norm(slots, clip_norm_);
  const double mu = momentum_;
  const double lr = learning_rate_;
  for (std::size_t t = 0; t < slots.size(); ++t) {
    double* theta = slots[t].value->data();
    const double* g = slots[t].grad->data();
    double* v = velocity_[t].data();
    const std::size_t n = slots[t].value->size();
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = mu * v[i] - lr * g[i];
      theta[i] += mu * v[i] - lr * g[i];
    }
  }
  return clip;
}

void adagrad_update(std::span<double> theta, std::span<double> acc,
                    std::span<const double> grad, double learning_rate,
                    double eps) {
  for (std::size_t i = 0; i < theta.size(); ++i) {
    acc[i] += grad[i] * grad[i];
    theta[i] -= learning_rate * grad[i] / (std::sqrt(acc[i]) + eps);
  }
}

AdaGrad::AdaGrad(double learning_rate, double eps)
    : learning_rate_(learning_rate), eps_(eps) {
  if (!(learning_rate > 0.0)) throw Error("adagrad: learning rate must be > 0");
}

void AdaGrad::step(std::span<const ParamSlot> slots) {
  ensure_state(acc_, slots);
  check_finite(slots);
  for (std::size_t t = 0; t < slots.size(); ++t) {
    adagrad_update(slots[t].value->values(), acc_[t].values(),
                   slots[t].grad->values(), learning_rate_, eps_);
  }
}

}  // namespace radnlp::nn
