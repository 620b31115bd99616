#include "radnlp/nn/lstm.h"

#include <algorithm>
#include <cmath>

#include "radnlp/error.h"

namespace radnlp::nn {

LstmParams::LstmParams(std::size_t d, std::size_t k, bool peep_on)
    : input_size(d),
      cell_size(k),
      peephole(peep_on),
      w_x(d, 4 * k),
      w_h(k, 4 * k),
      peep(3, k),
      bias(1, 4 * k) {}

LstmParams LstmParams::initialized(std::size_t d, std::size_t k, Rng& rng,
                                   bool peep_on) {
  LstmParams p(d, k, peep_on);
  const double rx = std::sqrt(6.0 / static_cast<double>(d + k));
  const double rh = std::sqrt(6.0 / static_cast<double>(k + k));
  for (double& v : p.w_x.values()) v = -rx + 2.0 * rx * uniform01(rng);
  for (double& v : p.w_h.values()) v = -rh + 2.0 * rh * uniform01(rng);
  for (std::size_t j = 0; j < k; ++j) p.bias(0, k + j) = 1.0;
  return p;
}

LstmParams LstmParams::zeros_like() const {
  return LstmParams(input_size, cell_size, peephole);
}

void LstmParams::append_to(ParamList& out, const std::string& prefix) {
  out.push_back({prefix + "W_x", &w_x});
  out.push_back({prefix + "W_h", &w_h});
  if (peephole) out.push_back({prefix + "peep", &peep});
  out.push_back({prefix + "b", &bias});
}

void LstmParams::append_to(ConstParamList& out, const std::string& prefix) const {
  out.push_back({prefix + "W_x", &w_x});
  out.push_back({prefix + "W_h", &w_h});
  if (peephole) out.push_back({prefix + "peep", &peep});
  out.push_back({prefix + "b", &bias});
}

LstmState lstm_cell_step(const LstmParams& p, std::span<const double> x,
                         std::span<const double> h_prev,
                         std::span<const double> c_prev, CellCache* cache) {
  const std::size_t k = p.cell_size;
  if (x.size() != p.input_size || h_prev.size() != k || c_prev.size() != k ||
      p.w_x.rows() != p.input_size || p.w_x.cols() != 4 * k ||
      p.w_h.rows() != k || p.w_h.cols() != 4 * k) {
    throw Error("lstm_cell_step: shape mismatch");
  }
  Vector z(p.bias.values().begin(), p.bias.values().end());
  add_vec_mat(x, p.w_x, z);
  add_vec_mat(h_prev, p.w_h, z);

  Vector i(k), f(k), g(k), o(k), c(k), tc(k), h(k);
  const bool peep = p.peephole;
  for (std::size_t j = 0; j < k; ++j) {
    const double cp = c_prev[j];
    i[j] = sigmoid(z[j] + (peep ? p.peep(0, j) * cp : 0.0));
    f[j] = sigmoid(z[k + j] + (peep ? p.peep(1, j) * cp : 0.0));
    g[j] = std::tanh(z[2 * k + j]);
    c[j] = f[j] * cp + i[j] * g[j];
    o[j] = sigmoid(z[3 * k + j] + (peep ? p.peep(2, j) * c[j] : 0.0));
    tc[j] = std::tanh(c[j]);
    h[j] = o[j] * tc[j];
  }
  if (cache) {
    cache->x.assign(x.begin(), x.end());
    cache->h_prev.assign(h_prev.begin(), h_prev.end());
    cache->c_prev.assign(c_prev.begin(), c_prev.end());
    cache->i = i;
    cache->f = f;
    cache->g = g;
    cache->o = o;
    cache->c = c;
    cache->tanh_c = tc;
    cache->h = h;
  }
  return {std::move(h), std::move(c)};
}

void lstm_cell_backward(const LstmParams& p, const CellCache& s,
                        std::span<const double> dh, std::span<const double> dc,
                        LstmParams& grads, std::span<double> dx,
                        std::span<double> dh_prev, std::span<double> dc_prev) {
  const std::size_t k = p.cell_size;
  const bool peep = p.peephole;
  Vector dz(4 * k);
  for (std::size_t j = 0; j < k; ++j) {
    const double dzo = dh[j] * s.tanh_c[j] * s.o[j] * (1.0 - s.o[j]);
    double dct = dc[j] + dh[j] * s.o[j] * (1.0 - s.tanh_c[j] * s.tanh_c[j]);
    if (peep) dct += dzo * p.peep(2, j);
    const double dzi = dct * s.g[j] * s.i[j] * (1.0 - s.i[j]);
    const double dzf = dct * s.c_prev[j] * s.f[j] * (1.0 - s.f[j]);
    const double dzg = dct * s.i[j] * (1.0 - s.g[j] * s.g[j]);
    dz[j] = dzi;
    dz[k + j] = dzf;
    dz[2 * k + j] = dzg;
    dz[3 * k + j] = dzo;
    double dcp = dct * s.f[j];
    if (peep) {
      dcp += dzi * p.peep(0, j) + dzf * p.peep(1, j);
      grads.peep(0, j) += dzi * s.c_prev[j];
      grads.peep(1, j) += dzf * s.c_prev[j];
      grads.peep(2, j) += dzo * s.c[j];
    }
    dc_prev[j] = dcp;
  }
  add_outer(s.x, dz, grads.w_x);
  add_outer(s.h_prev, dz, grads.w_h);
  axpy(1.0, dz, grads.bias.row(0));
  std::fill(dx.begin(), dx.end(), 0.0);
  std::fill(dh_prev.begin(), dh_prev.end(), 0.0);
  add_mat_vec(p.w_x, dz, dx);
  add_mat_vec(p.w_h, dz, dh_prev);
}

LstmLayerOutput lstm_layer_forward(const LstmParams& p, const Matrix& inputs,
                                   const std::vector<bool>& mask, bool reverse,
                                   LstmLayerCache* cache,
                                   const LstmState* initial) {
  const std::size_t n = inputs.rows();
  const std::size_t k = p.cell_size;
  if (mask.size() != n) throw Error("lstm_layer_forward: mask length mismatch");
  if (n > 0 && inputs.cols() != p.input_size) {
    throw Error("lstm_layer_forward: input width mismatch");
  }
  LstmLayerOutput out;
  out.h = Matrix(n, k);
  LstmState state = initial ? *initial : LstmState{Vector(k, 0.0), Vector(k, 0.0)};
  if (cache) {
    cache->steps.assign(n, CellCache{});
    cache->mask = mask;
    cache->reverse = reverse;
  }
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t t = reverse ? n - 1 - step : step;
    if (!mask[t]) continue;
    LstmState next = lstm_cell_step(p, inputs.row(t), state.h, state.c,
                                    cache ? &cache->steps[t] : nullptr);
    std::copy(next.h.begin(), next.h.end(), out.h.row(t).begin());
    state = std::move(next);
  }
  out.final_state = std::move(state);
  return out;
}

Matrix lstm_layer_backward(const LstmParams& p, const LstmLayerCache& cache,
                           const Matrix& dh, LstmParams& grads) {
  const std::size_t n = cache.steps.size();
  const std::size_t k = p.cell_size;
  Matrix dinputs(n, p.input_size);
  Vector dh_carry(k, 0.0), dc_carry(k, 0.0);
  Vector dh_total(k), dh_prev(k), dc_prev(k);
  for (std::size_t step = 0; step < n; ++step) {
    // Walk positions in the opposite order of the forward pass.
    const std::size_t t = cache.reverse ? step : n - 1 - step;
    if (!cache.mask[t]) continue;
    for (std::size_t j = 0; j < k; ++j) dh_total[j] = dh_carry[j] + dh(t, j);
    lstm_cell_backward(p, cache.steps[t], dh_total, dc_carry, grads,
                       dinputs.row(t), dh_prev, dc_prev);
    dh_carry.swap(dh_prev);
    dc_carry.swap(dc_prev);
  }
  return dinputs;
}

}  // namespace radnlp::nn
