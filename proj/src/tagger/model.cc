#include "radnlp/tagger/model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "radnlp/error.h"
#include "radnlp/nn/softmax.h"

namespace radnlp::tagger {

using nn::Matrix;
using nn::Vector;

void ModelShape::validate() const {
  if (vocab_size == 0 || embedding_dim == 0 || cell_size == 0 || max_len == 0) {
    throw Error("model shape: dimensions must be positive");
  }
  if (channels == 0 || tags < 2) throw Error("model shape: need >= 1 channel and >= 2 tags");
}

SequenceModel::SequenceModel(const ModelShape& shape)
    : shape_(shape),
      embedding_(shape.vocab_size, shape.embedding_dim),
      fwd_(shape.embedding_dim, shape.cell_size, shape.peephole),
      bwd_(shape.embedding_dim, shape.cell_size, shape.peephole),
      proj_(shape.proj_in(), shape.proj_out()),
      proj_bias_(1, shape.proj_out()) {
  shape.validate();
}

SequenceModel SequenceModel::initialized(const ModelShape& shape, nn::Rng& rng,
                                         const Matrix* embedding) {
  SequenceModel m(shape);
  if (embedding) {
    if (embedding->rows() != shape.vocab_size ||
        embedding->cols() != shape.embedding_dim) {
      throw Error("initial embedding must be |V| x d = " +
                  std::to_string(shape.vocab_size) + " x " +
                  std::to_string(shape.embedding_dim));
    }
    m.embedding_ = *embedding;
  } else {
    for (double& v : m.embedding_.values()) v = nn::uniform_open(rng, -0.01, 0.01);
  }
  m.fwd_ = nn::LstmParams::initialized(shape.embedding_dim, shape.cell_size, rng,
                                       shape.peephole);
  m.bwd_ = nn::LstmParams::initialized(shape.embedding_dim, shape.cell_size, rng,
                                       shape.peephole);
  const double r =
      std::sqrt(6.0 / static_cast<double>(shape.proj_in() + shape.proj_out()));
  for (double& v : m.proj_.values()) v = -r + 2.0 * r * nn::uniform01(rng);
  return m;
}

nn::ParamList SequenceModel::params(bool include_embedding) {
  nn::ParamList out;
  if (include_embedding) out.push_back({"W", &embedding_});
  fwd_.append_to(out, "fwd.");
  bwd_.append_to(out, "bwd.");
  out.push_back({"P", &proj_});
  out.push_back({"P.b", &proj_bias_});
  return out;
}

nn::ConstParamList SequenceModel::params(bool include_embedding) const {
  nn::ConstParamList out;
  if (include_embedding) out.push_back({"W", &embedding_});
  fwd_.append_to(out, "fwd.");
  bwd_.append_to(out, "bwd.");
  out.push_back({"P", &proj_});
  out.push_back({"P.b", &proj_bias_});
  return out;
}

void SequenceModel::set_zero() {
  for (auto& p : params(true)) p.value->fill(0.0);
}

bool SequenceModel::operator==(const SequenceModel& o) const {
  auto a = params(true);
  auto b = o.params(true);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || !(*a[i].value == *b[i].value)) return false;
  }
  return true;
}

void SequenceModel::write_to(nn::Checkpoint& ckpt) const {
  const ModelShape& s = shape_;
  ckpt.meta["model.vocab_size"] = std::to_string(s.vocab_size);
  ckpt.meta["model.embedding_dim"] = std::to_string(s.embedding_dim);
  ckpt.meta["model.cell_size"] = std::to_string(s.cell_size);
  ckpt.meta["model.max_len"] = std::to_string(s.max_len);
  ckpt.meta["model.channels"] = std::to_string(s.channels);
  ckpt.meta["model.tags"] = std::to_string(s.tags);
  ckpt.meta["model.peephole"] = s.peephole ? "1" : "0";
  ckpt.meta["model.per_position_projection"] = s.per_position_projection ? "1" : "0";
  for (const auto& p : params(true)) ckpt.tensors.emplace_back(p.name, *p.value);
}

SequenceModel SequenceModel::read_from(const nn::Checkpoint& ckpt) {
  auto num = [&](const char* key) {
    return static_cast<std::size_t>(std::stoull(ckpt.get(key)));
  };
  ModelShape s;
  s.vocab_size = num("model.vocab_size");
  s.embedding_dim = num("model.embedding_dim");
  s.cell_size = num("model.cell_size");
  s.max_len = num("model.max_len");
  s.channels = num("model.channels");
  s.tags = num("model.tags");
  s.peephole = ckpt.get("model.peephole") == "1";
  s.per_position_projection = ckpt.get("model.per_position_projection") == "1";
  SequenceModel m(s);
  for (auto& p : m.params(true)) {
    const Matrix& stored = ckpt.tensor(p.name);
    if (!stored.same_shape(*p.value)) throw Error("checkpoint: shape mismatch for " + p.name);
    *p.value = stored;
  }
  return m;
}

namespace {

struct ForwardCache {
  Matrix inputs;  // n x d
  nn::LstmLayerCache fwd, bwd;
  Vector p;       // n * 2k, position-major [h_fwd(t), h_bwd(t)]
};

// Returns the n*C*T logits.
Vector run_forward(const SequenceModel& m, std::span<const std::size_t> x,
                   ForwardCache* cache) {
  const ModelShape& s = m.shape();
  const std::size_t n = x.size();
  if (n == 0) throw Error("forward: empty sequence");
  if (n > s.max_len) {
    throw Error("forward: sequence of " + std::to_string(n) +
                " exceeds max_len " + std::to_string(s.max_len));
  }
  const std::size_t d = s.embedding_dim;
  const std::size_t k = s.cell_size;
  const std::size_t cells = s.cells_per_position();

  ForwardCache local;
  ForwardCache& c = cache ? *cache : local;
  c.inputs = Matrix(n, d);
  for (std::size_t t = 0; t < n; ++t) {
    if (x[t] >= s.vocab_size) throw Error("forward: word index out of range");
    auto src = m.embedding().row(x[t]);
    std::copy(src.begin(), src.end(), c.inputs.row(t).begin());
  }
  const std::vector<bool> mask(n, true);
  auto hf = nn::lstm_layer_forward(m.forward_lstm(), c.inputs, mask, false,
                                   cache ? &c.fwd : nullptr);
  auto hb = nn::lstm_layer_forward(m.backward_lstm(), c.inputs, mask, true,
                                   cache ? &c.bwd : nullptr);
  c.p.assign(n * 2 * k, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    std::copy(hf.h.row(t).begin(), hf.h.row(t).end(), c.p.begin() + t * 2 * k);
    std::copy(hb.h.row(t).begin(), hb.h.row(t).end(), c.p.begin() + t * 2 * k + k);
  }

  const Matrix& P = m.projection();
  const Matrix& b = m.projection_bias();
  Vector logits(n * cells);
  if (s.per_position_projection) {
    for (std::size_t t = 0; t < n; ++t) {
      std::span<double> out(logits.data() + t * cells, cells);
      std::copy(b.row(0).begin(), b.row(0).end(), out.begin());
      nn::add_vec_mat(std::span<const double>(c.p.data() + t * 2 * k, 2 * k), P, out);
    }
  } else {
    // Positions past n are padding: their H rows are zero and their outputs
    // are cropped, so only the leading (2kn) x (n*C*T) block of P is live.
    const std::size_t live = n * cells;
    std::copy(b.row(0).begin(), b.row(0).begin() + static_cast<std::ptrdiff_t>(live),
              logits.begin());
    for (std::size_t i = 0; i < c.p.size(); ++i) {
      if (c.p[i] != 0.0) nn::axpy(c.p[i], P.row(i).subspan(0, live), logits);
    }
  }
  return logits;
}

}  // namespace

TagProbabilities forward(const SequenceModel& m, std::span<const std::size_t> x) {
  const ModelShape& s = m.shape();
  Vector logits = run_forward(m, x, nullptr);
  TagProbabilities out{x.size(), s.channels, s.tags, std::move(logits)};
  for (std::size_t cell = 0; cell < x.size() * s.channels; ++cell) {
    std::span<double> v(out.data.data() + cell * s.tags, s.tags);
    nn::softmax(v, v);
  }
  return out;
}

double loss_and_grad(const SequenceModel& m, std::span<const std::size_t> x,
                     std::span<const std::uint8_t> targets, SequenceModel* grads,
                     double scale) {
  const ModelShape& s = m.shape();
  const std::size_t n = x.size();
  const std::size_t T = s.tags;
  const std::size_t k = s.cell_size;
  const std::size_t cells = s.cells_per_position();
  if (targets.size() != n * s.channels) {
    throw Error("loss: expected " + std::to_string(n * s.channels) +
                " targets, got " + std::to_string(targets.size()));
  }
  ForwardCache cache;
  Vector logits = run_forward(m, x, grads ? &cache : nullptr);

  const double norm = 1.0 / static_cast<double>(n * s.channels);
  double loss = 0.0;
  Vector dlogits(grads ? logits.size() : 0);
  for (std::size_t cell = 0; cell < n * s.channels; ++cell) {
    if (targets[cell] >= T) throw Error("loss: target tag out of range");
    auto r = nn::softmax_xent(std::span<const double>(logits.data() + cell * T, T),
                              targets[cell]);
    loss += r.loss;
    if (grads) {
      for (std::size_t j = 0; j < T; ++j) {
        dlogits[cell * T + j] = scale * norm * r.grad[j];
      }
    }
  }
  loss *= norm;
  if (!grads) return loss;

  const Matrix& P = m.projection();
  Matrix& dP = grads->projection();
  auto db = grads->projection_bias().row(0);
  Vector dp(cache.p.size(), 0.0);
  if (s.per_position_projection) {
    for (std::size_t t = 0; t < n; ++t) {
      std::span<const double> dl(dlogits.data() + t * cells, cells);
      std::span<const double> pt(cache.p.data() + t * 2 * k, 2 * k);
      nn::axpy(1.0, dl, db);
      nn::add_outer(pt, dl, dP);
      nn::add_mat_vec(P, dl, std::span<double>(dp.data() + t * 2 * k, 2 * k));
    }
  } else {
    const std::size_t live = n * cells;
    nn::axpy(1.0, dlogits, db.subspan(0, live));
    for (std::size_t i = 0; i < cache.p.size(); ++i) {
      if (cache.p[i] != 0.0) nn::axpy(cache.p[i], dlogits, dP.row(i).subspan(0, live));
      dp[i] = nn::dot(P.row(i).subspan(0, live), dlogits);
    }
  }

  Matrix dhf(n, k), dhb(n, k);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t j = 0; j < k; ++j) {
      dhf(t, j) = dp[t * 2 * k + j];
      dhb(t, j) = dp[t * 2 * k + k + j];
    }
  }
  Matrix din_f = nn::lstm_layer_backward(m.forward_lstm(), cache.fwd, dhf,
                                         grads->forward_lstm());
  Matrix din_b = nn::lstm_layer_backward(m.backward_lstm(), cache.bwd, dhb,
                                         grads->backward_lstm());
  Matrix& dW = grads->embedding();
  for (std::size_t t = 0; t < n; ++t) {
    nn::axpy(1.0, din_f.row(t), dW.row(x[t]));
    nn::axpy(1.0, din_b.row(t), dW.row(x[t]));
  }
  return loss;
}

std::vector<std::pair<std::size_t, std::size_t>> chunk_ranges(std::size_t n,
                                                              std::size_t max_len) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t start = 0; start < n; start += max_len) {
    out.emplace_back(start, std::min(n, start + max_len));
  }
  return out;
}

TagProbabilities forward_chunked(const SequenceModel& m,
                                 std::span<const std::size_t> x) {
  if (x.empty()) throw Error("forward: empty sequence");
  const ModelShape& s = m.shape();
  TagProbabilities out{x.size(), s.channels, s.tags, {}};
  out.data.reserve(x.size() * s.channels * s.tags);
  for (auto [begin, end] : chunk_ranges(x.size(), s.max_len)) {
    auto part = forward(m, x.subspan(begin, end - begin));
    out.data.insert(out.data.end(), part.data.begin(), part.data.end());
  }
  return out;
}

}  // namespace radnlp::tagger
