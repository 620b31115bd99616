#include "radnlp/embeddings/corruption_lm.h"

#include "radnlp/error.h"

namespace radnlp::embeddings {

tagger::ModelShape CorruptionLmConfig::shape(std::size_t vocab_size) const {
  tagger::ModelShape s;
  s.vocab_size = vocab_size;
  s.embedding_dim = dim;
  s.cell_size = cell_size;
  s.max_len = max_len;
  s.channels = 1;
  s.tags = 2;
  s.peephole = peephole;
  return s;
}

tagger::Example corrupt_sentence(const std::vector<std::size_t>& x, std::size_t vocab_size,
                                 double p_replace, nn::Rng& rng) {
  if (vocab_size < 2) throw Error("corruption: vocabulary needs at least two words");
  tagger::Example ex;
  ex.x.reserve(x.size());
  ex.targets.reserve(x.size());
  for (std::size_t w : x) {
    if (nn::uniform01(rng) < p_replace) {
      std::size_t r = nn::uniform_index(rng, vocab_size - 1);
      if (r >= w) ++r;
      ex.x.push_back(r);
      ex.targets.push_back(kReplacedLabel);
    } else {
      ex.x.push_back(w);
      ex.targets.push_back(kUnchangedLabel);
    }
  }
  return ex;
}

CorruptionLmResult corruption_lm_train(const std::vector<std::vector<std::size_t>>& sentences,
                                       std::size_t vocab_size, const CorruptionLmConfig& config) {
  if (!(config.p_replace > 0.0 && config.p_replace < 1.0)) {
    throw Error("corruption: p_replace must lie in (0, 1)");
  }
  std::vector<const std::vector<std::size_t>*> corpus;
  for (const auto& s : sentences) {
    if (!s.empty()) corpus.push_back(&s);
  }
  if (corpus.empty()) throw Error("corruption: empty corpus");

  nn::Rng init_rng(config.seed);
  auto model = tagger::SequenceModel::initialized(config.shape(vocab_size), init_rng);
  nn::Rng corrupt_rng(config.seed ^ 0xc0bbu);
  auto source = [&](std::size_t) {
    std::vector<tagger::Example> out;
    out.reserve(corpus.size());
    for (const auto* s : corpus) {
      out.push_back(corrupt_sentence(*s, vocab_size, config.p_replace, corrupt_rng));
    }
    return out;
  };
  tagger::TrainOptions opt;
  opt.epochs = config.epochs;
  opt.batch_size = config.batch_size;
  opt.learning_rate = config.learning_rate;
  opt.momentum = config.momentum;
  opt.clip_norm = config.clip_norm;
  opt.seed = config.seed;
  CorruptionLmResult result;
  result.log = tagger::train_model(model, source, opt);
  if (result.log.diverged) throw Error("corruption: training diverged (non-finite loss)");
  result.embedding = model.embedding();
  return result;
}

}  // namespace radnlp::embeddings
