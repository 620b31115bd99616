#include "radnlp/tagger/trainer.h"

#include <cmath>
#include <numeric>

#include "radnlp/error.h"
#include "radnlp/nn/optim.h"
#include "radnlp/nn/random.h"

namespace radnlp::tagger {

std::vector<Example> split_long_examples(const std::vector<Example>& examples,
                                         std::size_t max_len) {
  std::vector<Example> out;
  out.reserve(examples.size());
  for (const auto& ex : examples) {
    if (ex.x.size() <= max_len) {
      out.push_back(ex);
      continue;
    }
    const std::size_t channels = ex.targets.size() / ex.x.size();
    for (auto [b, e] : chunk_ranges(ex.x.size(), max_len)) {
      Example piece;
      piece.x.assign(ex.x.begin() + static_cast<std::ptrdiff_t>(b),
                     ex.x.begin() + static_cast<std::ptrdiff_t>(e));
      piece.targets.assign(ex.targets.begin() + static_cast<std::ptrdiff_t>(b * channels),
                           ex.targets.begin() + static_cast<std::ptrdiff_t>(e * channels));
      out.push_back(std::move(piece));
    }
  }
  return out;
}

TrainLog train_model(SequenceModel& model, const std::vector<Example>& raw,
                     const TrainOptions& options,
                     const std::function<void(std::size_t, double)>& on_epoch) {
  if (raw.empty()) throw Error("train: empty training set");
  const auto examples = split_long_examples(raw, model.shape().max_len);
  return train_model(
      model, [&](std::size_t) { return examples; }, options, on_epoch);
}

TrainLog train_model(SequenceModel& model, const EpochSource& epoch_examples,
                     const TrainOptions& options,
                     const std::function<void(std::size_t, double)>& on_epoch) {
  if (options.batch_size == 0) throw Error("train: batch_size must be > 0");

  SequenceModel grads = model.zeros_like();
  auto slots = nn::zip_slots(model.params(options.fine_tune_embeddings),
                             grads.params(options.fine_tune_embeddings));
  nn::NesterovSgd sgd(options.learning_rate, options.momentum, options.clip_norm);
  nn::Rng rng(options.seed ^ 0x5eed5eed5eed5eedULL);

  TrainLog log;
  std::vector<std::size_t> order;
  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    const auto examples = split_long_examples(epoch_examples(epoch), model.shape().max_len);
    if (examples.empty()) throw Error("train: empty training set");
    order.resize(examples.size());
    std::iota(order.begin(), order.end(), 0);
    nn::shuffle(order, rng);
    double total = 0.0;
    for (std::size_t start = 0; start < order.size(); start += options.batch_size) {
      const std::size_t end = std::min(order.size(), start + options.batch_size);
      const double scale = 1.0 / static_cast<double>(end - start);
      grads.set_zero();
      for (std::size_t b = start; b < end; ++b) {
        const Example& ex = examples[order[b]];
        total += loss_and_grad(model, ex.x, ex.targets, &grads, scale);
      }
      if (!std::isfinite(total)) {
        log.diverged = true;
        log.epoch_loss.push_back(total);
        return log;
      }
      sgd.step(slots);
    }
    const double mean = total / static_cast<double>(examples.size());
    log.epoch_loss.push_back(mean);
    if (on_epoch) on_epoch(epoch, mean);
  }
  return log;
}

}  // namespace radnlp::tagger
