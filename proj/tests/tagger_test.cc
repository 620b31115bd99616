#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <sstream>

#include "radnlp/error.h"
#include "radnlp/nn/grad_check.h"
#include "radnlp/tagger/tagger.h"

namespace radnlp::tagger {
namespace {

using corpus::Tag;
using corpus::TagGrid;

ModelShape small_shape(std::size_t vocab, std::size_t d, std::size_t k,
                       std::size_t max_len = 8) {
  ModelShape s;
  s.vocab_size = vocab;
  s.embedding_dim = d;
  s.cell_size = k;
  s.max_len = max_len;
  return s;
}

TEST(Forward, ProbabilitiesFormSimplexAndStartNearUniform) {
  nn::Rng rng(1);
  auto m = SequenceModel::initialized(small_shape(20, 50, 100, 40), rng);
  std::vector<std::size_t> x{3, 1, 4, 1, 5, 9, 2, 6};
  auto p = forward(m, x);
  ASSERT_EQ(p.n, x.size());
  for (std::size_t t = 0; t < p.n; ++t) {
    for (std::size_t c = 0; c < 5; ++c) {
      double sum = 0.0;
      for (double v : p.cell(t, c)) {
        EXPECT_GT(v, 0.1);
        EXPECT_LT(v, 0.4);
        sum += v;
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
  // Pure function of weights and input.
  EXPECT_EQ(forward(m, x).data, p.data);
}

TEST(Forward, RejectsBadInput) {
  nn::Rng rng(1);
  auto m = SequenceModel::initialized(small_shape(5, 3, 2, 4), rng);
  EXPECT_THROW(forward(m, std::vector<std::size_t>{}), Error);
  EXPECT_THROW(forward(m, std::vector<std::size_t>{0, 1, 2, 3, 4}), Error);
  EXPECT_THROW(forward(m, std::vector<std::size_t>{7}), Error);
}

TEST(Loss, ZeroProjectionGivesLogFive) {
  nn::Rng rng(2);
  auto m = SequenceModel::initialized(small_shape(6, 3, 4), rng);
  m.projection().fill(0.0);
  m.projection_bias().fill(0.0);
  TagGrid grid(3);
  grid.set(1, 2, Tag::S);
  EXPECT_NEAR(loss(m, std::vector<std::size_t>{0, 1, 2}, grid), std::log(5.0), 1e-12);
  EXPECT_THROW(loss(m, std::vector<std::size_t>{0, 1}, grid), Error);
}

void run_grad_check(bool per_position, bool peephole) {
  nn::Rng rng(3);
  auto shape = small_shape(6, 3, 4, 5);
  shape.per_position_projection = per_position;
  shape.peephole = peephole;
  auto m = SequenceModel::initialized(shape, rng);
  // Larger weights than the initializer so every path carries signal.
  for (auto& ref : m.params()) {
    for (auto& v : ref.value->values()) v = nn::uniform_open(rng, -0.5, 0.5);
  }
  const std::vector<std::size_t> x{4, 1, 4};
  std::vector<std::uint8_t> targets;
  for (std::size_t i = 0; i < x.size() * 5; ++i) {
    targets.push_back(static_cast<std::uint8_t>(nn::uniform_index(rng, 5)));
  }
  auto grads = m.zeros_like();
  loss_and_grad(m, x, targets, &grads);
  auto slots = nn::zip_slots(m.params(), grads.params());
  auto report = nn::grad_check([&] { return loss_and_grad(m, x, targets); }, slots);
  EXPECT_TRUE(report.passed(1e-4)) << report.summary();
  // Rows of W that the sentence does not use get no gradient.
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(grads.embedding()(0, j), 0.0);
}

TEST(LossAndGrad, MatchesFiniteDifferences) { run_grad_check(false, true); }
TEST(LossAndGrad, MatchesFiniteDifferencesPerPosition) { run_grad_check(true, true); }
TEST(LossAndGrad, MatchesFiniteDifferencesWithoutPeepholes) { run_grad_check(false, false); }

TEST(Decode, TieFallsBackToO) {
  TagProbabilities p{2, 5, 5, std::vector<double>(50, 0.2)};
  EXPECT_EQ(decode_argmax(p), TagGrid(2));
  p.data[(1 * 5 + 3) * 5 + static_cast<int>(Tag::E)] = 0.3;
  EXPECT_EQ(decode_argmax(p).at(1, 3), Tag::E);
}

TEST(Chunking, LongInputIsTaggedPiecewise) {
  EXPECT_EQ(chunk_ranges(10, 4),
            (std::vector<std::pair<std::size_t, std::size_t>>{{0, 4}, {4, 8}, {8, 10}}));
  nn::Rng rng(4);
  auto m = SequenceModel::initialized(small_shape(9, 3, 2, 4), rng);
  std::vector<std::size_t> x{1, 2, 3, 4, 5, 6, 7, 8, 0, 1};
  auto whole = forward_chunked(m, x);
  ASSERT_EQ(whole.n, 10u);
  auto tail = forward(m, std::vector<std::size_t>{0, 1});
  for (std::size_t i = 0; i < tail.data.size(); ++i) {
    EXPECT_EQ(whole.data[8 * 25 + i], tail.data[i]);
  }
}

// Each word deterministically picks a tag per channel.
std::vector<Example> synthetic_examples(std::size_t count, std::size_t vocab,
                                        std::size_t len, nn::Rng& rng) {
  std::vector<Example> out;
  for (std::size_t s = 0; s < count; ++s) {
    Example ex;
    for (std::size_t t = 0; t < len; ++t) {
      const std::size_t w = nn::uniform_index(rng, vocab);
      ex.x.push_back(w);
      for (std::size_t c = 0; c < 5; ++c) {
        ex.targets.push_back(static_cast<std::uint8_t>(w % 7 == c ? 4 : 1));
      }
    }
    out.push_back(ex);
  }
  return out;
}

TEST(Training, FrozenEmbeddingIsUntouched) {
  nn::Rng rng(5);
  auto m = SequenceModel::initialized(small_shape(12, 4, 6), rng);
  const nn::Matrix before = m.embedding();
  const auto fwd_before = m.forward_lstm().w_x;
  TrainOptions opt;
  opt.epochs = 3;
  opt.fine_tune_embeddings = false;
  train_model(m, synthetic_examples(15, 12, 6, rng), opt);
  EXPECT_EQ(m.embedding(), before);
  EXPECT_FALSE(m.forward_lstm().w_x == fwd_before);
}

TEST(Training, SameSeedSameModel) {
  auto run = [] {
    nn::Rng rng(6);
    auto data = synthetic_examples(12, 10, 5, rng);
    auto m = SequenceModel::initialized(small_shape(10, 4, 5), rng);
    TrainOptions opt;
    opt.epochs = 2;
    opt.batch_size = 4;
    train_model(m, data, opt);
    return m;
  };
  EXPECT_EQ(run(), run());
}

TEST(Training, EmptySetThrows) {
  nn::Rng rng(1);
  auto m = SequenceModel::initialized(small_shape(4, 2, 2), rng);
  EXPECT_THROW(train_model(m, std::vector<Example>{}, TrainOptions{}), Error);
}

TEST(Training, OverfitsSmallSet) {
  nn::Rng rng(7);
  auto data = synthetic_examples(20, 15, 6, rng);
  auto m = SequenceModel::initialized(small_shape(15, 8, 16, 8), rng);
  TrainOptions opt;
  opt.epochs = 200;
  opt.batch_size = 10;
  auto log = train_model(m, data, opt);
  ASSERT_FALSE(log.diverged);
  double total = 0.0;
  for (const auto& ex : data) total += loss_and_grad(m, ex.x, ex.targets);
  EXPECT_LT(total / data.size(), 0.01);
  EXPECT_LT(log.epoch_loss.back(), log.epoch_loss.front());
}

TEST(Config, ParsesOverridesAndRejectsUnknownKeys) {
  std::istringstream in("# comment\nk = 32\nfine_tune_embeddings=false\nlearning_rate=0.1\n");
  auto cfg = TaggerConfig::from_key_values(parse_key_values(in));
  EXPECT_EQ(cfg.cell_size, 32u);
  EXPECT_FALSE(cfg.fine_tune_embeddings);
  EXPECT_DOUBLE_EQ(cfg.learning_rate, 0.1);
  EXPECT_EQ(cfg.embedding_dim, 50u);

  std::istringstream back_in([&] {
    std::ostringstream o;
    cfg.write(o);
    return o.str();
  }());
  auto again = TaggerConfig::from_key_values(parse_key_values(back_in));
  EXPECT_EQ(again.to_key_values(), cfg.to_key_values());

  EXPECT_THROW(TaggerConfig::from_key_values({{"colour", "red"}}), Error);
  EXPECT_THROW(TaggerConfig::from_key_values({{"C", "4"}}), Error);
  EXPECT_THROW(TaggerConfig::from_key_values({{"k", "abc"}}), Error);
  std::istringstream dup("k=1\nk=2\n");
  EXPECT_THROW(parse_key_values(dup), ParseError);
}

TEST(Tagger, CheckpointRoundTripPredictsIdentically) {
  TaggerConfig cfg;
  cfg.embedding_dim = 4;
  cfg.cell_size = 3;
  cfg.max_len = 6;
  auto vocab = corpus::Vocabulary::from_words({"<unk>", "heart", "is", "enlarged", "."});
  auto tagger = Tagger::create(cfg, vocab);
  std::stringstream ss;
  nn::write_checkpoint(ss, tagger.to_checkpoint());
  auto back = Tagger::from_checkpoint(nn::read_checkpoint(ss));
  EXPECT_EQ(back.model(), tagger.model());
  EXPECT_EQ(back.vocabulary(), tagger.vocabulary());
  auto a = tagger.tag_report("Heart is enlarged. Heart is enlarged.", "r");
  auto b = back.tag_report("Heart is enlarged. Heart is enlarged.", "r");
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0].grid, b[0].grid);
}

}  // namespace
}  // namespace radnlp::tagger
