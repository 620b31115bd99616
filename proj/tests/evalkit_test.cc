#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "radnlp/error.h"
#include "radnlp/evalkit/crossval.h"
#include "radnlp/evalkit/metrics.h"
#include "radnlp/nn/random.h"

namespace radnlp::evalkit {
namespace {

using corpus::Tag;
using corpus::TagGrid;

TagGrid grid_with(std::size_t n, int channel, std::vector<Tag> tags) {
  TagGrid g(n);
  for (std::size_t t = 0; t < tags.size(); ++t) g.set(t, channel, tags[t]);
  return g;
}

TEST(TokenOverlap, HandCountedExample) {
  auto gold = grid_with(3, 1, {Tag::B, Tag::O, Tag::E});
  auto pred = grid_with(3, 1, {Tag::S, Tag::O, Tag::O});
  auto r = token_overlap_metrics({gold}, {pred});
  const Score& cf = r.classes.at("ClinicalFinding");
  EXPECT_EQ(cf.tp, 1u);
  EXPECT_EQ(cf.fp, 0u);
  EXPECT_EQ(cf.fn, 1u);
  EXPECT_DOUBLE_EQ(cf.precision, 1.0);
  EXPECT_DOUBLE_EQ(cf.recall, 0.5);
  EXPECT_NEAR(cf.f1, 2.0 / 3.0, 1e-15);
  EXPECT_EQ(r.total.tp, 1u);
  EXPECT_EQ(r.classes.count("Negation"), 0u);
}

TEST(TokenOverlap, IdenticalAndAllOutside) {
  auto gold = grid_with(3, 0, {Tag::S, Tag::O, Tag::S});
  auto same = token_overlap_metrics({gold}, {gold});
  EXPECT_DOUBLE_EQ(same.classes.at("BodyLocation").f1, 1.0);
  EXPECT_DOUBLE_EQ(same.total.f1, 1.0);
  auto none = token_overlap_metrics({gold}, {TagGrid(3)});
  EXPECT_EQ(none.total.precision, 0.0);
  EXPECT_EQ(none.total.recall, 0.0);
  EXPECT_EQ(none.total.f1, 0.0);
}

TEST(TokenOverlap, MisalignedInputThrows) {
  EXPECT_THROW(token_overlap_metrics({TagGrid(2)}, {}), Error);
  EXPECT_THROW(token_overlap_metrics({TagGrid(2)}, {TagGrid(3)}), Error);
}

TagGrid random_grid(nn::Rng& rng, std::size_t n) {
  TagGrid g(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (int c = 0; c < 5; ++c) g.set(t, c, static_cast<Tag>(nn::uniform_index(rng, 5)));
  }
  return g;
}

TEST(TokenOverlapProperty, SwapExchangesPrecisionAndRecall) {
  nn::Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<TagGrid> a, b;
    for (int s = 0; s < 4; ++s) {
      const std::size_t n = 1 + nn::uniform_index(rng, 8);
      a.push_back(random_grid(rng, n));
      b.push_back(random_grid(rng, n));
    }
    auto ab = token_overlap_metrics(a, b);
    auto ba = token_overlap_metrics(b, a);
    std::size_t tp_sum = 0;
    for (const auto& [name, s] : ab.classes) {
      EXPECT_DOUBLE_EQ(s.precision, ba.classes.at(name).recall) << name;
      EXPECT_DOUBLE_EQ(s.f1, ba.classes.at(name).f1) << name;
      tp_sum += s.tp;
      if (s.precision + s.recall > 0) {
        EXPECT_NEAR(s.f1, 2 * s.precision * s.recall / (s.precision + s.recall), 1e-12);
      }
    }
    EXPECT_EQ(ab.total.tp, tp_sum);
    EXPECT_EQ(ab.classes.size(), 4u);
  }
}

std::vector<NegationItem> gold_entities(std::size_t count, std::size_t negated) {
  std::vector<NegationItem> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back({0, 1, {i}, i < negated});
  return out;
}

TEST(NegationMetrics, TwoRightOneWrong) {
  auto gold = gold_entities(6, 3);  // entities 0..2 negated
  auto pred = gold;
  for (auto& p : pred) p.negated = false;
  pred[0].negated = pred[1].negated = true;  // two right
  pred[4].negated = true;                    // one wrong
  auto r = negation_entity_metrics(gold, pred);
  EXPECT_EQ(r.total.tp, 2u);
  EXPECT_EQ(r.total.fp, 1u);
  EXPECT_EQ(r.total.fn, 1u);
  EXPECT_NEAR(r.total.precision, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.total.recall, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.total.f1, 2.0 / 3.0, 1e-15);
  EXPECT_EQ(r.warnings, 0u);
}

TEST(NegationMetrics, AllCorrectAndAllAffirmed) {
  auto gold = gold_entities(10, 4);
  EXPECT_DOUBLE_EQ(negation_entity_metrics(gold, gold).total.f1, 1.0);
  auto affirmed = gold;
  for (auto& p : affirmed) p.negated = false;
  auto r = negation_entity_metrics(gold, affirmed);
  EXPECT_EQ(r.total.precision, 0.0);
  EXPECT_EQ(r.total.recall, 0.0);
  EXPECT_EQ(r.total.f1, 0.0);
  EXPECT_EQ(r.total.fn, 4u);
}

TEST(NegationMetrics, UnknownEntityIsFalsePositiveAndWarned) {
  auto gold = gold_entities(2, 1);
  std::vector<NegationItem> pred{gold[0], {0, 1, {7, 8}, true}};
  auto r = negation_entity_metrics(gold, pred);
  EXPECT_EQ(r.total.tp, 1u);
  EXPECT_EQ(r.total.fp, 1u);
  EXPECT_EQ(r.warnings, 1u);
}

TEST(NegationMetrics, GridPredictionNegatesOnAnyTaggedToken) {
  std::vector<NegationItem> gold{{0, 1, {0, 2}, true}, {0, 0, {1}, false}};
  TagGrid g(3);
  g.set(2, corpus::kNegationChannel, Tag::S);
  auto pred = negation_from_grids(gold, {g});
  ASSERT_EQ(pred.size(), 2u);
  EXPECT_TRUE(pred[0].negated);
  EXPECT_FALSE(pred[1].negated);
  EXPECT_THROW(negation_from_grids({{3, 0, {0}, true}}, {g}), Error);
}

TEST(Report, JsonRoundTrip) {
  auto r = token_overlap_metrics({grid_with(3, 2, {Tag::B, Tag::E, Tag::O})},
                                 {grid_with(3, 2, {Tag::O, Tag::S, Tag::S})});
  r.fold = "3";
  auto j = r.to_json();
  EXPECT_EQ(j["fold"], "3");
  EXPECT_EQ(j["classes"]["Descriptor"]["tp"], 1);
  EXPECT_TRUE(j["total"].contains("f1"));
  auto back = EvalReport::from_json(j);
  EXPECT_EQ(back.to_json(), j);
}

std::vector<std::string> doc_ids(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("doc" + std::to_string(i));
  return out;
}

TEST(Folds, TenDocumentsFiveFolds) {
  auto plan = make_fold_plan(doc_ids(10), 5, 7);
  ASSERT_EQ(plan.k(), 5u);
  std::multiset<std::string> seen;
  for (std::size_t f = 0; f < 5; ++f) {
    EXPECT_EQ(plan.folds[f].size(), 2u);
    seen.insert(plan.folds[f].begin(), plan.folds[f].end());
    EXPECT_EQ(plan.training_ids(f).size(), 8u);
  }
  const auto ids = doc_ids(10);
  EXPECT_EQ(seen, std::multiset<std::string>(ids.begin(), ids.end()));
  EXPECT_EQ(make_fold_plan(doc_ids(10), 5, 7).folds, plan.folds);
  EXPECT_NE(make_fold_plan(doc_ids(10), 5, 8).folds, plan.folds);
}

TEST(Folds, Errors) {
  EXPECT_THROW(make_fold_plan(doc_ids(10), 1, 0), Error);
  EXPECT_THROW(make_fold_plan(doc_ids(3), 5, 0), Error);
  EXPECT_THROW(make_fold_plan({"a", "a", "b"}, 2, 0), Error);
}

TEST(FoldsProperty, PartitionWithBalancedSizes) {
  nn::Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + nn::uniform_index(rng, 6);
    const std::size_t n = k + nn::uniform_index(rng, 40);
    auto plan = make_fold_plan(doc_ids(n), k, trial);
    std::set<std::string> all;
    std::size_t lo = n, hi = 0;
    for (const auto& f : plan.folds) {
      for (const auto& d : f) EXPECT_TRUE(all.insert(d).second) << d << " in two folds";
      lo = std::min(lo, f.size());
      hi = std::max(hi, f.size());
    }
    EXPECT_EQ(all.size(), n);
    EXPECT_LE(hi - lo, 1u);
  }
}

TEST(CrossValidate, MeanIsTheAverageOfFoldScores) {
  // Each fold "predicts" a different fraction of a fixed gold grid.
  std::size_t calls = 0;
  auto cv = cross_validate(doc_ids(10), 5, 3, [&](const auto& train, const auto& test) {
    EXPECT_EQ(train.size() + test.size(), 10u);
    ++calls;
    TagGrid gold(4), pred(4);
    for (std::size_t t = 0; t < 4; ++t) gold.set(t, 0, Tag::S);
    for (std::size_t t = 0; t < calls && t < 4; ++t) pred.set(t, 0, Tag::S);
    pred.set(0, 1, Tag::S);
    return token_overlap_metrics({gold}, {pred});
  });
  ASSERT_EQ(cv.folds.size(), 5u);
  double f1 = 0, p = 0;
  std::size_t tp = 0;
  for (const auto& f : cv.folds) {
    f1 += f.total.f1;
    p += f.classes.at("BodyLocation").precision;
    tp += f.total.tp;
  }
  EXPECT_NEAR(cv.mean.total.f1, f1 / 5, 1e-12);
  EXPECT_NEAR(cv.mean.classes.at("BodyLocation").precision, p / 5, 1e-12);
  EXPECT_EQ(cv.pooled.total.tp, tp);
  EXPECT_EQ(cv.folds[2].fold, "2");
  auto j = cv.to_json();
  EXPECT_EQ(j["folds"].size(), 5u);
  EXPECT_EQ(j["mean"]["fold"], "mean");
}

}  // namespace
}  // namespace radnlp::evalkit
