// Acceptance checks. Prints one "AC<n> PASS|FAIL ..." line per criterion;
// exits non-zero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "commands.h"
#include "radnlp/corpus/iobes.h"
#include "radnlp/embeddings/cooccurrence.h"
#include "radnlp/embeddings/corruption_lm.h"
#include "radnlp/embeddings/glove.h"
#include "radnlp/embeddings/ontology.h"
#include "radnlp/evalkit/crossval.h"
#include "radnlp/evalkit/metrics.h"
#include "radnlp/negation/hybrid.h"
#include "radnlp/negation/triggers.h"
#include "radnlp/nn/grad_check.h"
#include "radnlp/nn/lstm.h"
#include "radnlp/nn/softmax.h"
#include "radnlp/rulener/ngram.h"
#include "radnlp/rulener/scanner.h"
#include "radnlp/tagger/tagger.h"
#include "support/negation_fixture.h"
#include "support/random_annotations.h"
#include "support/synthetic_corpora.h"
#include "synthetic.h"

namespace fs = std::filesystem;
using namespace radnlp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

nn::Matrix random_matrix(std::size_t r, std::size_t c, nn::Rng& rng, double scale) {
  nn::Matrix m(r, c);
  for (auto& v : m.values()) v = nn::uniform_open(rng, -scale, scale);
  return m;
}

void randomize(nn::LstmParams& p, nn::Rng& rng) {
  p.w_x = random_matrix(p.w_x.rows(), p.w_x.cols(), rng, 0.5);
  p.w_h = random_matrix(p.w_h.rows(), p.w_h.cols(), rng, 0.5);
  p.peep = random_matrix(p.peep.rows(), p.peep.cols(), rng, 0.5);
  p.bias = random_matrix(1, p.bias.cols(), rng, 0.5);
}

std::vector<nn::ParamSlot> lstm_slots(nn::LstmParams& p, nn::LstmParams& g) {
  nn::ParamList ps, gs;
  p.append_to(ps, "");
  g.append_to(gs, "");
  return nn::zip_slots(ps, gs);
}

// ---------------------------------------------------------------------------
// 1. Gradient suite

Outcome gradient_suite() {
  constexpr int kInstances = 20;
  constexpr double kTolerance = 1e-4;
  const auto t0 = std::chrono::steady_clock::now();
  nn::Rng rng(2024);
  std::map<std::string, double> worst;
  auto record = [&](const std::string& layer, const nn::GradCheckReport& r) {
    worst[layer] = std::max(worst[layer], r.max_rel_error());
  };

  for (int i = 0; i < kInstances; ++i) {
    const std::size_t d = 1 + nn::uniform_index(rng, 4), k = 1 + nn::uniform_index(rng, 5);
    nn::LstmParams p(d, k, nn::uniform01(rng) < 0.5);
    randomize(p, rng);
    auto grads = p.zeros_like();
    auto x = random_matrix(1, d, rng, 1.0), hp = random_matrix(1, k, rng, 1.0),
         cp = random_matrix(1, k, rng, 1.0), wh = random_matrix(1, k, rng, 1.0),
         wc = random_matrix(1, k, rng, 1.0);
    auto loss = [&] {
      auto s = nn::lstm_cell_step(p, x.values(), hp.values(), cp.values());
      return nn::dot(wh.values(), s.h) + nn::dot(wc.values(), s.c);
    };
    nn::CellCache cache;
    nn::lstm_cell_step(p, x.values(), hp.values(), cp.values(), &cache);
    nn::Vector dx(d), dhp(k), dcp(k);
    nn::lstm_cell_backward(p, cache, wh.values(), wc.values(), grads, dx, dhp, dcp);
    record("lstm-cell", nn::grad_check(loss, lstm_slots(p, grads)));
  }

  for (int i = 0; i < kInstances; ++i) {
    const std::size_t d = 1 + nn::uniform_index(rng, 3), k = 1 + nn::uniform_index(rng, 4);
    const std::size_t n = 1 + nn::uniform_index(rng, 6);
    nn::LstmParams p(d, k, nn::uniform01(rng) < 0.5);
    randomize(p, rng);
    auto grads = p.zeros_like();
    auto inputs = random_matrix(n, d, rng, 1.0), weights = random_matrix(n, k, rng, 1.0);
    std::vector<bool> mask(n);
    for (std::size_t t = 0; t < n; ++t) mask[t] = t == 0 || nn::uniform01(rng) < 0.8;
    const bool reverse = nn::uniform01(rng) < 0.5;
    auto loss = [&] {
      auto out = nn::lstm_layer_forward(p, inputs, mask, reverse);
      double s = 0.0;
      for (std::size_t j = 0; j < out.h.size(); ++j) s += out.h[j] * weights[j];
      return s;
    };
    nn::LstmLayerCache cache;
    nn::lstm_layer_forward(p, inputs, mask, reverse, &cache);
    nn::lstm_layer_backward(p, cache, weights, grads);
    record("bilstm-layer", nn::grad_check(loss, lstm_slots(p, grads)));
  }

  // The full tagger: embedding, both LSTM directions and the projection.
  for (int i = 0; i < kInstances; ++i) {
    tagger::ModelShape shape;
    shape.vocab_size = 6;
    shape.embedding_dim = 2 + nn::uniform_index(rng, 2);
    shape.cell_size = 2 + nn::uniform_index(rng, 3);
    shape.max_len = 5;
    shape.per_position_projection = nn::uniform01(rng) < 0.5;
    shape.peephole = nn::uniform01(rng) < 0.5;
    auto m = tagger::SequenceModel::initialized(shape, rng);
    for (auto& ref : m.params()) {
      for (auto& v : ref.value->values()) v = nn::uniform_open(rng, -0.5, 0.5);
    }
    std::vector<std::size_t> x(1 + nn::uniform_index(rng, 5));
    for (auto& w : x) w = nn::uniform_index(rng, 6);
    std::vector<std::uint8_t> targets(x.size() * 5);
    for (auto& t : targets) t = static_cast<std::uint8_t>(nn::uniform_index(rng, 5));
    auto grads = m.zeros_like();
    tagger::loss_and_grad(m, x, targets, &grads);
    record("projection", nn::grad_check([&] { return tagger::loss_and_grad(m, x, targets); },
                                        nn::zip_slots(m.params(), grads.params())));
  }

  for (int i = 0; i < kInstances; ++i) {
    const std::size_t n = 2 + nn::uniform_index(rng, 5);
    auto z = random_matrix(1, n, rng, 3.0);
    const std::size_t target = nn::uniform_index(rng, n);
    nn::Matrix g(1, n);
    const auto r = nn::softmax_xent(z.values(), target);
    std::copy(r.grad.begin(), r.grad.end(), g.values().begin());
    std::vector<nn::ParamSlot> slots{{"z", &z, &g}};
    record("softmax-xent",
           nn::grad_check([&] { return nn::softmax_xent(z.values(), target).loss; }, slots));
  }

  for (int i = 0; i < kInstances; ++i) {
    auto p = embeddings::GloveParams::initialized(6, 4, 100 + i);
    for (auto* m : {&p.w, &p.w_ctx, &p.b, &p.b_ctx}) {
      for (double& v : m->values()) v = nn::uniform_open(rng, -1, 1);
    }
    const std::size_t a = nn::uniform_index(rng, 6), b = nn::uniform_index(rng, 6);
    const double target = nn::uniform_open(rng, -2, 3), weight = nn::uniform01(rng) + 0.1;
    embeddings::GloveParams g(6, 4);
    embeddings::glove_term_backward(p, a, b, target, weight, g);
    std::vector<nn::ParamSlot> slots{
        {"w", &p.w, &g.w}, {"w_ctx", &p.w_ctx, &g.w_ctx}, {"b", &p.b, &g.b}, {"b_ctx", &p.b_ctx, &g.b_ctx}};
    record("glove-term", nn::grad_check(
                             [&] { return embeddings::glove_term_loss(p, a, b, target, weight); }, slots));
  }

  for (int i = 0; i < kInstances; ++i) {
    embeddings::CorruptionLmConfig cfg;
    cfg.dim = 3;
    cfg.cell_size = 3;
    cfg.max_len = 5;
    auto m = tagger::SequenceModel::initialized(cfg.shape(8), rng);
    for (auto& ref : m.params()) {
      for (auto& v : ref.value->values()) v = nn::uniform_open(rng, -0.5, 0.5);
    }
    std::vector<std::size_t> x(2 + nn::uniform_index(rng, 4));
    for (auto& w : x) w = nn::uniform_index(rng, 8);
    const auto ex = embeddings::corrupt_sentence(x, 8, 0.5, rng);
    auto grads = m.zeros_like();
    tagger::loss_and_grad(m, ex.x, ex.targets, &grads);
    record("corruption-lm-head",
           nn::grad_check([&] { return tagger::loss_and_grad(m, ex.x, ex.targets); },
                          nn::zip_slots(m.params(), grads.params())));
  }

  bool pass = true;
  std::string detail;
  for (const auto& [layer, err] : worst) {
    pass = pass && err < kTolerance;
    detail += layer + " " + fmt("%.1e", err) + ", ";
  }
  const double secs = seconds_since(t0);
  pass = pass && secs < 120.0;
  return {pass, std::to_string(kInstances) + " instances per layer, worst relative error: " +
                    detail + "limit 1e-4; " + fmt("%.1f", secs) + " s"};
}

// ---------------------------------------------------------------------------
// 2. IOBES round trip

Outcome iobes_round_trip() {
  constexpr int kSets = 1000;
  nn::Rng rng(77);
  std::size_t disjoint = 0, negated = 0, failures = 0, repairs = 0;
  for (int trial = 0; trial < kSets; ++trial) {
    const auto ex = testing::random_annotated_sentence(rng);
    const auto grid = corpus::standoff_to_iobes(ex.sentence, ex.report.annotations);
    const auto decoded = corpus::iobes_to_entities(grid);
    repairs += decoded.repairs;
    std::map<int, std::set<std::vector<std::size_t>>> got;
    for (const auto& e : decoded.entities) got[e.channel].insert(e.tokens);
    bool ok = got == ex.expected;
    // Character spans come back exactly: merge adjacent tokens per entity.
    for (const auto& a : ex.report.annotations) {
      disjoint += a.spans.size() > 1;
      negated += a.negated;
      const auto toks = corpus::covered_tokens(ex.sentence, a);
      std::vector<corpus::CharSpan> spans;
      for (std::size_t i = 0; i < toks.size(); ++i) {
        const auto& sp = ex.sentence.tokens[toks[i]].span;
        if (i > 0 && toks[i] == toks[i - 1] + 1) {
          spans.back().end = sp.end;
        } else {
          spans.push_back(sp);
        }
      }
      ok = ok && spans == a.spans && got[static_cast<int>(a.cls)].count(toks);
    }
    failures += !ok;
  }
  return {failures == 0 && repairs == 0,
          std::to_string(kSets) + " sets (" + std::to_string(disjoint) + " disjoint, " +
              std::to_string(negated) + " negated entities): " + std::to_string(failures) +
              " mismatches, " + std::to_string(repairs) + " repairs"};
}

// ---------------------------------------------------------------------------
// 3. Overfit oracle

Outcome overfit_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto syn = cli::synthetic_corpus(20, 1, 5);
  std::vector<corpus::LabelledSentence> data;
  for (const auto& r : syn.reports) {
    for (auto& ls : corpus::label_report(r)) data.push_back(std::move(ls));
  }
  tagger::TaggerConfig cfg;
  cfg.embedding_dim = 16;
  cfg.cell_size = 16;
  cfg.epochs = 200;
  cfg.min_count = 1;
  std::vector<corpus::Sentence> sents;
  for (const auto& ls : data) sents.push_back(ls.sentence);
  auto t = tagger::Tagger::create(cfg, corpus::Vocabulary::build(sents, 1));
  t.train(data);
  double total = 0.0;
  std::size_t exact = 0;
  for (const auto& ls : data) {
    total += tagger::loss(t.model(), corpus::encode_sentence(ls.sentence, t.vocabulary()), ls.grid);
    exact += t.tag(ls.sentence) == ls.grid;
  }
  const double mean = total / data.size();
  const double secs = seconds_since(t0);
  return {data.size() == 20 && mean < 0.01 && exact == data.size() && secs < 300.0,
          std::to_string(data.size()) + " sentences, k=16, d=16, 200 epochs: loss " +
              fmt("%.5f", mean) + " (limit 0.01), " + std::to_string(exact) +
              "/20 grids reproduced exactly, " + fmt("%.1f", secs) + " s"};
}

// ---------------------------------------------------------------------------
// 4. Synthetic end-to-end NER

Outcome synthetic_end_to_end() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto train = cli::synthetic_corpus(2000, 5, 11);
  const auto test = cli::synthetic_corpus(500, 5, 12);
  std::ostringstream log;
  const auto t = cli::fit_tagger(tagger::TaggerConfig{}, train.reports, "random", log);

  std::vector<corpus::TagGrid> gold, lstm, rules;
  const rulener::RuleNer ner(train.dictionary);
  for (const auto& r : test.reports) {
    for (const auto& ls : corpus::label_report(r)) {
      gold.push_back(ls.grid);
      lstm.push_back(t.tag(ls.sentence));
      rules.push_back(ner.tag(ls.sentence));
    }
  }
  const auto lstm_report = evalkit::token_overlap_metrics(gold, lstm);
  const auto rule_report = evalkit::token_overlap_metrics(gold, rules);
  const double secs = seconds_since(t0);
  const auto& lt = lstm_report.total;
  const auto& rt = rule_report.total;
  const bool pass = lt.f1 >= 0.95 && rt.f1 >= 0.99 && rt.precision >= rt.recall && secs < 1800.0;
  return {pass, "2000 train / 500 held-out sentences, d=50 k=100 20 epochs batch 10: BiLSTM F1 " +
                    fmt("%.4f", lt.f1) + " (limit 0.95); rules P " + fmt("%.4f", rt.precision) +
                    " R " + fmt("%.4f", rt.recall) + " F1 " + fmt("%.4f", rt.f1) +
                    " (limit 0.99, P >= R); " + fmt("%.0f", secs) + " s (limit 1800)"};
}

// ---------------------------------------------------------------------------
// 5. GloVe equivalence

Outcome glove_equivalence() {
  nn::Rng rng(3);
  const auto vocab = corpus::Vocabulary::from_words({"<unk>", "a", "b", "c", "d", "e", "f", "g"});
  const auto table =
      embeddings::build_cooccurrence(testing::random_word_corpus(rng, vocab, 60, 8), vocab.size(), 4);

  std::istringstream tree_in(testing::kToyOntologyTsv);
  const auto tree = embeddings::OntologyTree::read(tree_in);
  const auto phi = embeddings::build_ancestor_vectors(tree, vocab);

  embeddings::GloveOptions opt;
  opt.dim = 8;
  opt.epochs = 20;
  opt.seed = 9;
  const auto plain = embeddings::glove_train(table, opt);
  opt.alpha = 0.0;
  const auto onto = embeddings::glove_ontology_train(table, opt, phi);
  const bool identical = plain.params.w == onto.params.w && plain.params.w_ctx == onto.params.w_ctx &&
                         plain.params.b == onto.params.b && plain.params.b_ctx == onto.params.b_ctx &&
                         plain.epoch_cost == onto.epoch_cost;

  std::size_t rises = 0;
  for (std::size_t e = 1; e < plain.epoch_cost.size(); ++e) {
    rises += plain.epoch_cost[e] >= plain.epoch_cost[e - 1];
  }

  double closed = 0.0;
  for (const auto& [key, x] : table.counts) {
    closed += embeddings::glove_weight(x) * std::log(x) * std::log(x);
  }
  const embeddings::GloveParams zero(table.vocab_size, opt.dim);
  const double objective = embeddings::glove_objective(table, zero, opt);
  const double rel = std::abs(objective - closed) / closed;

  return {identical && rises == 0 && rel < 1e-12,
          std::string("alpha=0 ") + (identical ? "bit-identical" : "DIFFERS") + "; epoch cost " +
              fmt("%.4f", plain.epoch_cost.front()) + " -> " + fmt("%.4f", plain.epoch_cost.back()) +
              " with " + std::to_string(rises) + " rises over 20 epochs; zero-init objective " +
              fmt("%.6f", objective) + " vs closed form " + fmt("%.6f", closed)};
}

// ---------------------------------------------------------------------------
// 6. Ontology pull

Outcome ontology_pull() {
  std::istringstream tree_in(testing::kToyOntologyTsv);
  const auto tree = embeddings::OntologyTree::read(tree_in);
  std::vector<std::string> words{"<unk>"};
  for (const auto& g : testing::toy_sibling_groups()) words.insert(words.end(), g.begin(), g.end());
  words.insert(words.end(), {"filler", "other"});
  const auto vocab = corpus::Vocabulary::from_words(words);
  const auto phi = embeddings::build_ancestor_vectors(tree, vocab);

  // Uniform co-occurrence leaves siblings indistinguishable from the rest;
  // topical co-occurrence makes them rarer partners than topic mates.
  auto trial = [&](bool topical, std::string& detail) {
    int wins = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      nn::Rng rng(100 + seed);
      const auto sentences =
          topical ? testing::topic_word_corpus(rng, vocab, testing::toy_sibling_groups(), 300, 10, 0.3)
                  : testing::random_word_corpus(rng, vocab, 300, 10);
      const auto table = embeddings::build_cooccurrence(sentences, vocab.size(), 5);
      embeddings::GloveOptions opt;
      opt.dim = 10;
      opt.epochs = 50;
      opt.seed = seed;
      auto sibling_median = [&](const nn::Matrix& m) {
        std::vector<double> sims;
        for (const auto& g : testing::toy_sibling_groups()) {
          for (std::size_t i = 0; i < g.size(); ++i) {
            for (std::size_t j = i + 1; j < g.size(); ++j) {
              sims.push_back(testing::row_cosine(m, vocab.id(g[i]), vocab.id(g[j])));
            }
          }
        }
        return testing::median(sims);
      };
      const double base = sibling_median(embeddings::glove_train(table, opt).embedding());
      opt.alpha = 2.0;
      const double pulled =
          sibling_median(embeddings::glove_ontology_train(table, opt, phi).embedding());
      wins += pulled > base;
      detail += " " + fmt("%.3f", base) + "->" + fmt("%.3f", pulled);
    }
    return wins;
  };
  std::string uniform_detail, topical_detail;
  const int uniform = trial(false, uniform_detail);
  const int topical = trial(true, topical_detail);
  return {uniform >= 4 && topical >= 4,
          "alpha=2 raised the sibling median cosine in " + std::to_string(uniform) +
              "/5 seeds on a uniform corpus:" + uniform_detail + "; " + std::to_string(topical) +
              "/5 on a topical corpus:" + topical_detail + " (need 4 each)"};
}

// ---------------------------------------------------------------------------
// 7. Corruption LM

Outcome corruption_lm() {
  nn::Rng rng(6);
  std::vector<std::size_t> x(100000);
  for (auto& w : x) w = nn::uniform_index(rng, 50);
  const auto ex = embeddings::corrupt_sentence(x, 50, 0.2, rng);
  std::size_t replaced = 0, bad_labels = 0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    if (ex.targets[t] == embeddings::kReplacedLabel) {
      ++replaced;
      bad_labels += ex.x[t] == x[t];
    } else {
      bad_labels += ex.targets[t] != embeddings::kUnchangedLabel || ex.x[t] != x[t];
    }
  }
  const double rate = replaced / 1e5;

  std::size_t separated = 0;
  std::string detail;
  for (std::uint64_t seed : {1, 2, 3}) {
    nn::Rng crng(seed);
    const auto c = testing::two_class_corpus(crng);
    embeddings::CorruptionLmConfig cfg;
    cfg.dim = 8;
    cfg.cell_size = 16;
    cfg.max_len = 10;
    cfg.epochs = 30;
    cfg.seed = seed;
    const auto r = embeddings::corruption_lm_train(c.sentences, c.vocab.size(), cfg);
    const auto sep = testing::class_separation(r.embedding, c);
    separated += sep.within > sep.between;
    detail += " " + fmt("%.3f", sep.within) + ">" + fmt("%.3f", sep.between);
  }
  return {std::abs(rate - 0.2) <= 0.01 && bad_labels == 0 && separated == 3,
          "replacement rate " + fmt("%.4f", rate) + " over 1e5 tokens (0.2 +- 0.01), " +
              std::to_string(bad_labels) + " label errors; within > between cosine in " +
              std::to_string(separated) + "/3 seeds:" + detail};
}

// ---------------------------------------------------------------------------
// 8. Approximate matching

// Independent oracle: padded trigrams listed and counted by linear search.
double brute_trigram_cosine(const std::string& a, const std::string& b) {
  auto grams = [](const std::string& s) {
    const std::string p = "$$" + s + "$$";
    std::vector<std::pair<std::string, double>> out;
    for (std::size_t i = 0; i + 3 <= p.size(); ++i) {
      const std::string g = p.substr(i, 3);
      auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == g; });
      if (it == out.end()) {
        out.push_back({g, 1.0});
      } else {
        it->second += 1.0;
      }
    }
    return out;
  };
  const auto ga = grams(a), gb = grams(b);
  double dot = 0, na = 0, nb = 0;
  for (const auto& [g, c] : ga) {
    na += c * c;
    for (const auto& [h, d] : gb) dot += g == h ? c * d : 0.0;
  }
  for (const auto& [h, d] : gb) nb += d * d;
  return dot / std::sqrt(na * nb);
}

Outcome approximate_matching() {
  nn::Rng rng(88);
  auto word = [&] {
    // A small alphabet so that many pairs share grams.
    std::string s(1 + nn::uniform_index(rng, 10), 'a');
    for (auto& ch : s) ch = static_cast<char>('a' + nn::uniform_index(rng, 5));
    return s;
  };
  std::vector<std::string> keys, queries;
  for (int i = 0; i < 100; ++i) keys.push_back(word());
  for (int i = 0; i < 100; ++i) queries.push_back(word());
  const rulener::NgramIndex index(keys);

  std::size_t disagreements = 0, above = 0;
  double worst = 0.0;
  for (const auto& q : queries) {
    std::map<std::size_t, double> found;
    for (const auto& m : index.search(q, 1e-9)) found[m.key_id] = m.similarity;
    for (std::size_t k = 0; k < keys.size(); ++k) {
      const double oracle = brute_trigram_cosine(q, keys[k]);
      const double got = found.count(k) ? found[k] : 0.0;
      worst = std::max(worst, std::abs(got - oracle));
      const bool clear = std::abs(oracle - rulener::kDefaultThreshold) > 1e-12;
      const bool oracle_hit = oracle >= rulener::kDefaultThreshold;
      const bool index_hit = got >= rulener::kDefaultThreshold;
      disagreements += std::abs(got - oracle) > 1e-12 || (clear && oracle_hit != index_hit);
      above += oracle_hit;
    }
  }
  const double misspelt = brute_trigram_cosine("cardiomegally", "cardiomegaly");
  const auto best = rulener::NgramIndex({"cardiomegaly", "cardiac", "megacolon"})
                        .best("cardiomegally", rulener::kDefaultThreshold);
  const bool misspelt_ok = misspelt >= rulener::kDefaultThreshold && best &&
                           best->key == "cardiomegaly" &&
                           std::abs(best->similarity - misspelt) < 1e-12;
  return {disagreements == 0 && misspelt_ok,
          "10000 pairs (" + std::to_string(above) + " above 0.85): " +
              std::to_string(disagreements) + " disagreements, max |diff| " + fmt("%.1e", worst) +
              "; cos(cardiomegally, cardiomegaly) = " + fmt("%.4f", misspelt) + " >= 0.85"};
}

// ---------------------------------------------------------------------------
// 9. Negation rules

Outcome negation_rules(const std::string& fixtures) {
  const auto sentences = testing::load_traced_fixture(fixtures + "/negation/hybrid_trace.conllu");
  std::size_t decisions = 0, mismatches = 0;
  std::set<std::string> evidence_seen;
  for (const auto& s : sentences) {
    std::vector<negation::EntityTokens> ents;
    for (const auto& e : s.entities) ents.push_back(e.tokens);
    const auto nx = negation::negex_classify(s.normalized, ents, negation::TriggerLexicon::bundled());
    const auto d = negation::hybrid_classify(ents, nx, negation::filter_graph(s.graph));
    for (std::size_t k = 0; k < ents.size(); ++k) {
      ++decisions;
      const std::string ev(negation::evidence_name(d[k].evidence));
      evidence_seen.insert(ev);
      const bool ok = nx[k].negated == s.entities[k].negex_negated &&
                      nx[k].trigger == s.entities[k].negex_trigger &&
                      ev == s.entities[k].hybrid_evidence;
      if (!ok) {
        ++mismatches;
        std::cerr << "  AC9 mismatch: " << s.id << " entity " << k << '\n';
      }
    }
  }
  return {sentences.size() == 30 && mismatches == 0 && evidence_seen.size() == 4,
          std::to_string(sentences.size()) + " sentences, " + std::to_string(decisions) +
              " NegEx and hybrid decisions, " + std::to_string(mismatches) +
              " differ from the hand trace; all 4 evidence kinds exercised"};
}

// ---------------------------------------------------------------------------
// 10. Metric oracle

Outcome metric_oracle() {
  using corpus::Tag;
  std::vector<std::string> failed;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  };
  auto near = [](double a, double b) { return std::abs(a - b) < 1e-12; };

  corpus::TagGrid gold(3), pred(3);
  gold.set(0, 1, Tag::B);
  gold.set(2, 1, Tag::E);
  pred.set(0, 1, Tag::S);
  const auto r = evalkit::token_overlap_metrics({gold}, {pred});
  const auto& cf = r.classes.at("ClinicalFinding");
  check(cf.tp == 1 && cf.fp == 0 && cf.fn == 1 && near(cf.precision, 1.0) &&
            near(cf.recall, 0.5) && near(cf.f1, 2.0 / 3.0),
        "[B,O,E] vs [S,O,O]");
  const auto same = evalkit::token_overlap_metrics({gold}, {gold});
  check(near(same.classes.at("ClinicalFinding").f1, 1.0) && near(same.total.f1, 1.0), "pred = gold");
  const auto none = evalkit::token_overlap_metrics({gold}, {corpus::TagGrid(3)});
  check(none.total.precision == 0.0 && none.total.recall == 0.0 && none.total.f1 == 0.0, "all O");

  std::vector<evalkit::NegationItem> g6, p6;
  for (std::size_t i = 0; i < 6; ++i) g6.push_back({0, 1, {i}, i < 3});
  p6 = g6;
  for (auto& p : p6) p.negated = false;
  p6[0].negated = p6[1].negated = p6[4].negated = true;
  const auto n = evalkit::negation_entity_metrics(g6, p6);
  check(near(n.total.precision, 2.0 / 3.0) && near(n.total.recall, 2.0 / 3.0) &&
            near(n.total.f1, 2.0 / 3.0),
        "negation 2 right 1 wrong");
  std::vector<evalkit::NegationItem> g10, p10;
  for (std::size_t i = 0; i < 10; ++i) g10.push_back({0, 0, {i}, i < 4});
  p10 = g10;
  check(near(evalkit::negation_entity_metrics(g10, p10).total.f1, 1.0), "negation all correct");
  for (auto& p : p10) p.negated = false;
  const auto aff = evalkit::negation_entity_metrics(g10, p10);
  check(aff.total.precision == 0.0 && aff.total.recall == 0.0 && aff.total.f1 == 0.0,
        "negation all affirmed");

  std::vector<std::string> ids;
  for (int i = 0; i < 10; ++i) ids.push_back("doc" + std::to_string(i));
  const auto plan = evalkit::make_fold_plan(ids, 5, 42);
  std::multiset<std::string> seen;
  bool sizes = plan.k() == 5;
  for (const auto& f : plan.folds) {
    sizes = sizes && f.size() == 2;
    seen.insert(f.begin(), f.end());
  }
  check(sizes && seen == std::multiset<std::string>(ids.begin(), ids.end()), "10 docs in 5 folds");
  check(evalkit::make_fold_plan(ids, 5, 42).folds == plan.folds, "same seed, same folds");

  std::size_t call = 0;
  const auto cv = evalkit::cross_validate(ids, 5, 42, [&](const auto&, const auto&) {
    corpus::TagGrid gg(4), pp(4);
    for (std::size_t t = 0; t < 4; ++t) gg.set(t, 0, Tag::S);
    for (std::size_t t = 0; t <= call && t < 4; ++t) pp.set(t, 0, Tag::S);
    pp.set(3, 2, Tag::S);
    ++call;
    return evalkit::token_overlap_metrics({gg}, {pp});
  });
  double mean_f1 = 0.0;
  for (const auto& f : cv.folds) mean_f1 += f.total.f1 / 5.0;
  check(near(cv.mean.total.f1, mean_f1), "mean F1 is the fold average");

  std::string detail = "3 token-overlap, 3 negation and 3 fold fixtures";
  if (!failed.empty()) {
    detail += "; failed:";
    for (const auto& f : failed) detail += " [" + f + "]";
  }
  return {failed.empty(), detail};
}

// ---------------------------------------------------------------------------
// 11. Determinism

std::string file_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the whole CLI pipeline into `dir` and returns the produced files.
std::map<std::string, std::string> pipeline_outputs(const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ostringstream log;
  const auto syn = cli::synthetic_corpus(60, 4, 21);
  cli::write_report_dir((dir / "corpus").string(), syn.reports);
  {
    std::ofstream dict(dir / "dict.tsv", std::ios::binary);
    syn.dictionary.write(dict);
    std::ofstream cfg(dir / "tagger.cfg", std::ios::binary);
    cfg << "d = 8\nk = 8\nepochs = 3\nmin_count = 1\nseed = 5\n";
    std::ofstream onto(dir / "onto.tsv", std::ios::binary);
    onto << "C1\t-\tfinding\nC2\tC1\teffusion\nC3\tC1\tpneumothorax\nC4\tC1\tedema\n";
  }
  const std::string corpus = (dir / "corpus").string();

  cli::TrainEmbeddingsArgs te;
  te.corpus = corpus;
  te.dim = 8;
  te.epochs = 3;
  te.min_count = 1;
  te.seed = 4;
  te.ontology = (dir / "onto.tsv").string();
  for (const char* m : {"glove-onto", "lm"}) {
    te.method = m;
    te.out = (dir / (std::string("emb_") + m + ".txt")).string();
    cli::train_embeddings(te, log);
  }

  cli::TrainTaggerArgs tt;
  tt.config = (dir / "tagger.cfg").string();
  tt.ann_dir = corpus;
  tt.embeddings = (dir / "emb_glove-onto.txt").string();
  tt.out = (dir / "tagger.ckpt").string();
  cli::train_tagger(tt, log);
  cli::tag(tt.out, corpus, (dir / "pred.tags").string(), log);

  cli::RuleNerArgs rn;
  rn.dict = (dir / "dict.tsv").string();
  rn.in = corpus;
  rn.out = (dir / "rules.tags").string();
  cli::rule_ner(rn, log);

  corpus::save_tagged((dir / "gold.tags").string(), cli::gold_tags(syn.reports));
  cli::NegateArgs ng;
  ng.mode = "negex";
  ng.entities = (dir / "gold.tags").string();
  ng.out = (dir / "negex.json").string();
  cli::negate(ng, log);

  cli::EvalArgs ev;
  ev.gold = corpus;
  ev.pred = (dir / "pred.tags").string();
  ev.out = (dir / "eval.json").string();
  cli::eval(ev, log);

  cli::CrossvalArgs cv;
  cv.config = tt.config;
  cv.ann_dir = corpus;
  cv.folds = 3;
  cv.seed = 6;
  cv.out = (dir / "crossval.json").string();
  cli::crossval(cv, log);

  std::map<std::string, std::string> out;
  for (const char* f : {"emb_glove-onto.txt", "emb_lm.txt", "tagger.ckpt", "pred.tags",
                        "rules.tags", "negex.json", "eval.json", "crossval.json"}) {
    out[f] = file_bytes(dir / f);
  }
  return out;
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "radnlp_acceptance_determinism";
  const auto first = pipeline_outputs(root / "a");
  const auto second = pipeline_outputs(root / "b");
  std::vector<std::string> differ;
  std::size_t bytes = 0;
  for (const auto& [name, content] : first) {
    bytes += content.size();
    if (content.empty() || second.at(name) != content) differ.push_back(name);
  }
  fs::remove_all(root);
  std::string detail = std::to_string(first.size()) + " artifacts (" + std::to_string(bytes) +
                       " bytes: embeddings, checkpoint, tag files, decisions, reports) ";
  if (differ.empty()) {
    detail += "byte-identical across two runs";
  } else {
    detail += "differ:";
    for (const auto& d : differ) detail += " " + d;
  }
  return {differ.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<int> only;
  std::string fixtures = RADNLP_FIXTURE_DIR;
  app.add_option("--criterion", only, "run only these criteria (1-11)")
      ->check(CLI::Range(1, 11));
  app.add_option("--fixtures", fixtures)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"gradient suite", gradient_suite},
      {"IOBES round trip", iobes_round_trip},
      {"overfit oracle", overfit_oracle},
      {"synthetic end-to-end NER", synthetic_end_to_end},
      {"GloVe equivalence", glove_equivalence},
      {"ontology pull", ontology_pull},
      {"corruption LM", corruption_lm},
      {"approximate matching", approximate_matching},
      {"negation rules", [&] { return negation_rules(fixtures); }},
      {"metric oracle", metric_oracle},
      {"determinism", determinism},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i + 1);
    if (!only.empty() && std::find(only.begin(), only.end(), number) == only.end()) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << "AC" << number << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << criteria[i].first
              << ": " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
