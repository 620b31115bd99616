#include "radnlp/evalkit/metrics.h"

#include <tuple>

#include "radnlp/error.h"

namespace radnlp::evalkit {

using corpus::Tag;

void Score::finalize() {
  auto ratio = [](std::size_t a, std::size_t b) {
    return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
  };
  precision = ratio(tp, tp + fp);
  recall = ratio(tp, tp + fn);
  f1 = (precision + recall) == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
}

Score& Score::operator+=(const Score& o) {
  tp += o.tp;
  fp += o.fp;
  fn += o.fn;
  finalize();
  return *this;
}

namespace {

nlohmann::json score_json(const Score& s) {
  return {{"tp", s.tp}, {"fp", s.fp}, {"fn", s.fn},
          {"p", s.precision}, {"r", s.recall}, {"f1", s.f1}};
}

Score score_from_json(const nlohmann::json& j) {
  Score s;
  s.tp = j.at("tp").get<std::size_t>();
  s.fp = j.at("fp").get<std::size_t>();
  s.fn = j.at("fn").get<std::size_t>();
  s.precision = j.at("p").get<double>();
  s.recall = j.at("r").get<double>();
  s.f1 = j.at("f1").get<double>();
  return s;
}

bool positive(Tag t) { return t != Tag::O; }

}  // namespace

nlohmann::json EvalReport::to_json() const {
  nlohmann::json j;
  j["fold"] = fold;
  j["classes"] = nlohmann::json::object();
  for (const auto& [name, s] : classes) j["classes"][name] = score_json(s);
  j["total"] = score_json(total);
  if (warnings) j["warnings"] = warnings;
  return j;
}

EvalReport EvalReport::from_json(const nlohmann::json& j) {
  EvalReport r;
  r.fold = j.at("fold").get<std::string>();
  for (const auto& [name, s] : j.at("classes").items()) r.classes[name] = score_from_json(s);
  r.total = score_from_json(j.at("total"));
  r.warnings = j.value("warnings", std::size_t{0});
  return r;
}

EvalReport token_overlap_metrics(const std::vector<corpus::TagGrid>& gold,
                                 const std::vector<corpus::TagGrid>& pred) {
  if (gold.size() != pred.size()) {
    throw Error("eval: " + std::to_string(gold.size()) + " gold sentences but " +
                std::to_string(pred.size()) + " predicted");
  }
  EvalReport r;
  r.fold = "all";
  std::vector<Score> per(corpus::kNumEntityClasses);
  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].size() != pred[s].size()) {
      throw Error("eval: sentence " + std::to_string(s) + " has " +
                  std::to_string(gold[s].size()) + " gold tokens but " +
                  std::to_string(pred[s].size()) + " predicted");
    }
    for (std::size_t t = 0; t < gold[s].size(); ++t) {
      for (int c = 0; c < corpus::kNumEntityClasses; ++c) {
        const bool g = positive(gold[s].at(t, c));
        const bool p = positive(pred[s].at(t, c));
        per[c].tp += g && p;
        per[c].fp += !g && p;
        per[c].fn += g && !p;
      }
    }
  }
  for (int c = 0; c < corpus::kNumEntityClasses; ++c) {
    per[c].finalize();
    r.classes[std::string(corpus::class_name(static_cast<corpus::EntityClass>(c)))] = per[c];
    r.total += per[c];
  }
  r.total.finalize();
  return r;
}

EvalReport negation_entity_metrics(const std::vector<NegationItem>& gold,
                                   const std::vector<NegationItem>& predicted) {
  using Key = std::tuple<std::size_t, int, std::vector<std::size_t>>;
  std::map<Key, bool> pred;
  EvalReport r;
  r.fold = "all";
  Score s;
  std::map<Key, bool> gold_keys;
  for (const auto& g : gold) gold_keys[{g.sentence, g.channel, g.tokens}] = g.negated;
  for (const auto& p : predicted) {
    Key k{p.sentence, p.channel, p.tokens};
    if (!gold_keys.count(k)) {
      if (p.negated) {
        ++s.fp;
        ++r.warnings;
      }
      continue;
    }
    pred[k] = pred[k] || p.negated;
  }
  for (const auto& [k, g] : gold_keys) {
    auto it = pred.find(k);
    const bool p = it != pred.end() && it->second;
    s.tp += g && p;
    s.fp += !g && p;
    s.fn += g && !p;
  }
  s.finalize();
  r.classes["Negation"] = s;
  r.total = s;
  return r;
}

std::vector<NegationItem> negation_from_grids(const std::vector<NegationItem>& gold,
                                              const std::vector<corpus::TagGrid>& pred) {
  std::vector<NegationItem> out;
  out.reserve(gold.size());
  for (const auto& g : gold) {
    if (g.sentence >= pred.size()) throw Error("eval: entity refers to a missing sentence");
    NegationItem p = g;
    p.negated = false;
    for (auto t : g.tokens) {
      if (t >= pred[g.sentence].size()) throw Error("eval: entity token outside the sentence");
      p.negated = p.negated || positive(pred[g.sentence].at(t, corpus::kNegationChannel));
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace radnlp::evalkit
