#include "radnlp/evalkit/crossval.h"

#include <set>

#include "radnlp/error.h"
#include "radnlp/nn/random.h"

namespace radnlp::evalkit {

std::vector<std::string> FoldPlan::training_ids(std::size_t f) const {
  std::vector<std::string> out;
  for (std::size_t g = 0; g < folds.size(); ++g) {
    if (g != f) out.insert(out.end(), folds[g].begin(), folds[g].end());
  }
  return out;
}

FoldPlan make_fold_plan(const std::vector<std::string>& doc_ids, std::size_t k,
                        std::uint64_t seed) {
  if (k < 2) throw Error("folds: k must be >= 2");
  if (doc_ids.size() < k) {
    throw Error("folds: " + std::to_string(doc_ids.size()) + " documents cannot fill " +
                std::to_string(k) + " folds");
  }
  if (std::set<std::string>(doc_ids.begin(), doc_ids.end()).size() != doc_ids.size()) {
    throw Error("folds: duplicate document id");
  }
  std::vector<std::string> order = doc_ids;
  nn::Rng rng(seed);
  nn::shuffle(order, rng);
  FoldPlan plan;
  plan.seed = seed;
  plan.folds.resize(k);
  for (std::size_t i = 0; i < order.size(); ++i) plan.folds[i % k].push_back(order[i]);
  return plan;
}

EvalReport pooled_report(const std::vector<EvalReport>& folds) {
  if (folds.empty()) throw Error("crossval: no folds");
  EvalReport out;
  out.fold = "pooled";
  for (const auto& f : folds) {
    for (const auto& [name, s] : f.classes) out.classes[name] += s;
    out.total += f.total;
    out.warnings += f.warnings;
  }
  return out;
}

EvalReport mean_report(const std::vector<EvalReport>& folds) {
  EvalReport out = pooled_report(folds);
  out.fold = "mean";
  const double n = static_cast<double>(folds.size());
  auto average = [&](Score& dst, auto pick) {
    double p = 0, r = 0, f = 0;
    for (const auto& fold : folds) {
      const Score& s = pick(fold);
      p += s.precision;
      r += s.recall;
      f += s.f1;
    }
    dst.precision = p / n;
    dst.recall = r / n;
    dst.f1 = f / n;
  };
  for (auto& [name, s] : out.classes) {
    average(s, [&](const EvalReport& fold) -> const Score& {
      auto it = fold.classes.find(name);
      if (it == fold.classes.end()) throw Error("crossval: fold is missing class " + name);
      return it->second;
    });
  }
  average(out.total, [](const EvalReport& fold) -> const Score& { return fold.total; });
  return out;
}

nlohmann::json CrossValidation::to_json() const {
  nlohmann::json j;
  j["folds"] = nlohmann::json::array();
  for (const auto& f : folds) j["folds"].push_back(f.to_json());
  j["mean"] = mean.to_json();
  j["pooled"] = pooled.to_json();
  return j;
}

CrossValidation cross_validate(const std::vector<std::string>& doc_ids, std::size_t k,
                               std::uint64_t seed, const FoldRunner& train_and_evaluate) {
  const FoldPlan plan = make_fold_plan(doc_ids, k, seed);
  CrossValidation cv;
  for (std::size_t f = 0; f < plan.k(); ++f) {
    EvalReport r = train_and_evaluate(plan.training_ids(f), plan.folds[f]);
    r.fold = std::to_string(f);
    cv.folds.push_back(std::move(r));
  }
  cv.mean = mean_report(cv.folds);
  cv.pooled = pooled_report(cv.folds);
  return cv;
}

}  // namespace radnlp::evalkit
