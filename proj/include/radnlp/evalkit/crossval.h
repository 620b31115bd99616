#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radnlp/evalkit/metrics.h"

namespace radnlp::evalkit {

// Document ids split into k test folds: a seeded shuffle, then round-robin
// assignment, so sizes differ by at most one.
struct FoldPlan {
  std::uint64_t seed = 0;
  std::vector<std::vector<std::string>> folds;

  std::size_t k() const { return folds.size(); }
  // Every id not in fold f.
  std::vector<std::string> training_ids(std::size_t f) const;
};

// Throws Error when k < 2, ids repeat, or there are fewer ids than folds.
FoldPlan make_fold_plan(const std::vector<std::string>& doc_ids, std::size_t k, std::uint64_t seed);

struct CrossValidation {
  std::vector<EvalReport> folds;
  EvalReport mean;    // unweighted mean of the fold P, R, F1; counts summed
  EvalReport pooled;  // P, R, F1 of the summed counts

  nlohmann::json to_json() const;
};

// Runs `train_and_evaluate(train_ids, test_ids)` once per fold, in fold
// order, and labels each report with its fold number.
using FoldRunner = std::function<EvalReport(const std::vector<std::string>& train_ids,
                                            const std::vector<std::string>& test_ids)>;
CrossValidation cross_validate(const std::vector<std::string>& doc_ids, std::size_t k,
                               std::uint64_t seed, const FoldRunner& train_and_evaluate);

// Mean and pooled summaries of fold reports with identical class sets.
EvalReport mean_report(const std::vector<EvalReport>& folds);
EvalReport pooled_report(const std::vector<EvalReport>& folds);

}  // namespace radnlp::evalkit
