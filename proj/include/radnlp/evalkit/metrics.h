#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radnlp/corpus/iobes.h"

namespace radnlp::evalkit {

struct Score {
  std::size_t tp = 0, fp = 0, fn = 0;
  double precision = 0.0, recall = 0.0, f1 = 0.0;

  // Recomputes P, R and F1 from the counts; 0/0 is 0.
  void finalize();
  Score& operator+=(const Score& o);
};

struct EvalReport {
  std::string fold;                       // "all" outside cross-validation
  std::map<std::string, Score> classes;   // by class name
  Score total;
  std::size_t warnings = 0;               // predictions that matched no gold entity

  nlohmann::json to_json() const;
  static EvalReport from_json(const nlohmann::json& j);
};

// A token is positive for a class when its tag is I, B, E or S. Each of the
// four semantic channels is scored on its own; the total pools their
// counts (micro average) and leaves the negation channel out. Throws Error
// when the grid lists differ in length or any pair in token count.
EvalReport token_overlap_metrics(const std::vector<corpus::TagGrid>& gold,
                                 const std::vector<corpus::TagGrid>& pred);

// A gold entity with its negation flag, or a prediction about one.
struct NegationItem {
  std::size_t sentence = 0;  // position in the evaluated sentence list
  int channel = 0;
  std::vector<std::size_t> tokens;
  bool negated = false;
};

// Binary scoring over gold entities: TP gold and predicted negated, FP
// predicted negated but gold affirmed, FN gold negated but not predicted.
// Entities are matched on (sentence, channel, tokens). A negated
// prediction for an unknown entity counts as FP and as a warning.
EvalReport negation_entity_metrics(const std::vector<NegationItem>& gold,
                                   const std::vector<NegationItem>& predicted);

// Predictions read off a tagger's negation channel: an entity is negated
// when any of its tokens carries I, B, E or S there.
std::vector<NegationItem> negation_from_grids(const std::vector<NegationItem>& gold,
                                              const std::vector<corpus::TagGrid>& pred);

}  // namespace radnlp::evalkit
