#pragma once

#include <string_view>
#include <vector>

#include "radnlp/negation/dependency.h"
#include "radnlp/negation/negex.h"

namespace radnlp::negation {

enum class Evidence { kNone, kNegexWindow, kDepNeg, kDepConjOr };
std::string_view evidence_name(Evidence e);

struct NegationDecision {
  std::size_t entity = 0;  // index into the entity list
  bool negated = false;
  Evidence evidence = Evidence::kNone;
  std::size_t trigger = kNoTrigger;
};

// An entity is negated when
//   (1) one of its tokens is in a neg edge (dep-neg), or is joined by a
//       conj:or edge to a token that is in a neg edge (dep-conj-or), or
//   (2) NegEx negated it, no entity has a token nearer to the trigger
//       span than it does (ties negate all tied entities) and the sentence
//       has no neg edge at all.
// `graph` should already be filtered; other labels are ignored anyway.
std::vector<NegationDecision> hybrid_classify(const std::vector<EntityTokens>& entities,
                                              const std::vector<NegexResult>& negex,
                                              const DependencyGraph& graph);

// NegEx alone, as decisions.
std::vector<NegationDecision> negex_decisions(const std::vector<NegexResult>& negex);

}  // namespace radnlp::negation
