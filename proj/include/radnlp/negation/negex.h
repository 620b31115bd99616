#pragma once

#include <cstddef>
#include <vector>

#include "radnlp/negation/triggers.h"

namespace radnlp::negation {

inline constexpr std::size_t kNegexWindow = 6;
inline constexpr std::size_t kNoTrigger = static_cast<std::size_t>(-1);

// An entity as the sorted token indices it covers (may be disjoint).
using EntityTokens = std::vector<std::size_t>;

struct NegexResult {
  bool negated = false;
  std::size_t trigger = kNoTrigger;  // deciding trigger span [trigger, trigger_end)
  std::size_t trigger_end = kNoTrigger;
};

// A pre-trigger negates entities whose first token lies 1..6 tokens after
// the trigger's last token; a post-trigger negates entities whose last
// token lies 1..6 tokens before the trigger's first token. Pseudo-triggers
// negate nothing. When several triggers apply, the nearest one is reported
// (ties go to the earlier trigger).
std::vector<NegexResult> negex_classify(const std::vector<std::string>& normalized_tokens,
                                        const std::vector<EntityTokens>& entities,
                                        const TriggerLexicon& lexicon,
                                        std::size_t window = kNegexWindow);

}  // namespace radnlp::negation
