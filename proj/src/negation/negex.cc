#include "radnlp/negation/negex.h"

#include "radnlp/error.h"

namespace radnlp::negation {

std::vector<NegexResult> negex_classify(const std::vector<std::string>& tokens,
                                        const std::vector<EntityTokens>& entities,
                                        const TriggerLexicon& lexicon, std::size_t window) {
  for (const auto& e : entities) {
    if (e.empty()) throw Error("negex: empty entity");
    for (auto t : e) {
      if (t >= tokens.size()) throw Error("negex: entity token outside the sentence");
    }
  }
  const auto triggers = find_triggers(tokens, lexicon);
  std::vector<NegexResult> out(entities.size());
  for (std::size_t k = 0; k < entities.size(); ++k) {
    const std::size_t first = entities[k].front();
    const std::size_t last = entities[k].back();
    std::size_t best_gap = static_cast<std::size_t>(-1);
    for (const auto& trig : triggers) {
      std::size_t gap = 0;
      if (trig.role == TriggerRole::kPre && first >= trig.end) {
        gap = first - (trig.end - 1);
      } else if (trig.role == TriggerRole::kPost && trig.begin > last) {
        gap = trig.begin - last;
      } else {
        continue;
      }
      if (gap >= 1 && gap <= window && gap < best_gap) {
        best_gap = gap;
        out[k] = {true, trig.begin, trig.end};
      }
    }
  }
  return out;
}

}  // namespace radnlp::negation
