#include "radnlp/negation/hybrid.h"

#include <set>

#include "radnlp/error.h"

namespace radnlp::negation {

std::string_view evidence_name(Evidence e) {
  switch (e) {
    case Evidence::kNone: return "none";
    case Evidence::kNegexWindow: return "negex-window";
    case Evidence::kDepNeg: return "dep-neg";
    case Evidence::kDepConjOr: return "dep-conj-or";
  }
  return "?";
}

namespace {

// Token distance from an entity to a trigger span [begin, end).
std::size_t distance_to(const EntityTokens& e, std::size_t begin, std::size_t end) {
  std::size_t best = static_cast<std::size_t>(-1);
  for (auto t : e) {
    const std::size_t d = t < begin ? begin - t : t >= end ? t - (end - 1) : 0;
    best = std::min(best, d);
  }
  return best;
}

}  // namespace

std::vector<NegationDecision> hybrid_classify(const std::vector<EntityTokens>& entities,
                                              const std::vector<NegexResult>& negex,
                                              const DependencyGraph& graph) {
  if (negex.size() != entities.size()) throw Error("hybrid: NegEx output not aligned to entities");
  std::set<std::size_t> in_neg;
  for (const auto& e : graph.edges) {
    if (e.label != "neg") continue;
    in_neg.insert(e.head);
    in_neg.insert(e.dependent);
  }
  // Tokens one conj:or hop away from a neg token.
  std::set<std::size_t> or_neg;
  for (const auto& e : graph.edges) {
    if (e.label != "conj:or") continue;
    if (in_neg.count(e.head)) or_neg.insert(e.dependent);
    if (in_neg.count(e.dependent)) or_neg.insert(e.head);
  }
  const bool sentence_has_neg = !in_neg.empty();

  std::vector<NegationDecision> out(entities.size());
  for (std::size_t k = 0; k < entities.size(); ++k) {
    out[k].entity = k;
    bool dep_neg = false, dep_or = false;
    for (auto t : entities[k]) {
      dep_neg = dep_neg || in_neg.count(t);
      dep_or = dep_or || or_neg.count(t);
    }
    if (dep_neg) {
      out[k].negated = true;
      out[k].evidence = Evidence::kDepNeg;
    } else if (dep_or) {
      out[k].negated = true;
      out[k].evidence = Evidence::kDepConjOr;
    } else if (negex[k].negated && !sentence_has_neg) {
      const std::size_t trig = negex[k].trigger;
      const std::size_t trig_end = negex[k].trigger_end;
      const std::size_t mine = distance_to(entities[k], trig, trig_end);
      bool closest = true;
      for (const auto& other : entities) {
        closest = closest && distance_to(other, trig, trig_end) >= mine;
      }
      if (closest) {
        out[k].negated = true;
        out[k].evidence = Evidence::kNegexWindow;
        out[k].trigger = trig;
      }
    }
  }
  return out;
}

std::vector<NegationDecision> negex_decisions(const std::vector<NegexResult>& negex) {
  std::vector<NegationDecision> out(negex.size());
  for (std::size_t k = 0; k < negex.size(); ++k) {
    out[k].entity = k;
    if (negex[k].negated) {
      out[k].negated = true;
      out[k].evidence = Evidence::kNegexWindow;
      out[k].trigger = negex[k].trigger;
    }
  }
  return out;
}

}  // namespace radnlp::negation
