#include "radnlp/rulener/ngram.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "radnlp/error.h"

namespace radnlp::rulener {
namespace {

double norm_of(const std::map<std::string, int>& counts) {
  double s = 0.0;
  for (const auto& [g, c] : counts) s += static_cast<double>(c) * c;
  return std::sqrt(s);
}

double cosine(double dot, double na, double nb) {
  if (na == 0.0 || nb == 0.0) return 0.0;
  // Clamp the rounding excess of identical vectors.
  return std::min(1.0, dot / (na * nb));
}

bool better(const ApproxMatch& a, const ApproxMatch& b) {
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  if (a.key.size() != b.key.size()) return a.key.size() < b.key.size();
  return a.key < b.key;
}

}  // namespace

std::map<std::string, int> trigram_counts(std::string_view text) {
  std::string padded = "$$";
  padded += text;
  padded += "$$";
  std::map<std::string, int> out;
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) ++out[padded.substr(i, 3)];
  return out;
}

double ngram_cosine(std::string_view a, std::string_view b) {
  const auto ga = trigram_counts(a);
  const auto gb = trigram_counts(b);
  double dot = 0.0;
  for (const auto& [g, c] : ga) {
    auto it = gb.find(g);
    if (it != gb.end()) dot += static_cast<double>(c) * it->second;
  }
  return cosine(dot, norm_of(ga), norm_of(gb));
}

NgramIndex::NgramIndex(std::vector<std::string> keys) : keys_(std::move(keys)) {
  norms_.reserve(keys_.size());
  for (std::size_t id = 0; id < keys_.size(); ++id) {
    const auto grams = trigram_counts(keys_[id]);
    norms_.push_back(norm_of(grams));
    for (const auto& [g, c] : grams) postings_[g].push_back({id, c});
  }
}

std::vector<ApproxMatch> NgramIndex::search(std::string_view query, double threshold) const {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw Error("ngram: threshold must lie in (0, 1]");
  const auto grams = trigram_counts(query);
  const double qn = norm_of(grams);
  std::unordered_map<std::size_t, double> dots;
  for (const auto& [g, c] : grams) {
    auto it = postings_.find(g);
    if (it == postings_.end()) continue;
    for (const auto& [id, kc] : it->second) dots[id] += static_cast<double>(c) * kc;
  }
  std::vector<ApproxMatch> out;
  for (const auto& [id, dot] : dots) {
    const double sim = cosine(dot, qn, norms_[id]);
    if (sim >= threshold) out.push_back({id, keys_[id], sim});
  }
  std::sort(out.begin(), out.end(), better);
  return out;
}

std::optional<ApproxMatch> NgramIndex::best(std::string_view query, double threshold) const {
  auto all = search(query, threshold);
  if (all.empty()) return std::nullopt;
  return all.front();
}

}  // namespace radnlp::rulener
