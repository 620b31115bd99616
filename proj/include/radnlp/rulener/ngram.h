#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace radnlp::rulener {

inline constexpr double kDefaultThreshold = 0.85;

// Character 3-gram counts of "$$" + text + "$$".
std::map<std::string, int> trigram_counts(std::string_view text);

// Cosine of the two trigram count vectors, in [0, 1].
double ngram_cosine(std::string_view a, std::string_view b);

struct ApproxMatch {
  std::size_t key_id = 0;
  std::string key;
  double similarity = 0.0;
};

// Inverted trigram index over a fixed key set.
class NgramIndex {
 public:
  NgramIndex() = default;
  explicit NgramIndex(std::vector<std::string> keys);

  // Every key with cosine >= threshold, best first: higher similarity, then
  // shorter key, then lexicographic.
  std::vector<ApproxMatch> search(std::string_view query, double threshold) const;
  std::optional<ApproxMatch> best(std::string_view query, double threshold) const;

  std::size_t size() const { return keys_.size(); }
  const std::string& key(std::size_t id) const { return keys_.at(id); }

 private:
  std::vector<std::string> keys_;
  std::vector<double> norms_;
  // gram -> (key id, count)
  std::map<std::string, std::vector<std::pair<std::size_t, int>>, std::less<>> postings_;
};

}  // namespace radnlp::rulener
