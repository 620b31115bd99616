#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace radnlp::embeddings {

// Sparse symmetric word-word counts. A pair at distance k inside the
// window adds 1/k to X_ij and X_ji; a word paired with itself adds 1/k to
// X_ii once.
struct CooccurrenceTable {
  std::size_t vocab_size = 0;
  std::size_t window = 10;
  std::map<std::pair<std::size_t, std::size_t>, double> counts;

  double at(std::size_t i, std::size_t j) const;
  bool empty() const { return counts.empty(); }
  std::size_t nonzeros() const { return counts.size(); }
  // Adds other's counts; same vocab_size and window required.
  void merge(const CooccurrenceTable& other);
};

// `sentences` holds word indices; positions equal to `skip_id` (normally
// the unknown word) contribute nothing but still occupy their slot, so
// distances are those of the text. Pairs never cross a sentence boundary.
CooccurrenceTable build_cooccurrence(const std::vector<std::vector<std::size_t>>& sentences,
                                     std::size_t vocab_size, std::size_t window = 10,
                                     std::size_t skip_id = static_cast<std::size_t>(-1));

}  // namespace radnlp::embeddings
