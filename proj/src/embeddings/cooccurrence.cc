#include "radnlp/embeddings/cooccurrence.h"

#include "radnlp/error.h"

namespace radnlp::embeddings {

double CooccurrenceTable::at(std::size_t i, std::size_t j) const {
  auto it = counts.find({i, j});
  return it == counts.end() ? 0.0 : it->second;
}

void CooccurrenceTable::merge(const CooccurrenceTable& other) {
  if (other.vocab_size != vocab_size || other.window != window) {
    throw Error("cooccurrence: merging tables of different shape");
  }
  for (const auto& [key, v] : other.counts) counts[key] += v;
}

CooccurrenceTable build_cooccurrence(const std::vector<std::vector<std::size_t>>& sentences,
                                     std::size_t vocab_size, std::size_t window,
                                     std::size_t skip_id) {
  if (window == 0) throw Error("cooccurrence: window must be >= 1");
  CooccurrenceTable table;
  table.vocab_size = vocab_size;
  table.window = window;
  for (const auto& s : sentences) {
    for (std::size_t a = 0; a < s.size(); ++a) {
      if (s[a] == skip_id) continue;
      if (s[a] >= vocab_size) throw Error("cooccurrence: word index out of range");
      for (std::size_t b = a + 1; b < s.size() && b - a <= window; ++b) {
        if (s[b] == skip_id) continue;
        if (s[b] >= vocab_size) throw Error("cooccurrence: word index out of range");
        const double w = 1.0 / static_cast<double>(b - a);
        table.counts[{s[a], s[b]}] += w;
        if (s[a] != s[b]) table.counts[{s[b], s[a]}] += w;
      }
    }
  }
  return table;
}

}  // namespace radnlp::embeddings
