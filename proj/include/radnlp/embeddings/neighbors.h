#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "radnlp/embeddings/embedding_matrix.h"

namespace radnlp::embeddings {

struct Neighbor {
  std::string word;
  std::size_t index = 0;
  double similarity = 0.0;
};

// Top-m rows by cosine to `probe`, skipping `exclude`. Ties keep row order;
// zero rows score 0.
std::vector<Neighbor> nearest_to_vector(const EmbeddingMatrix& e, std::span<const double> probe,
                                        std::size_t m, const std::set<std::size_t>& exclude = {});

// Throws Error when the word has no row.
std::vector<Neighbor> nearest_neighbors(const EmbeddingMatrix& e, const std::string& word,
                                        std::size_t m);

// "heart + enlarged - lung": words are normalized like corpus tokens; the
// first term may carry a sign. Throws Error on a malformed expression.
struct QueryTerm {
  double sign = 1.0;
  std::string word;
};
std::vector<QueryTerm> parse_query(const std::string& expr);

// Sum of signed word vectors as the probe; the query words are excluded.
std::vector<Neighbor> query_neighbors(const EmbeddingMatrix& e, const std::string& expr,
                                      std::size_t m);

}  // namespace radnlp::embeddings
