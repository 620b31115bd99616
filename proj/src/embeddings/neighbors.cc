#include "radnlp/embeddings/neighbors.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "radnlp/corpus/lemmatizer.h"
#include "radnlp/error.h"

namespace radnlp::embeddings {

std::vector<Neighbor> nearest_to_vector(const EmbeddingMatrix& e, std::span<const double> probe,
                                        std::size_t m, const std::set<std::size_t>& exclude) {
  if (probe.size() != e.dim()) throw Error("neighbors: probe has the wrong dimension");
  const double pn = std::sqrt(nn::dot(probe, probe));
  std::vector<Neighbor> all;
  all.reserve(e.size());
  for (std::size_t r = 0; r < e.size(); ++r) {
    if (exclude.count(r)) continue;
    auto row = e.values.row(r);
    const double rn = std::sqrt(nn::dot(row, row));
    const double sim = (pn == 0.0 || rn == 0.0) ? 0.0 : nn::dot(row, probe) / (pn * rn);
    all.push_back({e.words[r], r, sim});
  }
  const std::size_t keep = std::min(m, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                    [](const Neighbor& a, const Neighbor& b) {
                      if (a.similarity != b.similarity) return a.similarity > b.similarity;
                      return a.index < b.index;
                    });
  all.resize(keep);
  return all;
}

std::vector<Neighbor> nearest_neighbors(const EmbeddingMatrix& e, const std::string& word,
                                        std::size_t m) {
  const std::size_t r = e.find(word);
  if (r == EmbeddingMatrix::npos) throw Error("'" + word + "' is not in the vocabulary");
  return nearest_to_vector(e, e.values.row(r), m, {r});
}

std::vector<QueryTerm> parse_query(const std::string& expr) {
  std::istringstream in(expr);
  std::vector<QueryTerm> terms;
  std::string tok;
  double sign = 1.0;
  bool expect_word = true;
  while (in >> tok) {
    // Allow "a+b" by splitting off operators.
    std::size_t pos = 0;
    while (pos < tok.size()) {
      const char ch = tok[pos];
      if (ch == '+' || ch == '-') {
        if (!expect_word && !terms.empty()) {
          sign = ch == '+' ? 1.0 : -1.0;
          expect_word = true;
        } else if (terms.empty() && sign == 1.0) {
          sign = ch == '+' ? 1.0 : -1.0;
        } else {
          throw Error("query: unexpected '" + std::string(1, ch) + "' in \"" + expr + "\"");
        }
        ++pos;
        continue;
      }
      std::size_t end = tok.find_first_of("+-", pos);
      if (end == std::string::npos) end = tok.size();
      if (!expect_word) throw Error("query: missing operator in \"" + expr + "\"");
      terms.push_back({sign, corpus::normalize(tok.substr(pos, end - pos))});
      sign = 1.0;
      expect_word = false;
      pos = end;
    }
  }
  if (terms.empty() || expect_word) throw Error("query: incomplete expression \"" + expr + "\"");
  return terms;
}

std::vector<Neighbor> query_neighbors(const EmbeddingMatrix& e, const std::string& expr,
                                      std::size_t m) {
  std::vector<double> probe(e.dim(), 0.0);
  std::set<std::size_t> used;
  for (const auto& t : parse_query(expr)) {
    const std::size_t r = e.find(t.word);
    if (r == EmbeddingMatrix::npos) throw Error("'" + t.word + "' is not in the vocabulary");
    nn::axpy(t.sign, e.values.row(r), probe);
    used.insert(r);
  }
  return nearest_to_vector(e, probe, m, used);
}

}  // namespace radnlp::embeddings
