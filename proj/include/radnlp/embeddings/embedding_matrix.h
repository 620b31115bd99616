#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "radnlp/corpus/vocabulary.h"
#include "radnlp/nn/matrix.h"

namespace radnlp::embeddings {

// Word vectors indexed like a vocabulary. Rows keep the vocabulary order so
// the matrix can seed a tagger's W directly.
struct EmbeddingMatrix {
  std::vector<std::string> words;
  nn::Matrix values;  // |V| x d
  std::uint64_t vocab_fingerprint = 0;

  EmbeddingMatrix() = default;
  EmbeddingMatrix(const corpus::Vocabulary& vocab, nn::Matrix values);

  std::size_t size() const { return values.rows(); }
  std::size_t dim() const { return values.cols(); }
  // Row of `word`, or npos.
  std::size_t find(const std::string& word) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // Throws Error when a row count or value is off.
  void validate() const;
};

// Text format: "<|V|> <d>" then "word v1 ... vd" per line, full precision.
void write_embeddings(std::ostream& out, const EmbeddingMatrix& e);
EmbeddingMatrix read_embeddings(std::istream& in, const std::string& source = "embeddings");
void save_embeddings(const std::string& path, const EmbeddingMatrix& e);
EmbeddingMatrix load_embeddings(const std::string& path);

// Entries uniform in (-0.01, 0.01).
nn::Matrix random_embeddings(std::size_t vocab_size, std::size_t dim, std::uint64_t seed);

// |V| x d matrix for `vocab`: rows of words present in `e` are copied, the
// rest come from random_embeddings(seed). Throws Error when e.dim() != dim.
nn::Matrix align_embeddings(const EmbeddingMatrix& e, const corpus::Vocabulary& vocab,
                            std::uint64_t seed, std::size_t* copied = nullptr);

}  // namespace radnlp::embeddings
