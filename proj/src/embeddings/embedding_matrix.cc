#include "radnlp/embeddings/embedding_matrix.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "radnlp/error.h"
#include "radnlp/nn/random.h"

namespace radnlp::embeddings {

EmbeddingMatrix::EmbeddingMatrix(const corpus::Vocabulary& vocab, nn::Matrix m)
    : words(vocab.words()), values(std::move(m)), vocab_fingerprint(vocab.fingerprint()) {
  validate();
}

std::size_t EmbeddingMatrix::find(const std::string& word) const {
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i] == word) return i;
  }
  return npos;
}

void EmbeddingMatrix::validate() const {
  if (words.size() != values.rows()) {
    throw Error("embeddings: " + std::to_string(words.size()) + " words but " +
                std::to_string(values.rows()) + " rows");
  }
  if (!values.all_finite()) throw Error("embeddings: non-finite value");
}

void write_embeddings(std::ostream& out, const EmbeddingMatrix& e) {
  e.validate();
  out << e.size() << ' ' << e.dim() << '\n';
  char buf[32];
  for (std::size_t r = 0; r < e.size(); ++r) {
    out << e.words[r];
    for (double v : e.values.row(r)) {
      std::snprintf(buf, sizeof buf, " %.17g", v);
      out << buf;
    }
    out << '\n';
  }
}

EmbeddingMatrix read_embeddings(std::istream& in, const std::string& source) {
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line)) throw ParseError(source, 1, "missing header");
  std::size_t rows = 0, dim = 0;
  {
    std::istringstream hs(line);
    if (!(hs >> rows >> dim) || dim == 0) {
      throw ParseError(source, 1, "header must be '<|V|> <d>'");
    }
  }
  EmbeddingMatrix e;
  e.values = nn::Matrix(rows, dim);
  e.words.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    ++lineno;
    if (!std::getline(in, line)) throw ParseError(source, lineno, "truncated file");
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word.empty()) throw ParseError(source, lineno, "missing word");
    for (std::size_t c = 0; c < dim; ++c) {
      std::string field;
      if (!(ls >> field)) throw ParseError(source, lineno, "expected " + std::to_string(dim) + " values");
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
        throw ParseError(source, lineno, "bad value '" + field + "'");
      }
      e.values(r, c) = v;
    }
    std::string extra;
    if (ls >> extra) throw ParseError(source, lineno, "too many values");
    e.words.push_back(word);
  }
  e.vocab_fingerprint = corpus::Vocabulary::from_words(e.words).fingerprint();
  return e;
}

void save_embeddings(const std::string& path, const EmbeddingMatrix& e) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  write_embeddings(out, e);
  if (!out) throw Error("failed writing " + path);
}

EmbeddingMatrix load_embeddings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  return read_embeddings(in, path);
}

nn::Matrix random_embeddings(std::size_t vocab_size, std::size_t dim, std::uint64_t seed) {
  if (vocab_size == 0 || dim == 0) throw Error("random_embeddings: empty shape");
  nn::Rng rng(seed);
  nn::Matrix m(vocab_size, dim);
  for (double& v : m.values()) v = nn::uniform_open(rng, -0.01, 0.01);
  return m;
}

nn::Matrix align_embeddings(const EmbeddingMatrix& e, const corpus::Vocabulary& vocab,
                            std::uint64_t seed, std::size_t* copied) {
  nn::Matrix m = random_embeddings(vocab.size(), e.dim(), seed);
  std::unordered_map<std::string, std::size_t> rows;
  for (std::size_t r = 0; r < e.size(); ++r) rows.emplace(e.words[r], r);
  std::size_t n = 0;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    auto it = rows.find(vocab.word(i));
    if (it == rows.end()) continue;
    auto src = e.values.row(it->second);
    std::copy(src.begin(), src.end(), m.row(i).begin());
    ++n;
  }
  if (copied) *copied = n;
  return m;
}

}  // namespace radnlp::embeddings
