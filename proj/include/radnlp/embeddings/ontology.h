#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "radnlp/corpus/vocabulary.h"

namespace radnlp::embeddings {

// A forest of concepts linked by is_parent_of. Read from a TSV of
// `child_id<TAB>parent_id<TAB>child_label`; roots have parent "-" or "".
class OntologyTree {
 public:
  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

  // Throws ParseError for malformed lines, duplicate ids, unknown parents
  // and cycles.
  static OntologyTree read(std::istream& in, const std::string& source = "ontology");
  static OntologyTree load(const std::string& path);

  std::size_t size() const { return ids_.size(); }
  const std::string& id(std::size_t c) const { return ids_.at(c); }
  const std::string& label(std::size_t c) const { return labels_.at(c); }
  // Label tokens normalized like corpus words and joined by single spaces.
  const std::string& normalized_label(std::size_t c) const { return normalized_.at(c); }
  std::size_t label_tokens(std::size_t c) const { return label_tokens_.at(c); }
  std::size_t parent(std::size_t c) const { return parents_.at(c); }
  // Concept index for an id, or kNoParent.
  std::size_t find_id(const std::string& id) const;
  // First concept (file order) whose normalized label equals `normalized`,
  // or kNoParent.
  std::size_t find_label(const std::string& normalized) const;

  // Proper ancestors, nearest first.
  std::vector<std::size_t> ancestors(std::size_t c) const;
  std::size_t depth(std::size_t c) const { return ancestors(c).size(); }

 private:
  std::vector<std::string> ids_, labels_, normalized_;
  std::vector<std::size_t> label_tokens_;
  std::vector<std::size_t> parents_;
  std::map<std::string, std::size_t> by_id_;
  std::map<std::string, std::size_t> by_label_;
};

// phi for every vocabulary word: sorted concept indices of all ancestors of
// the word's matched concept. Empty when the word matches nothing (or a
// root). Only single-token labels can match a word.
struct AncestorVectors {
  std::vector<std::vector<std::size_t>> phi;  // indexed by word id
  std::size_t matched_words = 0;
  std::size_t multiword_concepts_skipped = 0;

  // Cosine of two binary indicator vectors; 0 when either is empty.
  double similarity(std::size_t word_a, std::size_t word_b) const;
};

AncestorVectors build_ancestor_vectors(const OntologyTree& tree,
                                       const corpus::Vocabulary& vocab);

// Cosine between sorted index sets viewed as binary vectors.
double binary_cosine(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

}  // namespace radnlp::embeddings
