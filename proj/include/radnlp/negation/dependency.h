#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace radnlp::negation {

// Token indices are 0-based positions in the sentence.
struct DepEdge {
  std::size_t head = 0;
  std::size_t dependent = 0;
  std::string label;
  bool operator==(const DepEdge&) const = default;
};

struct DependencyGraph {
  std::size_t n_tokens = 0;
  std::vector<DepEdge> edges;
};

struct ParsedSentence {
  std::vector<std::string> forms;
  DependencyGraph graph;
};

// CoNLL-U: blank-line separated sentences; ID, FORM, HEAD and DEPREL are
// read. Comments, multiword ranges (1-2) and empty nodes (1.1) are skipped;
// HEAD 0 (the root attachment) yields no edge. Throws ParseError with the
// line number on malformed rows.
std::vector<ParsedSentence> read_conllu(std::istream& in, const std::string& source = "conllu");
std::vector<ParsedSentence> load_conllu(const std::string& path);

// Keeps only `neg` and `conj:or` edges.
DependencyGraph filter_graph(const DependencyGraph& g);

}  // namespace radnlp::negation
