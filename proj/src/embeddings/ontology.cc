#include "radnlp/embeddings/ontology.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>

#include "radnlp/corpus/tokenizer.h"
#include "radnlp/error.h"

namespace radnlp::embeddings {
namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) return out;
    start = tab + 1;
  }
}

}  // namespace

OntologyTree OntologyTree::read(std::istream& in, const std::string& source) {
  OntologyTree t;
  std::vector<std::string> parent_ids;
  std::vector<int> lines;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto f = split_tabs(line);
    if (f.size() != 3) throw ParseError(source, lineno, "expected child_id, parent_id, label");
    if (f[0].empty()) throw ParseError(source, lineno, "empty concept id");
    if (t.by_id_.count(f[0])) {
      throw ParseError(source, lineno, "concept " + f[0] + " listed twice");
    }
    t.by_id_[f[0]] = t.ids_.size();
    t.ids_.push_back(f[0]);
    t.labels_.push_back(f[2]);
    parent_ids.push_back(f[1] == "-" ? "" : f[1]);
    lines.push_back(lineno);
  }
  t.parents_.assign(t.ids_.size(), kNoParent);
  for (std::size_t c = 0; c < t.ids_.size(); ++c) {
    if (parent_ids[c].empty()) continue;
    auto it = t.by_id_.find(parent_ids[c]);
    if (it == t.by_id_.end()) {
      throw ParseError(source, lines[c], "unknown parent " + parent_ids[c]);
    }
    t.parents_[c] = it->second;
  }
  // Walking up more than size() steps means a cycle.
  for (std::size_t c = 0; c < t.ids_.size(); ++c) {
    std::size_t p = t.parents_[c];
    for (std::size_t steps = 0; p != kNoParent; ++steps) {
      if (steps > t.ids_.size() || p == c) {
        throw ParseError(source, lines[c], "cycle through concept " + t.ids_[c]);
      }
      p = t.parents_[p];
    }
  }
  for (std::size_t c = 0; c < t.ids_.size(); ++c) {
    std::string norm;
    std::size_t n = 0;
    for (const auto& s : corpus::tokenize_and_split(t.labels_[c])) {
      for (const auto& tok : s.tokens) {
        if (!norm.empty()) norm += ' ';
        norm += tok.normalized;
        ++n;
      }
    }
    t.normalized_.push_back(norm);
    t.label_tokens_.push_back(n);
    if (!norm.empty()) t.by_label_.emplace(norm, c);
  }
  return t;
}

OntologyTree OntologyTree::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  return read(in, path);
}

std::size_t OntologyTree::find_id(const std::string& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? kNoParent : it->second;
}

std::size_t OntologyTree::find_label(const std::string& normalized) const {
  auto it = by_label_.find(normalized);
  return it == by_label_.end() ? kNoParent : it->second;
}

std::vector<std::size_t> OntologyTree::ancestors(std::size_t c) const {
  std::vector<std::size_t> out;
  for (std::size_t p = parents_.at(c); p != kNoParent; p = parents_[p]) out.push_back(p);
  return out;
}

double binary_cosine(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.empty() || b.empty()) return 0.0;
  std::size_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  if (common == a.size() && common == b.size()) return 1.0;
  return static_cast<double>(common) /
         std::sqrt(static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

double AncestorVectors::similarity(std::size_t word_a, std::size_t word_b) const {
  return binary_cosine(phi.at(word_a), phi.at(word_b));
}

AncestorVectors build_ancestor_vectors(const OntologyTree& tree,
                                       const corpus::Vocabulary& vocab) {
  AncestorVectors out;
  out.phi.resize(vocab.size());
  for (std::size_t c = 0; c < tree.size(); ++c) {
    if (tree.label_tokens(c) > 1) ++out.multiword_concepts_skipped;
  }
  for (std::size_t w = 0; w < vocab.size(); ++w) {
    if (w == vocab.unk_id()) continue;
    const std::size_t c = tree.find_label(vocab.word(w));
    if (c == OntologyTree::kNoParent) continue;
    ++out.matched_words;
    auto anc = tree.ancestors(c);
    std::sort(anc.begin(), anc.end());
    out.phi[w] = std::move(anc);
  }
  return out;
}

}  // namespace radnlp::embeddings
