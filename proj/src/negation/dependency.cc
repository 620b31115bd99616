#include "radnlp/negation/dependency.h"

#include <charconv>
#include <fstream>
#include <istream>

#include "radnlp/error.h"

namespace radnlp::negation {
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

bool parse_index(const std::string& s, std::size_t& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

struct Pending {
  ParsedSentence sentence;
  std::vector<std::pair<std::size_t, std::string>> heads;  // per token
  std::vector<int> lines;
};

}  // namespace

std::vector<ParsedSentence> read_conllu(std::istream& in, const std::string& source) {
  std::vector<ParsedSentence> out;
  Pending cur;
  auto flush = [&] {
    if (cur.sentence.forms.empty()) return;
    const std::size_t n = cur.sentence.forms.size();
    cur.sentence.graph.n_tokens = n;
    for (std::size_t t = 0; t < n; ++t) {
      const auto& [head, label] = cur.heads[t];
      if (head == 0) continue;
      if (head > n) throw ParseError(source, cur.lines[t], "HEAD outside the sentence");
      cur.sentence.graph.edges.push_back({head - 1, t, label});
    }
    out.push_back(std::move(cur.sentence));
    cur = Pending{};
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') continue;
    auto f = split_tabs(line);
    if (f.size() != 10) throw ParseError(source, lineno, "expected 10 columns");
    if (f[0].find_first_of("-.") != std::string::npos) continue;
    std::size_t id = 0, head = 0;
    if (!parse_index(f[0], id) || id != cur.sentence.forms.size() + 1) {
      throw ParseError(source, lineno, "token ids must run 1, 2, 3, ...");
    }
    if (!parse_index(f[6], head)) throw ParseError(source, lineno, "bad HEAD '" + f[6] + "'");
    cur.sentence.forms.push_back(f[1]);
    cur.heads.push_back({head, f[7]});
    cur.lines.push_back(lineno);
  }
  flush();
  return out;
}

std::vector<ParsedSentence> load_conllu(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  return read_conllu(in, path);
}

DependencyGraph filter_graph(const DependencyGraph& g) {
  DependencyGraph out;
  out.n_tokens = g.n_tokens;
  for (const auto& e : g.edges) {
    if (e.label == "neg" || e.label == "conj:or") out.edges.push_back(e);
  }
  return out;
}

}  // namespace radnlp::negation
