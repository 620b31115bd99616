#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace radnlp::corpus {

// Half-open byte range [start, end) into the source report.
struct CharSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const CharSpan&) const = default;
};

struct Token {
  std::string surface;
  std::string normalized;
  CharSpan span;
};

struct Sentence {
  std::vector<Token> tokens;
  std::string report_id;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
};

}  // namespace radnlp::corpus
