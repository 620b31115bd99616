#include "radnlp/corpus/tokenizer.h"

#include <cctype>

#include "radnlp/corpus/lemmatizer.h"

namespace radnlp::corpus {

namespace {

bool is_word_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

bool is_terminal(std::string_view surface) {
  return surface == "." || surface == "?" || surface == "!";
}

// A terminal at `end` closes the sentence when only whitespace follows, or
// whitespace and then an uppercase letter.
bool closes_sentence(std::string_view text, std::size_t end) {
  std::size_t i = end;
  while (i < text.size() && is_space(static_cast<unsigned char>(text[i]))) ++i;
  if (i == text.size()) return true;
  if (i == end) return false;
  return std::isupper(static_cast<unsigned char>(text[i])) != 0;
}

}  // namespace

std::vector<Sentence> tokenize_and_split(std::string_view text,
                                         const std::string& report_id) {
  std::vector<Sentence> out;
  Sentence current;
  current.report_id = report_id;

  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (is_space(c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (is_word_byte(c)) {
      while (i < text.size() && is_word_byte(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
    } else {
      ++i;
    }
    Token tok;
    tok.surface = std::string(text.substr(start, i - start));
    tok.normalized = normalize(tok.surface);
    tok.span = {start, i};
    const bool terminal = is_terminal(tok.surface);
    current.tokens.push_back(std::move(tok));
    if (terminal && closes_sentence(text, i)) {
      out.push_back(std::move(current));
      current = Sentence{};
      current.report_id = report_id;
    }
  }
  if (!current.tokens.empty()) out.push_back(std::move(current));
  return out;
}

}  // namespace radnlp::corpus
