#include "radnlp/corpus/lemmatizer.h"

#include <algorithm>
#include <cctype>

#include "radnlp/embedded_data.h"
#include "radnlp/error.h"

namespace radnlp::corpus {

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool all_alpha(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalpha(c) != 0;
  });
}

}  // namespace

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

Lemmatizer Lemmatizer::from_table(std::string_view tsv) {
  Lemmatizer lem;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= tsv.size()) {
    std::size_t nl = tsv.find('\n', pos);
    if (nl == std::string_view::npos) nl = tsv.size();
    std::string_view line = tsv.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0 || tab + 1 >= line.size()) {
      throw ParseError("lemma table", line_no, "expected surface<TAB>lemma");
    }
    lem.exceptions_[to_lower_ascii(line.substr(0, tab))] =
        to_lower_ascii(line.substr(tab + 1));
  }
  return lem;
}

const Lemmatizer& Lemmatizer::bundled() {
  static const Lemmatizer lem = from_table(embedded::kLemmaExceptions);
  return lem;
}

std::string Lemmatizer::lemmatize(std::string_view word) const {
  std::string w = to_lower_ascii(word);
  if (auto it = exceptions_.find(w); it != exceptions_.end()) {
    return it->second;
  }
  if (!all_alpha(w)) return w;

  const std::size_t n = w.size();
  if (n > 4 && ends_with(w, "ies")) return w.substr(0, n - 3) + "y";
  if (ends_with(w, "sses")) return w.substr(0, n - 2);
  if (n > 4 && (ends_with(w, "xes") || ends_with(w, "ches") ||
                ends_with(w, "shes"))) {
    return w.substr(0, n - 2);
  }
  if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is")) {
    return w;
  }
  if (n > 3 && w.back() == 's') return w.substr(0, n - 1);
  return w;
}

std::string normalize(std::string_view token_surface) {
  return Lemmatizer::bundled().lemmatize(token_surface);
}

}  // namespace radnlp::corpus
