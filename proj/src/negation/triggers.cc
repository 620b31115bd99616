#include "radnlp/negation/triggers.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "radnlp/corpus/tokenizer.h"
#include "radnlp/error.h"
#include "radnlp/embedded_data.h"

namespace radnlp::negation {

std::string_view role_name(TriggerRole r) {
  switch (r) {
    case TriggerRole::kPre: return "pre";
    case TriggerRole::kPost: return "post";
    case TriggerRole::kPseudo: return "pseudo";
  }
  return "?";
}

const TriggerLexicon& TriggerLexicon::bundled() {
  static const TriggerLexicon lex = from_text(embedded::kNegexTriggers, "bundled triggers");
  return lex;
}

TriggerLexicon TriggerLexicon::from_text(std::string_view tsv, const std::string& source) {
  std::istringstream in{std::string(tsv)};
  return read(in, source);
}

TriggerLexicon TriggerLexicon::read(std::istream& in, const std::string& source) {
  TriggerLexicon lex;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(source, lineno, "expected phrase<TAB>role");
    const std::string phrase = line.substr(0, tab);
    const std::string role = line.substr(tab + 1);
    Trigger t;
    if (role == "pre") {
      t.role = TriggerRole::kPre;
    } else if (role == "post") {
      t.role = TriggerRole::kPost;
    } else if (role == "pseudo") {
      t.role = TriggerRole::kPseudo;
    } else {
      throw ParseError(source, lineno, "unknown role '" + role + "'");
    }
    for (const auto& s : corpus::tokenize_and_split(phrase)) {
      for (const auto& tok : s.tokens) t.tokens.push_back(tok.normalized);
    }
    if (t.tokens.empty()) throw ParseError(source, lineno, "empty trigger phrase");
    lex.longest_ = std::max(lex.longest_, t.tokens.size());
    lex.triggers_.push_back(std::move(t));
  }
  if (lex.triggers_.empty()) throw Error(source + ": empty trigger lexicon");
  std::stable_sort(lex.triggers_.begin(), lex.triggers_.end(),
                   [](const Trigger& a, const Trigger& b) { return a.tokens.size() > b.tokens.size(); });
  return lex;
}

TriggerLexicon TriggerLexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  return read(in, path);
}

std::vector<TriggerMatch> find_triggers(const std::vector<std::string>& tokens,
                                        const TriggerLexicon& lexicon) {
  std::vector<TriggerMatch> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const Trigger* hit = nullptr;
    for (const auto& t : lexicon.triggers()) {
      if (i + t.tokens.size() > tokens.size()) continue;
      if (std::equal(t.tokens.begin(), t.tokens.end(), tokens.begin() + static_cast<std::ptrdiff_t>(i))) {
        hit = &t;
        break;
      }
    }
    if (hit) {
      out.push_back({i, i + hit->tokens.size(), hit->role});
      i += hit->tokens.size();
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace radnlp::negation
