#include "radnlp/rulener/scanner.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>

#include "radnlp/corpus/tokenizer.h"
#include "radnlp/error.h"

namespace radnlp::rulener {

void RedirectTable::add(std::string_view phrase, std::string_view canonical) {
  const std::string from = normalize_phrase(phrase);
  const std::string to = normalize_phrase(canonical);
  if (from.empty() || to.empty()) throw Error("redirect: empty phrase");
  map_[from] = to;
}

const std::string* RedirectTable::resolve(const std::string& normalized) const {
  auto it = map_.find(normalized);
  return it == map_.end() ? nullptr : &it->second;
}

std::vector<std::string> RedirectTable::unresolved(const TermDictionary& dict) const {
  std::vector<std::string> out;
  for (const auto& [from, to] : map_) {
    if (!dict.contains(to)) out.push_back(from + " -> " + to);
  }
  return out;
}

RedirectTable RedirectTable::read(std::istream& in, const std::string& source) {
  RedirectTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError(source, lineno, "expected phrase<TAB>canonical");
    }
    try {
      t.add(line.substr(0, tab), line.substr(tab + 1));
    } catch (const Error& e) {
      throw ParseError(source, lineno, e.what());
    }
  }
  return t;
}

RedirectTable RedirectTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  return read(in, path);
}

std::string_view match_kind_name(MatchKind k) {
  switch (k) {
    case MatchKind::kExact: return "exact";
    case MatchKind::kApproximate: return "approximate";
    case MatchKind::kRedirect: return "redirect";
  }
  return "?";
}

RuleNer::RuleNer(TermDictionary dict, RedirectTable redirects, ScanOptions options)
    : dict_(std::move(dict)), redirects_(std::move(redirects)), options_(options),
      index_(dict_.keys()) {
  if (!(options_.threshold > 0.0 && options_.threshold <= 1.0)) {
    throw Error("rule-ner: threshold must lie in (0, 1]");
  }
  if (options_.max_phrase_tokens == 0) throw Error("rule-ner: max phrase length must be >= 1");
}

std::vector<RuleMatch> RuleNer::scan(const corpus::Sentence& s) const {
  const std::size_t n = s.size();
  std::vector<RuleMatch> out;
  auto phrase = [&](std::size_t b, std::size_t e) {
    std::string p;
    for (std::size_t t = b; t < e; ++t) {
      if (t > b) p += ' ';
      p += s.tokens[t].normalized;
    }
    return p;
  };
  auto emit = [&](std::size_t b, std::size_t e, const std::string& key, MatchKind kind,
                  double sim) {
    for (const auto& entry : dict_.lookup(key)) out.push_back({b, e, entry.group, kind, key, sim});
  };

  // Longest exact key starting at each position, 0 when none.
  std::vector<std::size_t> exact(n, 0);
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t len = std::min(options_.max_phrase_tokens, n - b); len >= 1; --len) {
      if (dict_.contains(phrase(b, b + len))) {
        exact[b] = len;
        break;
      }
    }
  }
  // Fuzzy phrases must not swallow an exact key that starts inside them
  // ("the left costophrenic angle" would otherwise approximate the key).
  auto fuzzy_limit = [&](std::size_t b, std::size_t longest) {
    std::size_t len = 1;
    while (len < longest && exact[b + len] == 0) ++len;
    return len;
  };

  std::size_t i = 0;
  while (i < n) {
    const std::size_t longest = std::min(options_.max_phrase_tokens, n - i);
    std::size_t advance = 0;
    if (exact[i]) {
      emit(i, i + exact[i], phrase(i, i + exact[i]), MatchKind::kExact, 1.0);
      advance = exact[i];
    }
    const std::size_t fuzzy_longest = fuzzy_limit(i, longest);
    if (options_.approximate) {
      const std::size_t top = options_.approximate_multiword ? fuzzy_longest : 1;
      for (std::size_t len = top; len >= 1 && !advance; --len) {
        if (auto m = index_.best(phrase(i, i + len), options_.threshold)) {
          emit(i, i + len, m->key, MatchKind::kApproximate, m->similarity);
          advance = len;
        }
      }
    }
    if (options_.redirects) {
      for (std::size_t len = fuzzy_longest; len >= 1 && !advance; --len) {
        const std::string* target = redirects_.resolve(phrase(i, i + len));
        if (target && dict_.contains(*target)) {
          emit(i, i + len, *target, MatchKind::kRedirect, 1.0);
          advance = len;
        }
      }
    }
    i += advance ? advance : 1;
  }
  return out;
}

corpus::TagGrid matches_to_grid(std::size_t n_tokens, const std::vector<RuleMatch>& matches) {
  corpus::TagGrid grid(n_tokens);
  for (const auto& m : matches) {
    if (m.end > n_tokens || m.begin >= m.end) throw Error("rule-ner: match outside sentence");
    std::vector<std::size_t> tokens(m.end - m.begin);
    std::iota(tokens.begin(), tokens.end(), m.begin);
    corpus::write_entity(grid, static_cast<int>(m.group), tokens);
  }
  return grid;
}

corpus::TagGrid RuleNer::tag(const corpus::Sentence& s) const {
  return matches_to_grid(s.size(), scan(s));
}

std::vector<corpus::TaggedSentence> RuleNer::tag_report(const std::string& text,
                                                        const std::string& report_id) const {
  std::vector<corpus::TaggedSentence> out;
  for (const auto& s : corpus::tokenize_and_split(text, report_id)) {
    corpus::TaggedSentence ts;
    ts.report_id = report_id;
    for (const auto& t : s.tokens) ts.surfaces.push_back(t.surface);
    ts.grid = tag(s);
    out.push_back(std::move(ts));
  }
  return out;
}

}  // namespace radnlp::rulener
