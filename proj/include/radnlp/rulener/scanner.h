#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "radnlp/corpus/iobes.h"
#include "radnlp/corpus/token.h"
#include "radnlp/rulener/dictionary.h"
#include "radnlp/rulener/ngram.h"

namespace radnlp::rulener {

// Normalized phrase -> canonical phrase, e.g. oedema -> edema.
class RedirectTable {
 public:
  void add(std::string_view phrase, std::string_view canonical);
  // Canonical form of a normalized phrase, or nullptr.
  const std::string* resolve(const std::string& normalized) const;
  std::size_t size() const { return map_.size(); }
  // "phrase -> canonical" for each redirect whose target is missing from `dict`.
  std::vector<std::string> unresolved(const TermDictionary& dict) const;

  // TSV `phrase<TAB>canonical`.
  static RedirectTable read(std::istream& in, const std::string& source = "redirects");
  static RedirectTable load(const std::string& path);

 private:
  std::map<std::string, std::string> map_;
};

enum class MatchKind { kExact, kApproximate, kRedirect };
std::string_view match_kind_name(MatchKind k);

struct RuleMatch {
  std::size_t begin = 0;  // token range [begin, end)
  std::size_t end = 0;
  EntityClass group = EntityClass::kBodyLocation;
  MatchKind kind = MatchKind::kExact;
  std::string key;  // dictionary key that matched
  double similarity = 1.0;
};

struct ScanOptions {
  double threshold = kDefaultThreshold;
  std::size_t max_phrase_tokens = 6;
  bool approximate = true;
  bool approximate_multiword = true;  // false: approximate single tokens only
  bool redirects = true;
};

// Greedy left-to-right longest-match tagger over normalized tokens.
class RuleNer {
 public:
  RuleNer(TermDictionary dict, RedirectTable redirects = {}, ScanOptions options = {});

  // At each position: the longest exact phrase, else the longest phrase
  // with an approximate key at or above the threshold, else the longest
  // phrase whose redirect target is a key. Approximate and redirect
  // phrases stop short of any exact key starting inside them. A hit emits
  // one match per group of the key and skips past the phrase. Output is
  // sorted and disjoint per group.
  std::vector<RuleMatch> scan(const corpus::Sentence& s) const;

  // Matches as a tag grid; the negation channel stays O.
  corpus::TagGrid tag(const corpus::Sentence& s) const;
  std::vector<corpus::TaggedSentence> tag_report(const std::string& text,
                                                 const std::string& report_id) const;

  const TermDictionary& dictionary() const { return dict_; }
  const ScanOptions& options() const { return options_; }

 private:
  TermDictionary dict_;
  RedirectTable redirects_;
  ScanOptions options_;
  NgramIndex index_;
};

corpus::TagGrid matches_to_grid(std::size_t n_tokens, const std::vector<RuleMatch>& matches);

}  // namespace radnlp::rulener
