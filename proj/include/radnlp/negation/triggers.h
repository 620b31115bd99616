#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace radnlp::negation {

enum class TriggerRole { kPre, kPost, kPseudo };
std::string_view role_name(TriggerRole r);

struct Trigger {
  std::vector<std::string> tokens;  // normalized
  TriggerRole role;
};

// NegEx phrases with their roles; phrases are normalized like corpus tokens.
class TriggerLexicon {
 public:
  // The lexicon shipped in data/negex_triggers.tsv.
  static const TriggerLexicon& bundled();
  // TSV `phrase<TAB>role` with role pre, post or pseudo. Throws ParseError
  // on bad rows and Error on an empty lexicon.
  static TriggerLexicon read(std::istream& in, const std::string& source = "triggers");
  static TriggerLexicon load(const std::string& path);
  static TriggerLexicon from_text(std::string_view tsv, const std::string& source);

  const std::vector<Trigger>& triggers() const { return triggers_; }
  std::size_t size() const { return triggers_.size(); }
  std::size_t longest() const { return longest_; }

 private:
  std::vector<Trigger> triggers_;  // longest first, then file order
  std::size_t longest_ = 0;
};

struct TriggerMatch {
  std::size_t begin = 0;  // token range [begin, end)
  std::size_t end = 0;
  TriggerRole role = TriggerRole::kPre;
};

// Left-to-right scan; the longest trigger wins at a position and the scan
// resumes after it, so a pseudo-trigger hides the shorter triggers inside it.
std::vector<TriggerMatch> find_triggers(const std::vector<std::string>& normalized_tokens,
                                        const TriggerLexicon& lexicon);

}  // namespace radnlp::negation
