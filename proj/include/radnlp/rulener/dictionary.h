#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "radnlp/corpus/standoff.h"
#include "radnlp/embeddings/ontology.h"

namespace radnlp::rulener {

using corpus::EntityClass;

enum class Provenance { kOntology, kManual, kRedirect };
std::string_view provenance_name(Provenance p);

// Tokenizes and normalizes a phrase exactly like corpus text and joins the
// tokens with single spaces.
std::string normalize_phrase(std::string_view text);

struct DictEntry {
  std::string term;  // normalized
  EntityClass group;
  Provenance provenance;
};

// Normalized term -> semantic groups. A term may carry several groups.
class TermDictionary {
 public:
  // Adds a group for a term (normalized first); duplicates are ignored.
  void add(std::string_view term, EntityClass group, Provenance provenance);
  // Same, for a key that is already normalized.
  void add_normalized(const std::string& key, EntityClass group, Provenance provenance);
  // Drops every group of `term` (already normalized).
  void erase(const std::string& term);

  // Groups of a normalized term, empty when absent.
  const std::vector<DictEntry>& lookup(const std::string& normalized) const;
  bool contains(const std::string& normalized) const { return entries_.count(normalized) > 0; }
  std::size_t size() const { return entries_.size(); }
  std::vector<std::string> keys() const;
  const std::map<std::string, std::vector<DictEntry>>& entries() const { return entries_; }

  // TSV `term<TAB>group<TAB>provenance`; '#' comments; ParseError with line
  // numbers on bad rows.
  static TermDictionary read(std::istream& in, const std::string& source = "dictionary");
  static TermDictionary load(const std::string& path);
  void write(std::ostream& out) const;

 private:
  std::map<std::string, std::vector<DictEntry>> entries_;
};

// Ontology concept id -> semantic group for hand-mapped ancestors.
struct GroupMapping {
  std::map<std::string, EntityClass> groups;

  // TSV `concept_id<TAB>group`.
  static GroupMapping read(std::istream& in, const std::string& source = "mapping");
  static GroupMapping load(const std::string& path);
};

struct DictionaryStats {
  std::size_t ontology_entries = 0;
  std::size_t skipped_concepts = 0;   // no mapped concept on the path to the root
  std::size_t manual_overrides = 0;   // ontology keys replaced by manual terms
};

// Each concept takes the group of the nearest mapped concept on its path to
// the root, itself included. Manual terms replace ontology groups on key
// collision. Throws Error on an empty mapping or a mapped id missing from
// the tree.
TermDictionary build_dictionary(const embeddings::OntologyTree& tree, const GroupMapping& mapping,
                                const TermDictionary& manual, DictionaryStats* stats = nullptr);

}  // namespace radnlp::rulener
