#include "radnlp/rulener/dictionary.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "radnlp/corpus/tokenizer.h"
#include "radnlp/error.h"

namespace radnlp::rulener {
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

template <typename F>
void for_each_row(std::istream& in, const std::string& source, std::size_t columns, F&& f) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_tabs(line);
    if (fields.size() != columns) {
      throw ParseError(source, lineno, "expected " + std::to_string(columns) + " tab-separated fields");
    }
    f(fields, lineno);
  }
}

EntityClass parse_group(const std::string& name, const std::string& source, int lineno) {
  auto c = corpus::parse_class(name);
  if (!c) throw ParseError(source, lineno, "unknown semantic group '" + name + "'");
  return *c;
}

}  // namespace

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kOntology: return "ontology";
    case Provenance::kManual: return "manual";
    case Provenance::kRedirect: return "redirect";
  }
  return "?";
}

std::string normalize_phrase(std::string_view text) {
  std::string out;
  for (const auto& s : corpus::tokenize_and_split(text)) {
    for (const auto& t : s.tokens) {
      if (!out.empty()) out += ' ';
      out += t.normalized;
    }
  }
  return out;
}

void TermDictionary::add(std::string_view term, EntityClass group, Provenance provenance) {
  add_normalized(normalize_phrase(term), group, provenance);
}

void TermDictionary::add_normalized(const std::string& key, EntityClass group,
                                    Provenance provenance) {
  if (key.empty()) throw Error("dictionary: empty term");
  auto& list = entries_[key];
  for (const auto& e : list) {
    if (e.group == group) return;
  }
  list.push_back({key, group, provenance});
}

void TermDictionary::erase(const std::string& term) { entries_.erase(term); }

const std::vector<DictEntry>& TermDictionary::lookup(const std::string& normalized) const {
  static const std::vector<DictEntry> kNone;
  auto it = entries_.find(normalized);
  return it == entries_.end() ? kNone : it->second;
}

std::vector<std::string> TermDictionary::keys() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

TermDictionary TermDictionary::read(std::istream& in, const std::string& source) {
  TermDictionary d;
  for_each_row(in, source, 3, [&](const std::vector<std::string>& f, int lineno) {
    Provenance p;
    if (f[2] == "ontology") {
      p = Provenance::kOntology;
    } else if (f[2] == "manual") {
      p = Provenance::kManual;
    } else if (f[2] == "redirect") {
      p = Provenance::kRedirect;
    } else {
      throw ParseError(source, lineno, "unknown provenance '" + f[2] + "'");
    }
    if (normalize_phrase(f[0]).empty()) throw ParseError(source, lineno, "empty term");
    d.add(f[0], parse_group(f[1], source, lineno), p);
  });
  return d;
}

TermDictionary TermDictionary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  return read(in, path);
}

void TermDictionary::write(std::ostream& out) const {
  for (const auto& [key, list] : entries_) {
    for (const auto& e : list) {
      out << key << '\t' << corpus::class_name(e.group) << '\t' << provenance_name(e.provenance)
          << '\n';
    }
  }
}

GroupMapping GroupMapping::read(std::istream& in, const std::string& source) {
  GroupMapping m;
  for_each_row(in, source, 2, [&](const std::vector<std::string>& f, int lineno) {
    if (m.groups.count(f[0])) throw ParseError(source, lineno, "concept " + f[0] + " mapped twice");
    m.groups[f[0]] = parse_group(f[1], source, lineno);
  });
  return m;
}

GroupMapping GroupMapping::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  return read(in, path);
}

TermDictionary build_dictionary(const embeddings::OntologyTree& tree, const GroupMapping& mapping,
                                const TermDictionary& manual, DictionaryStats* stats) {
  if (mapping.groups.empty()) throw Error("dictionary: empty group mapping");
  std::vector<int> group_of(tree.size(), -1);
  for (const auto& [id, group] : mapping.groups) {
    const std::size_t c = tree.find_id(id);
    if (c == embeddings::OntologyTree::kNoParent) {
      throw Error("dictionary: mapped concept " + id + " is not in the ontology");
    }
    group_of[c] = static_cast<int>(group);
  }
  DictionaryStats st;
  TermDictionary dict;
  for (std::size_t c = 0; c < tree.size(); ++c) {
    int group = -1;
    for (std::size_t p = c; p != embeddings::OntologyTree::kNoParent; p = tree.parent(p)) {
      if (group_of[p] >= 0) {
        group = group_of[p];
        break;
      }
    }
    if (group < 0 || tree.normalized_label(c).empty()) {
      ++st.skipped_concepts;
      continue;
    }
    dict.add_normalized(tree.normalized_label(c), static_cast<EntityClass>(group), Provenance::kOntology);
  }
  st.ontology_entries = dict.size();
  for (const auto& [key, list] : manual.entries()) {
    if (dict.contains(key)) {
      ++st.manual_overrides;
      dict.erase(key);
    }
    for (const auto& e : list) dict.add_normalized(key, e.group, e.provenance);
  }
  if (stats) *stats = st;
  return dict;
}

}  // namespace radnlp::rulener
