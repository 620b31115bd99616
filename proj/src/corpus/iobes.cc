#include "radnlp/corpus/iobes.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "radnlp/corpus/tokenizer.h"
#include "radnlp/error.h"

namespace radnlp::corpus {

namespace {

struct Placed {
  std::string id;
  std::vector<std::size_t> tokens;
};

bool shares_token(const std::vector<std::size_t>& a,
                  const std::vector<std::size_t>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    a[i] < b[j] ? ++i : ++j;
  }
  return false;
}

// Two multi-token entities whose extents overlap cannot both be encoded in
// one channel: the second B would arrive while the first is still open.
bool interleaves(const std::vector<std::size_t>& a,
                 const std::vector<std::size_t>& b) {
  if (a.size() < 2 || b.size() < 2) return false;
  return a.front() <= b.back() && b.front() <= a.back();
}

bool conflicts(const std::vector<std::size_t>& a,
               const std::vector<std::size_t>& b) {
  return shares_token(a, b) || interleaves(a, b);
}

std::vector<std::size_t> set_union(const std::vector<std::size_t>& a,
                                   const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

char tag_char(Tag t) {
  static constexpr char kChars[] = {'I', 'O', 'B', 'E', 'S'};
  return kChars[static_cast<int>(t)];
}

Tag parse_tag(char c) {
  switch (c) {
    case 'I': return Tag::I;
    case 'O': return Tag::O;
    case 'B': return Tag::B;
    case 'E': return Tag::E;
    case 'S': return Tag::S;
  }
  throw Error(std::string("bad IOBES tag '") + c + "'");
}

TagGrid::TagGrid(std::size_t n) {
  Row all_o;
  all_o.fill(Tag::O);
  rows_.assign(n, all_o);
}

std::vector<std::size_t> covered_tokens(const Sentence& s,
                                        const StandoffAnnotation& a) {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < s.tokens.size(); ++t) {
    const CharSpan& ts = s.tokens[t].span;
    for (const CharSpan& sp : a.spans) {
      if (ts.start < sp.end && sp.start < ts.end) {
        out.push_back(t);
        break;
      }
    }
  }
  return out;
}

void write_entity(TagGrid& grid, int channel,
                  const std::vector<std::size_t>& tokens) {
  if (tokens.empty()) return;
  if (tokens.size() == 1) {
    grid.set(tokens[0], channel, Tag::S);
    return;
  }
  grid.set(tokens.front(), channel, Tag::B);
  for (std::size_t i = 1; i + 1 < tokens.size(); ++i) {
    grid.set(tokens[i], channel, Tag::I);
  }
  grid.set(tokens.back(), channel, Tag::E);
}

TagGrid standoff_to_iobes(const Sentence& s,
                          const std::vector<StandoffAnnotation>& annotations) {
  TagGrid grid(s.size());
  std::vector<Placed> per_class[kNumEntityClasses];
  std::vector<std::vector<std::size_t>> negated;

  for (const auto& a : annotations) {
    auto toks = covered_tokens(s, a);
    if (toks.empty()) continue;
    auto& placed = per_class[static_cast<int>(a.cls)];
    for (const auto& other : placed) {
      if (conflicts(other.tokens, toks)) {
        throw Error("overlapping " + std::string(class_name(a.cls)) +
                    " entities " + other.id + " and " + a.entity_id);
      }
    }
    if (a.negated) negated.push_back(toks);
    placed.push_back({a.entity_id, std::move(toks)});
  }

  for (int c = 0; c < kNumEntityClasses; ++c) {
    for (const auto& p : per_class[c]) write_entity(grid, c, p.tokens);
  }

  // Negated entities of different classes may share tokens ("heart" as both
  // location and finding); the negation channel gets their union.
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < negated.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < negated.size(); ++j) {
        if (conflicts(negated[i], negated[j])) {
          negated[i] = set_union(negated[i], negated[j]);
          negated.erase(negated.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
          break;
        }
      }
    }
  }
  for (const auto& toks : negated) write_entity(grid, kNegationChannel, toks);
  return grid;
}

DecodedEntities iobes_to_entities(const TagGrid& grid) {
  DecodedEntities out;
  const std::size_t n = grid.size();
  for (int c = 0; c < kNumChannels; ++c) {
    std::optional<std::vector<std::size_t>> open;
    auto close_open = [&] {
      out.entities.push_back({c, std::move(*open)});
      open.reset();
    };
    for (std::size_t t = 0; t < n; ++t) {
      switch (grid.at(t, c)) {
        case Tag::O:
          break;
        case Tag::S:
          out.entities.push_back({c, {t}});
          break;
        case Tag::B:
          if (open) {
            ++out.repairs;
            close_open();
          }
          open = std::vector<std::size_t>{t};
          break;
        case Tag::I:
          if (open) {
            open->push_back(t);
          } else {
            ++out.repairs;
            const bool continues =
                t + 1 < n && (grid.at(t + 1, c) == Tag::I || grid.at(t + 1, c) == Tag::E);
            if (continues) {
              open = std::vector<std::size_t>{t};
            } else {
              out.entities.push_back({c, {t}});
            }
          }
          break;
        case Tag::E:
          if (open) {
            open->push_back(t);
            close_open();
          } else {
            ++out.repairs;
            out.entities.push_back({c, {t}});
          }
          break;
      }
    }
    if (open) {
      ++out.repairs;
      close_open();
    }
  }
  std::sort(out.entities.begin(), out.entities.end());
  return out;
}

std::vector<LabelledSentence> label_report(const Report& report) {
  auto sentences = tokenize_and_split(report.text, report.id);
  std::vector<std::vector<StandoffAnnotation>> assigned(sentences.size());
  for (const auto& a : report.annotations) {
    std::optional<std::size_t> home;
    for (std::size_t s = 0; s < sentences.size(); ++s) {
      if (covered_tokens(sentences[s], a).empty()) continue;
      if (home) {
        throw Error(report.id + ": entity " + a.entity_id +
                    " straddles a sentence boundary");
      }
      home = s;
    }
    if (!home) throw Error(report.id + ": entity " + a.entity_id + " covers no token");
    assigned[*home].push_back(a);
  }
  std::vector<LabelledSentence> out;
  out.reserve(sentences.size());
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    TagGrid grid = standoff_to_iobes(sentences[s], assigned[s]);
    std::vector<AnnotatedEntity> entities;
    for (const auto& a : assigned[s]) {
      entities.push_back({a.entity_id, static_cast<int>(a.cls),
                          covered_tokens(sentences[s], a), a.negated});
    }
    out.push_back({std::move(sentences[s]), std::move(grid), std::move(entities)});
  }
  return out;
}

void write_tagged(std::ostream& out, const std::vector<TaggedSentence>& sents) {
  const std::string* current = nullptr;
  for (const auto& s : sents) {
    if (s.surfaces.size() != s.grid.size()) {
      throw Error("tagged sentence: surface/grid length mismatch");
    }
    if (!s.report_id.empty() && (!current || *current != s.report_id)) {
      out << "# report " << s.report_id << '\n';
      current = &s.report_id;
    }
    for (std::size_t t = 0; t < s.surfaces.size(); ++t) {
      out << s.surfaces[t];
      for (int c = 0; c < kNumChannels; ++c) out << '\t' << tag_char(s.grid.at(t, c));
      out << '\n';
    }
    out << '\n';
  }
}

std::vector<TaggedSentence> read_tagged(std::istream& in,
                                        const std::string& source) {
  std::vector<TaggedSentence> out;
  std::string report_id;
  std::vector<std::string> surfaces;
  std::vector<TagGrid::Row> rows;
  auto flush = [&] {
    if (surfaces.empty()) return;
    TaggedSentence ts;
    ts.report_id = report_id;
    ts.grid = TagGrid(rows.size());
    for (std::size_t t = 0; t < rows.size(); ++t) {
      for (int c = 0; c < kNumChannels; ++c) ts.grid.set(t, c, rows[t][c]);
    }
    ts.surfaces = std::move(surfaces);
    out.push_back(std::move(ts));
    surfaces.clear();
    rows.clear();
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.rfind("# report ", 0) == 0 && line.find('\t') == std::string::npos) {
      flush();
      report_id = line.substr(9);
      continue;
    }
    std::istringstream fields(line);
    std::string surface, tag;
    std::getline(fields, surface, '\t');
    TagGrid::Row row;
    for (int c = 0; c < kNumChannels; ++c) {
      if (!std::getline(fields, tag, '\t') || tag.size() != 1) {
        throw ParseError(source, line_no, "expected surface and 5 tag columns");
      }
      try {
        row[c] = parse_tag(tag[0]);
      } catch (const Error& e) {
        throw ParseError(source, line_no, e.what());
      }
    }
    if (std::getline(fields, tag, '\t')) {
      throw ParseError(source, line_no, "too many columns");
    }
    surfaces.push_back(surface);
    rows.push_back(row);
  }
  flush();
  return out;
}

std::vector<TaggedSentence> load_tagged(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_tagged(in, path);
}

void save_tagged(const std::string& path,
                 const std::vector<TaggedSentence>& sents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  write_tagged(out, sents);
}

}  // namespace radnlp::corpus
