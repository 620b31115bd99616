#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "radnlp/corpus/standoff.h"
#include "radnlp/corpus/token.h"

namespace radnlp::corpus {

// Tag indices are part of the checkpoint and serialization format.
enum class Tag : std::uint8_t { I = 0, O = 1, B = 2, E = 3, S = 4 };

inline constexpr int kNumTags = 5;
// Channels 0..3 follow EntityClass; channel 4 is negation.
inline constexpr int kNumChannels = 5;
inline constexpr int kNegationChannel = 4;

char tag_char(Tag t);
Tag parse_tag(char c);  // throws Error on anything but I/O/B/E/S

// True for I, B, E and S.
inline bool is_entity_tag(Tag t) { return t != Tag::O; }

class TagGrid {
 public:
  using Row = std::array<Tag, kNumChannels>;

  TagGrid() = default;
  explicit TagGrid(std::size_t n);

  std::size_t size() const { return rows_.size(); }
  Tag at(std::size_t token, int channel) const {
    return rows_.at(token)[channel];
  }
  void set(std::size_t token, int channel, Tag t) {
    rows_.at(token)[channel] = t;
  }
  const Row& row(std::size_t token) const { return rows_.at(token); }

  bool operator==(const TagGrid&) const = default;

 private:
  std::vector<Row> rows_;
};

struct Entity {
  int channel = 0;
  std::vector<std::size_t> tokens;  // ascending

  bool operator==(const Entity&) const = default;
  bool operator<(const Entity& o) const {
    return channel != o.channel ? channel < o.channel : tokens < o.tokens;
  }
};

struct DecodedEntities {
  std::vector<Entity> entities;  // sorted by (channel, tokens)
  std::size_t repairs = 0;
};

// Token indices of `s` touched by any span of `a`. Partial overlap counts.
std::vector<std::size_t> covered_tokens(const Sentence& s,
                                        const StandoffAnnotation& a);

// Writes one channel per class: S for single-token entities, otherwise B on
// the first covered token, E on the last, I on covered interior tokens and O
// on gap tokens. Negated entities are written again into the negation
// channel; negated entities whose token sets intersect are merged there.
// Only annotations covering at least one token of `s` are used.
//
// Throws Error naming both entity ids when two same-class entities share a
// token or interleave (one multi-token entity starting inside another).
TagGrid standoff_to_iobes(const Sentence& s,
                          const std::vector<StandoffAnnotation>& annotations);

// Tolerant decoder. S is a singleton; B opens an entity that collects I
// tokens, skips O and closes at E. Repairs (each counted once):
//   B while an entity is open   -> the open entity closes at its last token
//   I with nothing open         -> opens an entity if followed by I/E, else S
//   E with nothing open         -> singleton
//   entity still open at the end -> closes at its last token
DecodedEntities iobes_to_entities(const TagGrid& grid);

// Entities of a single channel, in the same encoding standoff_to_iobes uses.
// Token sets must not interleave.
void write_entity(TagGrid& grid, int channel,
                  const std::vector<std::size_t>& tokens);

// One annotation mapped onto the tokens of its sentence.
struct AnnotatedEntity {
  std::string entity_id;
  int channel = 0;  // semantic group
  std::vector<std::size_t> tokens;
  bool negated = false;
};

struct LabelledSentence {
  Sentence sentence;
  TagGrid grid;
  std::vector<AnnotatedEntity> entities;  // in annotation order
};

// Tokenizes a report and builds one grid per sentence. Throws Error for an
// annotation that straddles a sentence boundary or covers no token.
std::vector<LabelledSentence> label_report(const Report& report);

// Serialized form: one token per line, tab separated
//   surface  tagBL tagCF tagDE tagMD tagNEG
// with a blank line after each sentence. A line "# report <id>" starts the
// sentences of a new report.
struct TaggedSentence {
  std::string report_id;
  std::vector<std::string> surfaces;
  TagGrid grid;
};

void write_tagged(std::ostream& out, const std::vector<TaggedSentence>& sents);
std::vector<TaggedSentence> read_tagged(std::istream& in,
                                        const std::string& source = "tags");
std::vector<TaggedSentence> load_tagged(const std::string& path);
void save_tagged(const std::string& path,
                 const std::vector<TaggedSentence>& sents);

}  // namespace radnlp::corpus
