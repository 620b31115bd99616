#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "radnlp/corpus/token.h"

namespace radnlp::corpus {

enum class EntityClass {
  kBodyLocation = 0,
  kClinicalFinding = 1,
  kDescriptor = 2,
  kMedicalDevice = 3,
};

inline constexpr int kNumEntityClasses = 4;

// "BodyLocation", "ClinicalFinding", "Descriptor", "MedicalDevice".
std::string_view class_name(EntityClass c);
std::optional<EntityClass> parse_class(std::string_view name);

struct StandoffAnnotation {
  std::string entity_id;
  EntityClass cls = EntityClass::kBodyLocation;
  std::vector<CharSpan> spans;  // sorted, pairwise disjoint
  bool negated = false;
};

struct Report {
  std::string id;
  std::string text;
  std::vector<StandoffAnnotation> annotations;
};

// Parses BRAT standoff content:
//   T<id>\t<Class> <start> <end>[;<start> <end>]*\t<surface>
//   A<id>\tNegation T<id>[ <value>]
// Other record kinds (R, E, N, #) are ignored. Spans are checked against
// text_size; unknown classes, malformed offsets and attributes that point at
// missing entities raise ParseError.
std::vector<StandoffAnnotation> parse_standoff(std::string_view ann_content,
                                               std::size_t text_size,
                                               const std::string& source = "ann");

// Emits the same format; the surface column is cut from `text`.
std::string format_standoff(const std::vector<StandoffAnnotation>& anns,
                            std::string_view text);

// Reads <path> and the sibling .ann file (missing .ann = no annotations).
Report load_report(const std::string& txt_path);

// All *.txt reports in a directory, sorted by id.
std::vector<Report> load_report_dir(const std::string& dir);

}  // namespace radnlp::corpus
