#include "radnlp/corpus/standoff.h"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "radnlp/error.h"

namespace radnlp::corpus {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kClassNames[] = {"BodyLocation", "ClinicalFinding",
                                            "Descriptor", "MedicalDevice"};

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string_view::npos ? next : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

bool parse_size(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string_view class_name(EntityClass c) {
  return kClassNames[static_cast<int>(c)];
}

std::optional<EntityClass> parse_class(std::string_view name) {
  for (int i = 0; i < kNumEntityClasses; ++i) {
    if (kClassNames[i] == name) return static_cast<EntityClass>(i);
  }
  return std::nullopt;
}

std::vector<StandoffAnnotation> parse_standoff(std::string_view content,
                                               std::size_t text_size,
                                               const std::string& source) {
  std::vector<StandoffAnnotation> anns;
  std::map<std::string, std::size_t, std::less<>> by_id;
  std::vector<std::pair<int, std::string>> negations;  // line, target id

  int line_no = 0;
  for (std::string_view line : split(content, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    const std::string_view id = fields[0];
    if (id.front() == 'T') {
      if (fields.size() < 2) throw ParseError(source, line_no, "missing type field");
      std::string_view type_and_spans = fields[1];
      std::size_t sp = type_and_spans.find(' ');
      if (sp == std::string_view::npos) {
        throw ParseError(source, line_no, "missing offsets");
      }
      auto cls = parse_class(type_and_spans.substr(0, sp));
      if (!cls) {
        throw ParseError(source, line_no,
                         "unknown class '" +
                             std::string(type_and_spans.substr(0, sp)) + "'");
      }
      StandoffAnnotation a;
      a.entity_id = std::string(id);
      a.cls = *cls;
      for (std::string_view frag : split(type_and_spans.substr(sp + 1), ';')) {
        auto nums = split(frag, ' ');
        CharSpan span;
        if (nums.size() != 2 || !parse_size(nums[0], span.start) ||
            !parse_size(nums[1], span.end)) {
          throw ParseError(source, line_no, "bad offsets '" + std::string(frag) + "'");
        }
        if (span.start >= span.end || span.end > text_size) {
          throw ParseError(source, line_no, "span outside report text");
        }
        a.spans.push_back(span);
      }
      std::sort(a.spans.begin(), a.spans.end(),
                [](const CharSpan& x, const CharSpan& y) { return x.start < y.start; });
      for (std::size_t i = 1; i < a.spans.size(); ++i) {
        if (a.spans[i].start < a.spans[i - 1].end) {
          throw ParseError(source, line_no, "overlapping fragments in " + a.entity_id);
        }
      }
      if (!by_id.emplace(a.entity_id, anns.size()).second) {
        throw ParseError(source, line_no, "duplicate id " + a.entity_id);
      }
      anns.push_back(std::move(a));
    } else if (id.front() == 'A' || id.front() == 'M') {
      if (fields.size() < 2) throw ParseError(source, line_no, "missing attribute");
      auto parts = split(fields[1], ' ');
      if (parts.size() < 2) throw ParseError(source, line_no, "malformed attribute");
      if (parts[0] != "Negation") continue;
      negations.emplace_back(line_no, std::string(parts[1]));
    }
  }
  for (const auto& [line, target] : negations) {
    auto it = by_id.find(target);
    if (it == by_id.end()) {
      throw ParseError(source, line, "attribute refers to unknown entity " + target);
    }
    anns[it->second].negated = true;
  }
  return anns;
}

std::string format_standoff(const std::vector<StandoffAnnotation>& anns,
                            std::string_view text) {
  std::ostringstream out;
  for (const auto& a : anns) {
    out << a.entity_id << '\t' << class_name(a.cls) << ' ';
    std::string surface;
    for (std::size_t i = 0; i < a.spans.size(); ++i) {
      if (i) {
        out << ';';
        surface += ' ';
      }
      out << a.spans[i].start << ' ' << a.spans[i].end;
      surface += text.substr(a.spans[i].start, a.spans[i].end - a.spans[i].start);
    }
    out << '\t' << surface << '\n';
  }
  int attr = 1;
  for (const auto& a : anns) {
    if (a.negated) out << 'A' << attr++ << "\tNegation " << a.entity_id << '\n';
  }
  return out.str();
}

Report load_report(const std::string& txt_path) {
  fs::path p(txt_path);
  Report r;
  r.id = p.stem().string();
  r.text = read_file(p);
  fs::path ann = p;
  ann.replace_extension(".ann");
  if (fs::exists(ann)) {
    r.annotations = parse_standoff(read_file(ann), r.text.size(), ann.string());
  }
  return r;
}

std::vector<Report> load_report_dir(const std::string& dir) {
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir);
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      paths.push_back(entry.path().string());
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<Report> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(load_report(p));
  return out;
}

}  // namespace radnlp::corpus
