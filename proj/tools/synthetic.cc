#include "synthetic.h"

#include <array>
#include <cctype>
#include <filesystem>
#include <fstream>

#include "radnlp/error.h"
#include "radnlp/nn/random.h"

namespace radnlp::cli {
namespace {

using corpus::EntityClass;

const std::array<std::vector<std::string>, 4> kPhrases{{
    {"heart", "left lung", "right lower zone", "left costophrenic angle", "mediastinum",
     "right hilum", "aorta", "lung bases", "trachea", "left upper lobe", "pleural space"},
    {"effusion", "pneumothorax", "consolidation", "cardiomegaly", "atelectasis", "edema",
     "nodule", "fracture", "collapse", "opacification", "pneumonia"},
    {"small", "large", "mild", "moderate", "bilateral", "new", "stable", "subtle", "extensive",
     "patchy"},
    {"endotracheal tube", "nasogastric tube", "central line", "pacemaker", "chest drain",
     "sternotomy wires", "tracheostomy"},
}};

// Slots: {BL} {CF} {DE} {MD}; a '!' after the brace marks a negated entity.
const std::vector<std::string> kTemplates{
    "There is a {DE} {CF} in the {BL} .",
    "No {!CF} is seen .",
    "The {MD} is in a satisfactory position .",
    "{DE} {CF} at the {BL} .",
    "No evidence of {!CF} or {!CF} .",
    "The {BL} is clear .",
    "Tip of the {MD} projects over the {BL} .",
    "The {BL} appears normal .",
    "The {BL} shows {DE} {CF} .",
    "{!CF} has resolved .",
    "{DE} {CF} is again noted .",
    "No {!CF} in the {BL} .",
    "The {MD} has been removed .",
};

int slot_class(const std::string& name) {
  if (name == "BL") return 0;
  if (name == "CF") return 1;
  if (name == "DE") return 2;
  if (name == "MD") return 3;
  throw Error("synthetic: bad slot " + name);
}

// Appends one templated sentence to `text`, recording its annotations.
void emit_sentence(const std::string& tmpl, nn::Rng& rng, std::string& text,
                   std::vector<corpus::StandoffAnnotation>& anns, int& next_id) {
  if (!text.empty()) text += ' ';
  const std::size_t sentence_start = text.size();
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] != '{') {
      text += tmpl[i++];
      continue;
    }
    const std::size_t close = tmpl.find('}', i);
    std::string slot = tmpl.substr(i + 1, close - i - 1);
    const bool negated = slot[0] == '!';
    if (negated) slot.erase(0, 1);
    const int cls = slot_class(slot);
    const auto& pool = kPhrases[cls];
    const std::string& phrase = pool[nn::uniform_index(rng, pool.size())];
    const std::size_t start = text.size();
    text += phrase;
    corpus::StandoffAnnotation a;
    a.entity_id = "T" + std::to_string(next_id++);
    a.cls = static_cast<EntityClass>(cls);
    a.spans.push_back({start, text.size()});
    a.negated = negated;
    anns.push_back(a);
    i = close + 1;
  }
  text[sentence_start] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[sentence_start])));
}

}  // namespace

SyntheticCorpus synthetic_corpus(std::size_t n_sentences, std::size_t per_report,
                                 std::uint64_t seed) {
  if (per_report == 0) throw Error("synthetic: per_report must be >= 1");
  SyntheticCorpus out;
  for (int c = 0; c < corpus::kNumEntityClasses; ++c) {
    for (const auto& p : kPhrases[c]) {
      out.dictionary.add(p, static_cast<EntityClass>(c), rulener::Provenance::kManual);
    }
  }
  nn::Rng rng(seed);
  std::size_t made = 0;
  while (made < n_sentences) {
    corpus::Report r;
    char id[32];
    std::snprintf(id, sizeof id, "r%04zu", out.reports.size());
    r.id = id;
    int next_id = 1;
    for (std::size_t s = 0; s < per_report && made < n_sentences; ++s, ++made) {
      emit_sentence(kTemplates[nn::uniform_index(rng, kTemplates.size())], rng, r.text,
                    r.annotations, next_id);
    }
    r.text += '\n';
    out.reports.push_back(std::move(r));
  }
  out.sentences = made;
  return out;
}

void write_report_dir(const std::string& dir, const std::vector<corpus::Report>& reports) {
  std::filesystem::create_directories(dir);
  for (const auto& r : reports) {
    const std::string base = (std::filesystem::path(dir) / r.id).string();
    std::ofstream txt(base + ".txt", std::ios::binary);
    std::ofstream ann(base + ".ann", std::ios::binary);
    txt << r.text;
    ann << corpus::format_standoff(r.annotations, r.text);
    if (!txt || !ann) throw Error("cannot write report " + base);
  }
}

}  // namespace radnlp::cli
