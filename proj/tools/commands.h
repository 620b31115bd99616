// Subcommand implementations shared by the radnlp CLI and the acceptance
// checks. Every function throws radnlp::Error on bad input and writes
// progress lines to `log`.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radnlp/corpus/iobes.h"
#include "radnlp/corpus/standoff.h"
#include "radnlp/evalkit/crossval.h"
#include "radnlp/rulener/scanner.h"
#include "radnlp/tagger/tagger.h"

namespace radnlp::cli {

// A directory of *.txt reports (with optional .ann siblings), or one .txt.
std::vector<corpus::Report> load_reports(const std::string& path);

// Every *.tags file of a directory in name order, or one file.
std::vector<corpus::TaggedSentence> load_tag_files(const std::string& path);

struct TrainTaggerArgs {
  std::string config;
  std::string ann_dir;
  std::string embeddings = "random";  // a file, or "random"
  std::optional<bool> fine_tune;
  std::string out;
};
void train_tagger(const TrainTaggerArgs& args, std::ostream& log);

// Trains on labelled reports; the vocabulary comes from these reports only.
tagger::Tagger fit_tagger(const tagger::TaggerConfig& config,
                          const std::vector<corpus::Report>& reports,
                          const std::string& embeddings, std::ostream& log);

std::vector<corpus::TaggedSentence> tag_reports(const tagger::Tagger& t,
                                                const std::vector<corpus::Report>& reports);
void tag(const std::string& checkpoint, const std::string& in, const std::string& out,
         std::ostream& log);

// Gold annotations in the tag file format.
std::vector<corpus::TaggedSentence> gold_tags(const std::vector<corpus::Report>& reports);

struct TrainEmbeddingsArgs {
  std::string method;  // random | lm | glove | glove-onto
  std::string corpus;
  std::string ontology;
  double alpha = 0.5;
  std::size_t dim = 50;
  std::optional<std::size_t> epochs;
  std::size_t min_count = 3;
  std::size_t window = 10;
  std::uint64_t seed = 1;
  std::string out;
};
void train_embeddings(const TrainEmbeddingsArgs& args, std::ostream& log);

void nn_query(const std::string& embeddings, const std::string& expr, std::size_t top,
              std::ostream& out);

struct BuildDictArgs {
  std::string ontology;
  std::string mapping;
  std::string manual;  // optional
  std::string out;
};
void build_dict(const BuildDictArgs& args, std::ostream& log);

struct RuleNerArgs {
  std::string dict;
  std::string redirects;  // optional
  rulener::ScanOptions options;
  std::string in;
  std::string out;
};
void rule_ner(const RuleNerArgs& args, std::ostream& log);

struct NegateArgs {
  std::string mode = "hybrid";  // negex | hybrid
  std::string triggers;         // empty: the bundled lexicon
  std::string deps;             // CoNLL-U, required for hybrid
  std::string entities;         // tag file
  std::string out;
};
nlohmann::json negation_decisions(const NegateArgs& args);
void negate(const NegateArgs& args, std::ostream& log);

struct EvalArgs {
  std::string gold;
  std::string pred;  // tag file(s), or a decisions .json for negation
  std::string task = "ner";
  std::string out;
};
evalkit::EvalReport evaluate(const EvalArgs& args);
void eval(const EvalArgs& args, std::ostream& log);

struct CrossvalArgs {
  std::string config;
  std::size_t folds = 5;
  std::uint64_t seed = 1;
  std::string ann_dir;     // overrides ann_dir in the config
  std::string embeddings;  // overrides embeddings in the config
  std::string out;
};
nlohmann::json crossval(const CrossvalArgs& args, std::ostream& log);

// JSON with a trailing newline; byte-stable for equal values.
void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace radnlp::cli
