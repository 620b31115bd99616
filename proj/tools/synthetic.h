// Generated radiology-style reports from a small phrase grammar, with gold
// standoff annotations and the dictionary that produced them.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "radnlp/corpus/standoff.h"
#include "radnlp/rulener/dictionary.h"

namespace radnlp::cli {

struct SyntheticCorpus {
  std::vector<corpus::Report> reports;  // ids r0000, r0001, ...
  rulener::TermDictionary dictionary;   // every phrase the grammar can emit
  std::size_t sentences = 0;
};

// `n_sentences` sentences from fixed templates, grouped `per_report` to a
// report. Same seed, same corpus.
SyntheticCorpus synthetic_corpus(std::size_t n_sentences, std::size_t per_report,
                                 std::uint64_t seed);

// Writes <id>.txt and <id>.ann per report; creates the directory.
void write_report_dir(const std::string& dir, const std::vector<corpus::Report>& reports);

}  // namespace radnlp::cli
