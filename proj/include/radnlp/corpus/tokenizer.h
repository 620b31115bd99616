#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "radnlp/corpus/token.h"

namespace radnlp::corpus {

// Splits a report into sentences of tokens.
//
// A token is either a maximal run of word bytes (ASCII letters, digits and
// any byte >= 0x80, so UTF-8 sequences stay whole) or a single ASCII
// punctuation character. Whitespace separates tokens and is dropped.
// A sentence ends at a '.', '?' or '!' token that is followed by whitespace
// and an uppercase letter, or by nothing but whitespace up to the end of text.
//
// Every token is normalized with the default lemmatizer.
std::vector<Sentence> tokenize_and_split(std::string_view report_text,
                                         const std::string& report_id = "");

}  // namespace radnlp::corpus
