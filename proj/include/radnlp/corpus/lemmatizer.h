#pragma once

#include <string>
#include <string_view>
#include <unordered_map>

namespace radnlp::corpus {

// Deterministic suffix-rule lemmatizer with an exception table.
//
// Lookup order for a lower-cased, purely alphabetic word: exception table,
// then the first matching suffix rule:
//   -ies  -> -y      (len > 4)
//   -sses -> -ss
//   -xes, -ches, -shes -> drop "es"
//   -ss, -us, -is      -> unchanged
//   -s    -> drop "s"  (len > 3)
// Anything else, and any word containing a non-letter, is only lower-cased.
class Lemmatizer {
 public:
  // Parses a `surface\tlemma` table; '#' lines and blank lines are skipped.
  static Lemmatizer from_table(std::string_view tsv);

  // The bundled table from data/lemma_exceptions.tsv.
  static const Lemmatizer& bundled();

  std::string lemmatize(std::string_view word) const;

  std::size_t exception_count() const { return exceptions_.size(); }

 private:
  std::unordered_map<std::string, std::string> exceptions_;
};

std::string to_lower_ascii(std::string_view s);

// Lower-cases and lemmatizes a token surface with the bundled lemmatizer.
std::string normalize(std::string_view token_surface);

}  // namespace radnlp::corpus
