#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "radnlp/corpus/token.h"

namespace radnlp::corpus {

inline constexpr std::string_view kUnknownWord = "<unk>";

// Word counts that merge associatively, so per-report counts can be folded
// in any order.
class WordCounts {
 public:
  void add(const Sentence& s);
  void add(std::string_view normalized_word, std::size_t n = 1);
  void merge(const WordCounts& other);

  const std::map<std::string, std::size_t, std::less<>>& counts() const {
    return counts_;
  }

 private:
  std::map<std::string, std::size_t, std::less<>> counts_;
};

class Vocabulary {
 public:
  // Vocabulary holding only the unknown symbol.
  Vocabulary();

  // Words in index order; must contain kUnknownWord exactly once.
  static Vocabulary from_words(std::vector<std::string> words,
                               std::size_t min_count = 1);

  // Keeps normalized words with count >= min_count, ordered by descending
  // count then lexicographically, after the unknown symbol at index 0.
  static Vocabulary build(const WordCounts& counts, std::size_t min_count = 3);
  static Vocabulary build(const std::vector<Sentence>& sentences,
                          std::size_t min_count = 3);

  // One word per line, line number = index, first line the unknown symbol.
  static Vocabulary read(std::istream& in);
  static Vocabulary load(const std::string& path);
  void write(std::ostream& out) const;

  std::size_t size() const { return words_.size(); }
  std::size_t unk_id() const { return unk_id_; }
  std::size_t min_count() const { return min_count_; }
  const std::vector<std::string>& words() const { return words_; }
  const std::string& word(std::size_t id) const { return words_.at(id); }

  // Index of a normalized word, or unk_id() when absent.
  std::size_t id(std::string_view normalized_word) const;
  bool contains(std::string_view normalized_word) const;

  // FNV-1a over the words in index order.
  std::uint64_t fingerprint() const;

  bool operator==(const Vocabulary& other) const {
    return words_ == other.words_ && unk_id_ == other.unk_id_;
  }

 private:
  void reindex();

  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t unk_id_ = 0;
  std::size_t min_count_ = 1;
};

std::vector<std::size_t> encode_sentence(const Sentence& s,
                                         const Vocabulary& v);

std::vector<std::string> decode_indices(const std::vector<std::size_t>& ids,
                                        const Vocabulary& v);

}  // namespace radnlp::corpus
