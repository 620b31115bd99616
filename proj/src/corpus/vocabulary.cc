#include "radnlp/corpus/vocabulary.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "radnlp/error.h"

namespace radnlp::corpus {

void WordCounts::add(const Sentence& s) {
  for (const Token& t : s.tokens) add(t.normalized);
}

void WordCounts::add(std::string_view w, std::size_t n) {
  auto it = counts_.find(w);
  if (it == counts_.end()) {
    counts_.emplace(std::string(w), n);
  } else {
    it->second += n;
  }
}

void WordCounts::merge(const WordCounts& other) {
  for (const auto& [w, n] : other.counts_) add(w, n);
}

Vocabulary::Vocabulary() : words_{std::string(kUnknownWord)} { reindex(); }

Vocabulary Vocabulary::from_words(std::vector<std::string> words,
                                  std::size_t min_count) {
  Vocabulary v;
  v.words_ = std::move(words);
  v.min_count_ = min_count;
  v.reindex();
  if (v.index_.size() != v.words_.size()) {
    throw Error("vocabulary: duplicate word");
  }
  auto it = v.index_.find(std::string(kUnknownWord));
  if (it == v.index_.end()) throw Error("vocabulary: missing unknown symbol");
  v.unk_id_ = it->second;
  return v;
}

Vocabulary Vocabulary::build(const WordCounts& counts, std::size_t min_count) {
  if (min_count < 1) throw Error("vocabulary: min_count must be >= 1");
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (const auto& [w, n] : counts.counts()) {
    if (n >= min_count && w != kUnknownWord) kept.emplace_back(w, n);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  std::vector<std::string> words{std::string(kUnknownWord)};
  for (auto& [w, n] : kept) words.push_back(std::move(w));
  return from_words(std::move(words), min_count);
}

Vocabulary Vocabulary::build(const std::vector<Sentence>& sentences,
                             std::size_t min_count) {
  WordCounts counts;
  for (const Sentence& s : sentences) counts.add(s);
  return build(counts, min_count);
}

Vocabulary Vocabulary::read(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    words.push_back(line);
  }
  if (words.empty() || words.front() != kUnknownWord) {
    throw ParseError("vocabulary", 1, "first line must be the unknown symbol");
  }
  return from_words(std::move(words));
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open vocabulary " + path);
  return read(in);
}

void Vocabulary::write(std::ostream& out) const {
  if (unk_id_ != 0) {
    throw Error("vocabulary: file format requires the unknown symbol first");
  }
  for (const std::string& w : words_) out << w << '\n';
}

std::size_t Vocabulary::id(std::string_view w) const {
  auto it = index_.find(std::string(w));
  return it == index_.end() ? unk_id_ : it->second;
}

bool Vocabulary::contains(std::string_view w) const {
  return index_.count(std::string(w)) > 0;
}

std::uint64_t Vocabulary::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (const std::string& w : words_) {
    for (unsigned char c : w) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0x0a;
    h *= 1099511628211ULL;
  }
  return h;
}

void Vocabulary::reindex() {
  index_.clear();
  for (std::size_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);
}

std::vector<std::size_t> encode_sentence(const Sentence& s,
                                         const Vocabulary& v) {
  std::vector<std::size_t> ids;
  ids.reserve(s.size());
  for (const Token& t : s.tokens) ids.push_back(v.id(t.normalized));
  return ids;
}

std::vector<std::string> decode_indices(const std::vector<std::size_t>& ids,
                                        const Vocabulary& v) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (std::size_t id : ids) out.push_back(v.word(id));
  return out;
}

}  // namespace radnlp::corpus
