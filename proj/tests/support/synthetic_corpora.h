// Small generated corpora with known structure, shared by unit tests and
// the acceptance suite.
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "radnlp/corpus/vocabulary.h"
#include "radnlp/nn/matrix.h"
#include "radnlp/nn/random.h"

namespace radnlp::testing {

// Two interchangeable word classes. Every sentence draws all of its words
// from one class, so a word's class is the only thing that predicts its
// neighbours.
struct TwoClassCorpus {
  std::vector<std::string> class_a, class_b;
  corpus::Vocabulary vocab;
  std::vector<std::vector<std::size_t>> sentences;
};

inline TwoClassCorpus two_class_corpus(nn::Rng& rng, std::size_t n_sentences = 400,
                                       std::size_t class_size = 6) {
  TwoClassCorpus c;
  std::vector<std::string> words{"<unk>"};
  for (std::size_t i = 0; i < class_size; ++i) {
    c.class_a.push_back("alpha" + std::string(1, static_cast<char>('a' + i)));
    c.class_b.push_back("beta" + std::string(1, static_cast<char>('a' + i)));
  }
  words.insert(words.end(), c.class_a.begin(), c.class_a.end());
  words.insert(words.end(), c.class_b.begin(), c.class_b.end());
  c.vocab = corpus::Vocabulary::from_words(words);
  for (std::size_t s = 0; s < n_sentences; ++s) {
    const auto& pool = (s % 2 == 0) ? c.class_a : c.class_b;
    const std::size_t len = 6 + nn::uniform_index(rng, 3);
    std::vector<std::size_t> sent;
    for (std::size_t t = 0; t < len; ++t) {
      sent.push_back(c.vocab.id(pool[nn::uniform_index(rng, pool.size())]));
    }
    c.sentences.push_back(sent);
  }
  return c;
}

inline double row_cosine(const nn::Matrix& m, std::size_t a, std::size_t b) {
  const auto ra = m.row(a);
  const auto rb = m.row(b);
  const double na = std::sqrt(nn::dot(ra, ra));
  const double nb = std::sqrt(nn::dot(rb, rb));
  return (na == 0.0 || nb == 0.0) ? 0.0 : nn::dot(ra, rb) / (na * nb);
}

// Mean cosine over within-class pairs minus mean over between-class pairs.
struct ClassSeparation {
  double within = 0.0;
  double between = 0.0;
};

inline ClassSeparation class_separation(const nn::Matrix& m, const TwoClassCorpus& c) {
  std::vector<std::size_t> a, b;
  for (const auto& w : c.class_a) a.push_back(c.vocab.id(w));
  for (const auto& w : c.class_b) b.push_back(c.vocab.id(w));
  double within = 0.0, between = 0.0;
  std::size_t nw = 0, nb = 0;
  for (const auto* grp : {&a, &b}) {
    for (std::size_t i = 0; i < grp->size(); ++i) {
      for (std::size_t j = i + 1; j < grp->size(); ++j) {
        within += row_cosine(m, (*grp)[i], (*grp)[j]);
        ++nw;
      }
    }
  }
  for (auto i : a) {
    for (auto j : b) {
      between += row_cosine(m, i, j);
      ++nb;
    }
  }
  return {within / static_cast<double>(nw), between / static_cast<double>(nb)};
}

// Toy ontology with two sibling groups under one root, and a corpus in
// which every word co-occurs with every other at random, so only the
// ontology distinguishes siblings from non-siblings.
inline const char* kToyOntologyTsv =
    "root\t-\tentity\n"
    "g1\troot\tgroupone\n"
    "g2\troot\tgrouptwo\n"
    "a1\tg1\tambra\n"
    "a2\tg1\tanzio\n"
    "a3\tg1\tarlo\n"
    "a4\tg1\tavena\n"
    "b1\tg2\tbosco\n"
    "b2\tg2\tbruma\n"
    "b3\tg2\tbirra\n"
    "b4\tg2\tbelva\n";

inline std::vector<std::vector<std::string>> toy_sibling_groups() {
  return {{"ambra", "anzio", "arlo", "avena"}, {"bosco", "bruma", "birra", "belva"}};
}

inline std::vector<std::vector<std::size_t>> random_word_corpus(
    nn::Rng& rng, const corpus::Vocabulary& vocab, std::size_t n_sentences,
    std::size_t len) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n_sentences; ++s) {
    std::vector<std::size_t> sent;
    for (std::size_t t = 0; t < len; ++t) {
      // Skip index 0, the unknown word.
      sent.push_back(1 + nn::uniform_index(rng, vocab.size() - 1));
    }
    out.push_back(sent);
  }
  return out;
}

// Sentences drawn from one topic each; topic t holds the t-th word of every
// sibling group. A `noise` share of tokens is drawn from the whole vocabulary
// so that siblings still co-occur (the ontology term only acts on observed
// pairs), just more rarely than topic mates.
inline std::vector<std::vector<std::size_t>> topic_word_corpus(
    nn::Rng& rng, const corpus::Vocabulary& vocab,
    const std::vector<std::vector<std::string>>& groups, std::size_t n_sentences,
    std::size_t len, double noise) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t topics = groups.front().size();
  for (std::size_t s = 0; s < n_sentences; ++s) {
    const std::size_t topic = s % topics;
    std::vector<std::size_t> sent;
    for (std::size_t t = 0; t < len; ++t) {
      if (nn::uniform01(rng) < noise) {
        sent.push_back(1 + nn::uniform_index(rng, vocab.size() - 1));
      } else {
        sent.push_back(vocab.id(groups[nn::uniform_index(rng, groups.size())][topic]));
      }
    }
    out.push_back(sent);
  }
  return out;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace radnlp::testing
