#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>

#include "radnlp/tagger/model.h"

namespace radnlp::tagger {

// Flat `key = value` text; '#' starts a comment line.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(std::istream& in, const std::string& source = "config");
KeyValues load_key_values(const std::string& path);

struct TaggerConfig {
  std::size_t embedding_dim = 50;   // d
  std::size_t cell_size = 100;      // k
  std::size_t max_len = 40;
  std::size_t channels = 5;         // C, fixed by the schema
  std::size_t tags = 5;             // T, fixed by the schema
  std::size_t epochs = 20;
  std::size_t batch_size = 10;
  double learning_rate = 0.5;
  double momentum = 0.9;
  double clip_norm = 5.0;
  bool fine_tune_embeddings = true;
  bool peephole = true;
  bool per_position_projection = false;
  std::size_t min_count = 3;
  std::uint64_t seed = 1;

  // Throws Error on non-positive sizes or C, T != 5.
  void validate() const;

  ModelShape shape(std::size_t vocab_size) const;

  // Keys: d, k, max_len, C, T, epochs, batch_size, learning_rate, momentum,
  // clip_norm, fine_tune_embeddings, peephole, per_position_projection,
  // min_count, seed. Keys outside this set and `extra_keys` raise Error.
  static TaggerConfig from_key_values(const KeyValues& kv,
                                      const std::set<std::string>& extra_keys = {});
  KeyValues to_key_values() const;
  void write(std::ostream& out) const;
};

}  // namespace radnlp::tagger
