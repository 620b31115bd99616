#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "radnlp/nn/matrix.h"

namespace radnlp::nn {

inline constexpr int kCheckpointVersion = 1;

// Self-describing parameter container.
//
//   RADNLP-CHECKPOINT <version>\n
//   meta <count>\n
//   <key> <byte length>\n<bytes>\n            (count times, sorted by key)
//   tensors <count>\n
//   <name> <rows> <cols>\n<rows*cols little-endian float64>\n   (in order)
struct Checkpoint {
  std::map<std::string, std::string> meta;
  std::vector<std::pair<std::string, Matrix>> tensors;

  const Matrix& tensor(const std::string& name) const;
  const std::string& get(const std::string& key) const;
};

void write_checkpoint(std::ostream& out, const Checkpoint& ckpt);
Checkpoint read_checkpoint(std::istream& in);
void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace radnlp::nn
