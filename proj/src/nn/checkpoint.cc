#include "radnlp/nn/checkpoint.h"

#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "radnlp/error.h"

namespace radnlp::nn {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

namespace {

constexpr const char kMagic[] = "RADNLP-CHECKPOINT";

std::string read_line(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error("checkpoint: unexpected end of file");
  return line;
}

}  // namespace

const Matrix& Checkpoint::tensor(const std::string& name) const {
  for (const auto& [n, m] : tensors) {
    if (n == name) return m;
  }
  throw Error("checkpoint: no tensor named " + name);
}

const std::string& Checkpoint::get(const std::string& key) const {
  auto it = meta.find(key);
  if (it == meta.end()) throw Error("checkpoint: no metadata key " + key);
  return it->second;
}

void write_checkpoint(std::ostream& out, const Checkpoint& ckpt) {
  out << kMagic << ' ' << kCheckpointVersion << '\n';
  out << "meta " << ckpt.meta.size() << '\n';
  for (const auto& [k, v] : ckpt.meta) {
    if (k.find_first_of(" \n") != std::string::npos) {
      throw Error("checkpoint: metadata key contains whitespace: " + k);
    }
    out << k << ' ' << v.size() << '\n' << v << '\n';
  }
  out << "tensors " << ckpt.tensors.size() << '\n';
  for (const auto& [name, m] : ckpt.tensors) {
    if (name.find_first_of(" \n") != std::string::npos) {
      throw Error("checkpoint: tensor name contains whitespace: " + name);
    }
    out << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    out.write(reinterpret_cast<const char*>(m.data()),
              static_cast<std::streamsize>(m.size() * sizeof(double)));
    out << '\n';
  }
}

Checkpoint read_checkpoint(std::istream& in) {
  Checkpoint ckpt;
  {
    std::istringstream header(read_line(in));
    std::string magic;
    int version = 0;
    header >> magic >> version;
    if (magic != kMagic) throw Error("checkpoint: bad magic");
    if (version != kCheckpointVersion) {
      throw Error("checkpoint: unsupported version " + std::to_string(version));
    }
  }
  std::size_t count = 0;
  {
    std::istringstream line(read_line(in));
    std::string tag;
    line >> tag >> count;
    if (tag != "meta") throw Error("checkpoint: expected meta section");
  }
  for (std::size_t i = 0; i < count; ++i) {
    std::istringstream line(read_line(in));
    std::string key;
    std::size_t len = 0;
    line >> key >> len;
    std::string value(len, '\0');
    in.read(value.data(), static_cast<std::streamsize>(len));
    if (!in || in.get() != '\n') throw Error("checkpoint: truncated metadata " + key);
    ckpt.meta.emplace(std::move(key), std::move(value));
  }
  {
    std::istringstream line(read_line(in));
    std::string tag;
    line >> tag >> count;
    if (tag != "tensors") throw Error("checkpoint: expected tensors section");
  }
  for (std::size_t i = 0; i < count; ++i) {
    std::istringstream line(read_line(in));
    std::string name;
    std::size_t rows = 0, cols = 0;
    if (!(line >> name >> rows >> cols)) throw Error("checkpoint: bad tensor header");
    Matrix m(rows, cols);
    in.read(reinterpret_cast<char*>(m.data()),
            static_cast<std::streamsize>(m.size() * sizeof(double)));
    if (!in || in.get() != '\n') throw Error("checkpoint: truncated tensor " + name);
    ckpt.tensors.emplace_back(std::move(name), std::move(m));
  }
  return ckpt;
}

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  write_checkpoint(out, ckpt);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return read_checkpoint(in);
}

}  // namespace radnlp::nn
