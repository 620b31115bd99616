#include "radnlp/tagger/config.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "radnlp/error.h"

namespace radnlp::tagger {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::size_t as_size(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long long n = std::stoll(v, &pos);
    if (pos != v.size() || n < 0) throw std::invalid_argument(v);
    return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
    throw Error("config: " + key + " expects a non-negative integer, got '" + v + "'");
  }
}

double as_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw Error("config: " + key + " expects a number, got '" + v + "'");
  }
}

bool as_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error("config: " + key + " expects a boolean, got '" + v + "'");
}

std::string fmt_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

KeyValues parse_key_values(std::istream& in, const std::string& source) {
  KeyValues kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(source, line_no, "expected key=value");
    std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw ParseError(source, line_no, "empty key");
    if (!kv.emplace(key, trim(t.substr(eq + 1))).second) {
      throw ParseError(source, line_no, "duplicate key " + key);
    }
  }
  return kv;
}

KeyValues load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return parse_key_values(in, path);
}

void TaggerConfig::validate() const {
  if (embedding_dim == 0 || cell_size == 0 || max_len == 0 || epochs == 0 ||
      batch_size == 0) {
    throw Error("config: d, k, max_len, epochs and batch_size must be > 0");
  }
  if (channels != 5 || tags != 5) throw Error("config: C and T are fixed at 5");
  if (!(learning_rate > 0.0)) throw Error("config: learning_rate must be > 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw Error("config: momentum must be in [0, 1)");
  if (min_count == 0) throw Error("config: min_count must be >= 1");
}

ModelShape TaggerConfig::shape(std::size_t vocab_size) const {
  ModelShape s;
  s.vocab_size = vocab_size;
  s.embedding_dim = embedding_dim;
  s.cell_size = cell_size;
  s.max_len = max_len;
  s.channels = channels;
  s.tags = tags;
  s.peephole = peephole;
  s.per_position_projection = per_position_projection;
  return s;
}

TaggerConfig TaggerConfig::from_key_values(const KeyValues& kv,
                                           const std::set<std::string>& extra_keys) {
  TaggerConfig c;
  for (const auto& [key, v] : kv) {
    if (key == "d") c.embedding_dim = as_size(key, v);
    else if (key == "k") c.cell_size = as_size(key, v);
    else if (key == "max_len") c.max_len = as_size(key, v);
    else if (key == "C") c.channels = as_size(key, v);
    else if (key == "T") c.tags = as_size(key, v);
    else if (key == "epochs") c.epochs = as_size(key, v);
    else if (key == "batch_size") c.batch_size = as_size(key, v);
    else if (key == "learning_rate") c.learning_rate = as_double(key, v);
    else if (key == "momentum") c.momentum = as_double(key, v);
    else if (key == "clip_norm") c.clip_norm = as_double(key, v);
    else if (key == "fine_tune_embeddings") c.fine_tune_embeddings = as_bool(key, v);
    else if (key == "peephole") c.peephole = as_bool(key, v);
    else if (key == "per_position_projection") c.per_position_projection = as_bool(key, v);
    else if (key == "min_count") c.min_count = as_size(key, v);
    else if (key == "seed") c.seed = as_size(key, v);
    else if (!extra_keys.count(key)) throw Error("config: unknown key " + key);
  }
  c.validate();
  return c;
}

KeyValues TaggerConfig::to_key_values() const {
  return {
      {"d", std::to_string(embedding_dim)},
      {"k", std::to_string(cell_size)},
      {"max_len", std::to_string(max_len)},
      {"C", std::to_string(channels)},
      {"T", std::to_string(tags)},
      {"epochs", std::to_string(epochs)},
      {"batch_size", std::to_string(batch_size)},
      {"learning_rate", fmt_double(learning_rate)},
      {"momentum", fmt_double(momentum)},
      {"clip_norm", fmt_double(clip_norm)},
      {"fine_tune_embeddings", fine_tune_embeddings ? "true" : "false"},
      {"peephole", peephole ? "true" : "false"},
      {"per_position_projection", per_position_projection ? "true" : "false"},
      {"min_count", std::to_string(min_count)},
      {"seed", std::to_string(seed)},
  };
}

void TaggerConfig::write(std::ostream& out) const {
  for (const auto& [k, v] : to_key_values()) out << k << " = " << v << '\n';
}

}  // namespace radnlp::tagger
