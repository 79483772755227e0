// Copyright 2026 The isingdd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "isingdd/io.h"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace isingdd {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void CsvWriter::row(const std::vector<std::string> &cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) os_ << ',';
    const std::string &c = cells[i];
    if (c.find_first_of(",\"\r\n") != std::string::npos) {
      os_ << '"';
      for (char ch : c) {
        if (ch == '"') os_ << '"';
        os_ << ch;
      }
      os_ << '"';
    } else {
      os_ << c;
    }
  }
  os_ << "\r\n";
}

json pulse_to_json(const PulseShape &s) {
  json j;
  j["axis"] = axis_name(s.axis);
  j["phi0"] = s.phi0;
  j["fourier_amps"] = s.fourier_amps;
  j["duration"] = s.duration;
  j["sign"] = s.sign;
  j["amplitude_scale"] = s.amplitude_scale;
  if (s.kind == ShapeKind::Square) j["kind"] = "square";
  return j;
}

namespace {

template <class T>
T need(const json &j, const char *key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception &e) {
    throw ConfigError(std::string("bad field '") + key + "': " + e.what());
  }
}

template <class T>
T opt(const json &j, const char *key, T dflt) {
  if (!j.contains(key)) return dflt;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception &e) {
    throw ConfigError(std::string("bad field '") + key + "': " + e.what());
  }
}

}  // namespace

PulseShape pulse_from_json(const json &j) {
  if (!j.is_object()) throw ConfigError("pulse record must be an object");
  PulseShape s;
  s.axis = axis_from_string(need<std::string>(j, "axis"));
  s.phi0 = need<double>(j, "phi0");
  s.duration = opt<double>(j, "duration", 1.0);
  s.sign = opt<int>(j, "sign", 1);
  s.amplitude_scale = opt<double>(j, "amplitude_scale", 1.0);
  if (opt<std::string>(j, "kind", "fourier") == "square") {
    s.kind = ShapeKind::Square;
  } else {
    s.fourier_amps = need<std::vector<double>>(j, "fourier_amps");
  }
  s.validate();
  return s;
}

json graph_to_json(const QubitGraph &g) {
  json j;
  j["kind"] = g.kind;
  j["n"] = g.n;
  j["J"] = g.J;
  json edges = json::array();
  for (const auto &e : g.edges) edges.push_back({e.i, e.j});
  j["edges"] = edges;
  j["labels"] = g.sublattice;
  return j;
}

QubitGraph graph_from_json(const json &j) {
  if (!j.is_object()) throw ConfigError("graph record must be an object");
  std::string kind = need<std::string>(j, "kind");
  int n = need<int>(j, "n");
  double J = need<double>(j, "J");
  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges") && kind == "custom") {
    for (const auto &e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ConfigError("edges must be [i, j] pairs");
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
  }
  std::vector<int> labels = opt<std::vector<int>>(j, "labels", {});
  return build_graph(kind, n, J, edges, labels);
}

json disorder_to_json(const DisorderModel &d) {
  return json{{"delta_rms", d.delta_rms}, {"seed", d.seed}, {"num_draws", d.num_draws}};
}

DisorderModel disorder_from_json(const json &j) {
  if (!j.is_object()) throw ConfigError("disorder record must be an object");
  DisorderModel d;
  d.delta_rms = need<double>(j, "delta_rms");
  d.seed = need<std::uint64_t>(j, "seed");
  d.num_draws = opt<int>(j, "num_draws", 1);
  if (d.delta_rms < 0) throw ConfigError("delta_rms must be non-negative");
  if (d.num_draws < 1) throw ConfigError("num_draws must be positive");
  return d;
}

std::string sha256_hex(const std::string &bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_file(const std::string &path) { return sha256_hex(read_file(path)); }

namespace {

void put_u32(std::ostream &os, std::uint32_t v) {
  unsigned char b[4] = {std::uint8_t(v), std::uint8_t(v >> 8), std::uint8_t(v >> 16), std::uint8_t(v >> 24)};
  os.write(reinterpret_cast<char *>(b), 4);
}

void put_f64(std::ostream &os, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = std::uint8_t(bits >> (8 * i));
  os.write(reinterpret_cast<char *>(b), 8);
}

std::uint64_t get_le(std::istream &in, int bytes) {
  unsigned char b[8] = {0};
  in.read(reinterpret_cast<char *>(b), bytes);
  if (!in) throw ConfigError("truncated unitary file");
  std::uint64_t v = 0;
  for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

}  // namespace

void write_unitary_binary(const std::string &path, const Mat &u, int n) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path);
  os.write("IDDU", 4);
  put_u32(os, std::uint32_t(n));
  put_u32(os, 0);
  for (Eigen::Index r = 0; r < u.rows(); ++r)
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      put_f64(os, u(r, c).real());
      put_f64(os, u(r, c).imag());
    }
}

Mat read_unitary_binary(const std::string &path, int *n_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "IDDU", 4) != 0) throw ConfigError("bad unitary file magic");
  int n = int(get_le(in, 4));
  get_le(in, 4);
  if (n < 0 || n > kMaxDenseQubits) throw ConfigError("bad qubit count in unitary file");
  const int dim = 1 << n;
  Mat u(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      double re = std::bit_cast<double>(get_le(in, 8));
      double im = std::bit_cast<double>(get_le(in, 8));
      u(r, c) = cplx(re, im);
    }
  if (n_out) *n_out = n;
  return u;
}

}  // namespace isingdd
