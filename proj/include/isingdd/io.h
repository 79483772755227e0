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

#ifndef ISINGDD_IO_H
#define ISINGDD_IO_H

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "isingdd/linalg.h"
#include "isingdd/network.h"
#include "isingdd/pulse.h"

namespace isingdd {

using json = nlohmann::json;

/// Scientific notation with 17 significant digits.
std::string format_double(double v);

/// RFC-4180 writer: CRLF line endings, quoting only when needed.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream &os) : os_(os) {}
  void header(const std::vector<std::string> &cols) { row(cols); }
  void row(const std::vector<std::string> &cells);

 private:
  std::ostream &os_;
};

json pulse_to_json(const PulseShape &s);
PulseShape pulse_from_json(const json &j);

json graph_to_json(const QubitGraph &g);
QubitGraph graph_from_json(const json &j);

json disorder_to_json(const DisorderModel &d);
DisorderModel disorder_from_json(const json &j);

/// Hex SHA-256 of a byte string / file.
std::string sha256_hex(const std::string &bytes);
std::string sha256_file(const std::string &path);

/// 16-byte header {"IDDU", u32 n, u32 0}, then row-major complex little-endian f64.
void write_unitary_binary(const std::string &path, const Mat &u, int n);
Mat read_unitary_binary(const std::string &path, int *n_out = nullptr);

std::string read_file(const std::string &path);

}  // namespace isingdd

#endif
