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

#ifndef ISINGDD_TOOLS_COMMANDS_H
#define ISINGDD_TOOLS_COMMANDS_H

#include <cstdint>
#include <string>
#include <vector>

#include "isingdd/analysis.h"
#include "isingdd/io.h"
#include "isingdd/propagator.h"
#include "isingdd/sequences.h"

namespace isingdd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSimulation = 1;
inline constexpr int kExitConfig = 2;

struct PulseChoice {
  /// "order0", "order1", "order2" or "explicit".
  std::string name;
  int order = 2;
  PulseFamily family;
  /// Per-series fit window; overrides the config-wide one.
  bool has_fit_window = false;
  double fit_lo = 0, fit_hi = 0;
};

/// "order0" (alias "hann"), "order1", "order2"; or a shape-set file holding
/// {"pi": shape, "rotations": [shape, ...], "order": k}.
PulseChoice make_pulses(const std::string &spec, const std::string &file = "");

/// "star6", "chain4": kind followed by qubit count.
QubitGraph graph_from_name(const std::string &name, double J);

Kernel kernel_from_string(const std::string &s);

struct ExperimentConfig {
  std::string name;
  GateSpec gate;
  bool default_pairs = true;
  std::vector<QubitGraph> graphs;
  std::vector<PulseChoice> pulses;
  std::vector<double> delta_grid;
  DisorderModel disorder;
  EvolveOptions evolve;
  bool has_fit_window = false;
  double fit_lo = 0, fit_hi = 0;
  std::vector<double> weights_at;
  std::string output_dir;
  std::string prefix;
};

/// Validates against the shipped schema rules; throws ConfigError with the
/// offending key. Relative pulse files resolve against base_dir.
ExperimentConfig parse_config(const json &j, const std::string &base_dir = ".");

/// Writes one sweep CSV per graph (all pulse series stacked), optional
/// weight CSVs and manifest.json. Returns the manifest.
json run_experiment(const ExperimentConfig &cfg, const json &config_json);

/// Least-squares slope over sweep rows inside [lo, hi] with delta > 0.
double window_fit(const std::vector<SweepRow> &rows, double lo, double hi);

/// Entry point shared by the binary and the tests.
int main_entry(int argc, char **argv);

}  // namespace isingdd::cli

#endif
