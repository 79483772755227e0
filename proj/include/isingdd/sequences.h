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

#ifndef ISINGDD_SEQUENCES_H
#define ISINGDD_SEQUENCES_H

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "isingdd/network.h"
#include "isingdd/pulse.h"
#include "isingdd/schedule.h"

namespace isingdd {

/// Pulse shapes used by the sequences: the pi pulse and rotation pulses for
/// arbitrary angles. order 0 is the single-harmonic Hann profile; orders 1
/// and 2 are self-refocusing shapes found on demand and memoized.
class PulseFamily {
 public:
  PulseFamily() = default;
  static PulseFamily standard(int order);
  /// Fixed shapes: pi pulse plus rotation shapes keyed by their angle.
  static PulseFamily explicit_shapes(const PulseShape &pi, const std::vector<PulseShape> &rotations);

  int order() const { return order_; }
  const std::string &name() const { return name_; }

  /// Pi pulse about x.
  const PulseShape &pi() const;
  /// Unstretched shape whose net angle is `angle` about `axis`.
  PulseShape rotation(Axis axis, double angle) const;

  /// Harmonic counts used by the search (order 1: 3, order 2: 4).
  static int default_harmonics(int order);

 private:
  struct Store {
    std::mutex mu;
    std::map<double, PulseShape> shapes;
  };
  int order_ = 0;
  bool fixed_ = false;
  std::string name_;
  std::shared_ptr<Store> store_;
};

/// Layout of the background pi_x trains inside a 16-interval DCG block (1-based intervals).
inline const std::vector<int> kDcgTrainA = {4, 10, 11, 13};
inline const std::vector<int> kDcgTrainB = {1, 7, 12, 14};
inline const std::vector<int> kDcgPlus = {2, 5, 8};
inline const std::vector<int> kDcgMinus = {3, 6, 9};
inline constexpr int kDcgStretchedStart = 15;

Schedule dcg_single(Axis axis, double phi0, const std::vector<int> &targets, const QubitGraph &graph,
                    const PulseFamily &shapes);

/// Reversed block followed by the direct one; net angle 2 phi0.
Schedule dcg_symmetrized(Axis axis, double phi0, const std::vector<int> &targets, const QubitGraph &graph,
                         const PulseFamily &shapes);

struct ZzOptions {
  double tau1 = 1.0;
  double tau2 = 0.0;
  int n_rep = 1;
  bool hard = false;
};

/// Pairs are (A-sublattice qubit, B-sublattice qubit) edges in either order.
/// Records the coupling prefactor in *f_out when given.
Schedule zz_sequence(const std::vector<std::pair<int, int>> &pairs, const ZzOptions &opt, const QubitGraph &graph,
                     const PulseFamily &shapes, double *f_out = nullptr);

double zz_prefactor(double tau1, double tau2);

enum class EulerVariant { Full, Partial };

/// Single-qubit Eulerian DCG about y with pi pulses from shapes and rotation angle phi0.
Schedule eulerian_dcg(EulerVariant variant, double phi0, const PulseFamily &shapes);

/// Slot labels in time order ("x", "y", "I", "V").
std::vector<std::string> eulerian_slots(EulerVariant variant);

enum class GateKind { Rotation, Hadamard, Cnot, Cy, Cz, Swap, Zz };

GateKind gate_kind_from_string(const std::string &s);
std::string gate_kind_name(GateKind k);

struct GateSpec {
  GateKind kind = GateKind::Cnot;
  /// Single-qubit kinds.
  std::vector<int> targets;
  Axis axis = Axis::X;
  double angle = 0;
  /// Two-qubit kinds: (control, target) pairs executed in parallel.
  std::vector<std::pair<int, int>> pairs;
  int n_rep = 5;
};

/// J tau_p that makes N_rep ZZ blocks produce exp(-i pi/4 zz).
double design_coupling(int n_rep);

Schedule compose_gate(const GateSpec &spec, const QubitGraph &graph, const PulseFamily &shapes);

/// Default (control, target) CNOT pair: leaf control with hub target on
/// stars, the last edge with the end qubit as target on chains.
std::pair<int, int> default_cnot_pair(const QubitGraph &graph);

/// Exact 2^n unitaries used as ideal targets.
Mat ideal_rotation(int n, const std::vector<int> &targets, Axis axis, double angle);
Mat ideal_zz(int n, const std::vector<std::pair<int, int>> &pairs, double theta);

}  // namespace isingdd

#endif
