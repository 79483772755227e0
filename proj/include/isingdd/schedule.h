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

#ifndef ISINGDD_SCHEDULE_H
#define ISINGDD_SCHEDULE_H

#include <iosfwd>
#include <string>
#include <vector>

#include "isingdd/linalg.h"
#include "isingdd/pulse.h"

namespace isingdd {

/// One control segment. Soft segments follow shape over
/// [start, start + shape.duration]; hard segments are instantaneous
/// rotations by hard_angle about shape.axis.
struct Segment {
  int qubit = 0;
  PulseShape shape;
  double start = 0;
  bool hard = false;
  double hard_angle = 0;

  double duration() const { return hard ? 0.0 : shape.duration; }
  double end() const { return start + duration(); }
  double angle() const { return hard ? hard_angle : shape.net_angle(); }
};

struct Schedule {
  int n = 1;
  std::vector<Segment> segments;
  double total_duration = 0;
  Mat ideal;
  std::string label;

  static Schedule empty(int n);

  /// Appends other after this schedule; ideal unitaries compose in time order.
  void append(const Schedule &other);

  /// Non-overlap per qubit and integer total duration.
  void validate() const;

  /// Exact ideal unitary obtained by replacing every segment with its net rotation.
  Mat nominal_unitary() const;

  void write_csv(std::ostream &os) const;
};

/// Two back-to-back segments V(t), -V(2 - t) on qubit starting at start.
std::vector<Segment> make_identity_pair(const PulseShape &shape, int qubit, double start);

/// Instantaneous rotations on each target at time t.
std::vector<Segment> hard_pulse(Axis axis, double angle, const std::vector<int> &targets, double t);

}  // namespace isingdd

#endif
