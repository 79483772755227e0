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

#include "isingdd/schedule.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "isingdd/io.h"

namespace isingdd {

Schedule Schedule::empty(int n) {
  Schedule s;
  s.n = n;
  s.ideal = Mat::Identity(1 << n, 1 << n);
  return s;
}

void Schedule::append(const Schedule &other) {
  if (other.n != n) throw ConfigError("cannot append schedules on different qubit counts");
  for (Segment seg : other.segments) {
    seg.start += total_duration;
    segments.push_back(seg);
  }
  total_duration += other.total_duration;
  ideal = other.ideal * ideal;
}

void Schedule::validate() const {
  const double eps = 1e-9;
  for (const auto &s : segments) {
    if (s.qubit < 0 || s.qubit >= n) throw ConfigError("segment qubit out of range");
    if (s.start < -eps || s.end() > total_duration + eps)
      throw ConfigError("segment outside schedule duration");
    if (!s.hard) s.shape.validate();
  }
  for (int q = 0; q < n; ++q) {
    std::vector<const Segment *> soft;
    for (const auto &s : segments)
      if (s.qubit == q && !s.hard) soft.push_back(&s);
    std::sort(soft.begin(), soft.end(), [](auto a, auto b) { return a->start < b->start; });
    for (size_t i = 1; i < soft.size(); ++i) {
      if (soft[i]->start < soft[i - 1]->end() - eps) {
        std::ostringstream os;
        os << "overlapping segments on qubit " << q << " at t = " << soft[i]->start;
        throw ConfigError(os.str());
      }
    }
  }
  if (std::abs(total_duration - std::round(total_duration)) > eps)
    throw ConfigError("schedule duration is not a multiple of the pulse length");
  if (ideal.rows() != (1 << n)) throw ConfigError("ideal unitary has wrong dimension");
}

Mat Schedule::nominal_unitary() const {
  std::vector<const Segment *> order;
  for (const auto &s : segments) order.push_back(&s);
  std::stable_sort(order.begin(), order.end(), [](auto a, auto b) { return a->start < b->start; });
  Mat u = Mat::Identity(1 << n, 1 << n);
  for (auto *s : order) u = embed1(rotation(s->shape.axis, s->angle()), s->qubit, n) * u;
  return u;
}

void Schedule::write_csv(std::ostream &os) const {
  CsvWriter w(os);
  w.header({"qubit", "axis", "sign", "start", "duration"});
  std::vector<const Segment *> order;
  for (const auto &s : segments) order.push_back(&s);
  std::stable_sort(order.begin(), order.end(), [](auto a, auto b) {
    return a->start < b->start || (a->start == b->start && a->qubit < b->qubit);
  });
  for (auto *s : order) {
    w.row({std::to_string(s->qubit), axis_name(s->shape.axis), std::to_string(s->hard ? 1 : s->shape.sign),
           format_double(s->start), format_double(s->duration())});
  }
}

std::vector<Segment> make_identity_pair(const PulseShape &shape, int qubit, double start) {
  if (shape.duration != 1.0) throw ConfigError("identity pair needs an unstretched pulse");
  Segment a{qubit, shape, start};
  Segment b{qubit, shape.inverted(), start + 1.0};
  return {a, b};
}

std::vector<Segment> hard_pulse(Axis axis, double angle, const std::vector<int> &targets, double t) {
  std::vector<Segment> out;
  for (int q : targets) {
    Segment s;
    s.qubit = q;
    s.shape.axis = axis;
    s.start = t;
    s.hard = true;
    s.hard_angle = angle;
    out.push_back(s);
  }
  return out;
}

}  // namespace isingdd
