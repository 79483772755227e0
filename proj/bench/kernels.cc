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

// Times the propagator kernels on one CNOT and checks they agree.
//
//   isingdd_bench [graph kind] [n] [steps per tau_p]
//
// Defaults: star 4 1024. The dense kernels scale as 8^n per step; keep n small.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "isingdd/analysis.h"
#include "isingdd/propagator.h"
#include "isingdd/sequences.h"

using namespace isingdd;

int main(int argc, char **argv) {
  const std::string kind = argc > 1 ? argv[1] : "star";
  const int n = argc > 2 ? std::atoi(argv[2]) : 4;
  const int steps = argc > 3 ? std::atoi(argv[3]) : 1024;

  const auto g = build_graph(kind, n, design_coupling(5));
  GateSpec spec;
  spec.kind = GateKind::Cnot;
  spec.pairs = {default_cnot_pair(g)};
  const Schedule s = compose_gate(spec, g, PulseFamily::standard(2));
  DisorderModel d;
  d.delta_rms = 0.1;
  d.seed = 1;
  const auto deltas = d.draw(0, n);

  std::printf("graph %s%d, %d steps per tau_p, %d OpenMP threads\n", kind.c_str(), n, steps, omp_get_max_threads());
  std::printf("%-16s %12s %14s %14s %12s\n", "kernel", "seconds", "infidelity", "|U - U_serial|", "defect");
  const char *names[] = {"dense-serial", "dense-parallel", "factorized"};
  Mat serial;
  int i = 0;
  for (Kernel k : {Kernel::DenseSerial, Kernel::DenseParallel, Kernel::Factorized}) {
    EvolveOptions o;
    o.kernel = k;
    o.steps_per_tau_p = steps;
    // Report the defect rather than stop on it.
    o.defect_tolerance = 1.0;
    const auto t0 = std::chrono::steady_clock::now();
    const auto u = evolve(s, g, deltas, o);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (k == Kernel::DenseSerial) serial = u.matrix;
    std::printf("%-16s %12.3f %14.6e %14.3e %12.3e\n", names[i++], secs, infidelity(s.ideal, u.matrix),
                (u.matrix - serial).norm(), u.unitarity_defect);
  }
  return 0;
}
