// Copyright 2026 The nmrqc Authors
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

// Geometric phase of a mixed qubit against the analytic curve.

#include <cstdio>

#include "nmrqc/nmrqc.hpp"

int main() {
  using namespace nmrqc;
  GeometricOptions opts;
  opts.engine.mode = ExecutionMode::GateNoise;
  opts.repetitions = 3;
  const auto rows =
      run_geometric_sweep({deg_to_rad(180.0), deg_to_rad(240.0)}, sweep_purities(), opts);
  std::printf("%9s %6s %11s %9s %11s\n", "omega_deg", "r", "gamma_mean", "gamma_std", "theory");
  for (const auto& row : rows) {
    std::printf("%9.1f %6.2f %11.2f %9.2f %11.2f\n", rad_to_deg(row.omega), row.r,
                rad_to_deg(row.mean), rad_to_deg(row.std), rad_to_deg(row.theory));
  }
  return 0;
}
