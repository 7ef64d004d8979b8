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

// Heisenberg VQE: ideal, then gate noise with CX-noise inversion.

#include <cstdio>

#include "nmrqc/nmrqc.hpp"

namespace {

void report(const char* label, const nmrqc::VqeRun& run) {
  const auto& last = run.iterations.back();
  std::printf("%-10s iterations=%zu converged=%d raw=%.4f", label, run.iterations.size(),
              run.converged ? 1 : 0, last.energy_raw);
  if (last.energy_mitigated) std::printf(" mitigated=%.4f", *last.energy_mitigated);
  std::printf("\n");
}

}  // namespace

int main() {
  using namespace nmrqc;
  VqeOptions ideal;
  report("ideal", run_vqe(ideal));

  VqeOptions noisy;
  noisy.engine.mode = ExecutionMode::GateNoise;
  noisy.mitigation = Mitigation::CEM;
  report("gate-noise", run_vqe(noisy));
  return 0;
}
