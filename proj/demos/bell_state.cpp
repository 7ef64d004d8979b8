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

// Bell pair: ideal simulation next to the noisy device run.

#include <cstdio>

#include "nmrqc/nmrqc.hpp"

int main() {
  using namespace nmrqc;
  Circuit bell;
  bell.name = "bell";
  bell.add(GateInstruction::single(GateKind::H, 1));
  bell.add(GateInstruction::two(GateKind::CX));

  EngineConfig ideal;
  const DensityMatrix sim = apply_circuit(DensityMatrix::basis_state(0), bell, ideal);

  EngineConfig device;
  device.mode = ExecutionMode::GateNoise;
  const DensityMatrix start = device_pps(device).normalized();
  const DensityMatrix out = apply_circuit(start, bell, device);
  MeasureOptions mo;
  mo.noise = device.noise;
  const Reconstruction rec = reconstruct(measure_coefficients(out, default_scheme(device.device), mo));

  const PauliCoefficients c = pauli_basis_coefficients(sim);
  std::printf("ideal  xx=%+.3f yy=%+.3f zz=%+.3f\n", c["xx"], c["yy"], c["zz"]);
  const PauliCoefficients m = pauli_basis_coefficients(rec.state);
  std::printf("device xx=%+.3f yy=%+.3f zz=%+.3f\n", m["xx"], m["yy"], m["zz"]);
  std::printf("fidelity %.4f\n", fidelity(rec.state, sim));

  const auto mit = mitigate_state(rec.state, cnot_noise_channel(device.noise));
  std::printf("after CX-noise inversion %.4f (cond %.2f)\n", fidelity(mit.mitigated, sim),
              mit.conditioning);
  return 0;
}
