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

#pragma once

#include <string>
#include <string_view>

#include "nmrqc/gate_library.hpp"
#include "nmrqc/noise_model.hpp"
#include "nmrqc/quantum_core.hpp"

namespace nmrqc {

enum class ExecutionMode { Ideal, GateNoise, Pulse };

inline std::string_view to_string(ExecutionMode m) {
  switch (m) {
    case ExecutionMode::Ideal: return "ideal";
    case ExecutionMode::GateNoise: return "gate-noise";
    case ExecutionMode::Pulse: return "pulse";
  }
  return "ideal";
}

inline ExecutionMode parse_execution_mode(std::string_view s) {
  if (s == "ideal") return ExecutionMode::Ideal;
  if (s == "gate-noise") return ExecutionMode::GateNoise;
  if (s == "pulse") return ExecutionMode::Pulse;
  throw ValidationError("mode: expected ideal, gate-noise or pulse, got '" + std::string(s) + "'");
}

struct EngineConfig {
  ExecutionMode mode = ExecutionMode::Ideal;
  DeviceConfig device;
  NoiseSpec noise;
  NoiseOptions options;

  bool noisy() const { return mode != ExecutionMode::Ideal; }

  void validate() const {
    device.validate();
    noise.validate();
  }
};

/// Applies one instruction under the engine's mode. Gate-noise mode follows
/// each unitary with its relaxation channel; pulse mode integrates every
/// compiled segment and relaxes both spins for the segment's duration.
inline DensityMatrix apply_gate(const DensityMatrix& rho, const GateInstruction& g,
                                const EngineConfig& ec) {
  g.validate();
  switch (ec.mode) {
    case ExecutionMode::Ideal:
      return apply_unitary(rho, gate_unitary(g, ec.device));
    case ExecutionMode::GateNoise:
      return apply_channel(apply_unitary(rho, gate_unitary(g, ec.device)),
                           gate_noise_channel(g, ec.noise, ec.options));
    case ExecutionMode::Pulse: {
      DensityMatrix out = rho;
      for (const auto& seg : compile_gate(g, ec.device).segments) {
        out = apply_unitary(out, pulse_unitary(seg, ec.device));
        out = apply_channel(out, two_spin_relaxation(seg.duration, ec.noise));
      }
      return out;
    }
  }
  throw EngineError("unknown execution mode");
}

inline DensityMatrix apply_circuit(const DensityMatrix& rho, const Circuit& c,
                                   const EngineConfig& ec) {
  c.validate();
  DensityMatrix out = rho;
  for (const auto& g : c.instructions) out = apply_gate(out, g, ec);
  return out;
}

}  // namespace nmrqc
