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

// Gate-level thermal-relaxation noise: every gate is followed by dephasing
// and then amplitude damping on the lanes it acts on.

#include <cmath>
#include <optional>
#include <string>

#include "nmrqc/gate_library.hpp"
#include "nmrqc/quantum_core.hpp"

namespace nmrqc {

struct NoiseSpec {
  double t1 = 5.6;          // s
  double t2_star = 0.025;   // s
  double t_1q = 25e-6;      // s
  double t_2q = 800e-6;     // s
  // Per-spin override for qubit 2; unset means both spins share t1/t2_star.
  std::optional<double> t1_p;
  std::optional<double> t2_star_p;

  double t1_for(int qubit) const { return qubit == 2 && t1_p ? *t1_p : t1; }
  double t2_star_for(int qubit) const {
    return qubit == 2 && t2_star_p ? *t2_star_p : t2_star;
  }

  void validate() const {
    for (double v : {t1, t2_star, t_1q, t_2q}) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError("noise spec values must be positive and finite");
      }
    }
    for (int q : {1, 2}) {
      if (!(t1_for(q) > 0.0) || !(t2_star_for(q) > 0.0)) {
        throw ValidationError("noise spec per-spin override must be positive");
      }
      if (t2_star_for(q) > 2.0 * t1_for(q)) {
        throw ValidationError("t2_star_s must not exceed 2*t1_s");
      }
    }
  }

  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

struct NoiseProbabilities {
  double p_damping = 0.0;
  double p_dephasing = 0.0;
};

/// Behavior switches beyond the per-gate model.
struct NoiseOptions {
  /// Also relax the idle spin during single-qubit gates.
  bool idle_spin_noise = false;
  /// Apply gate noise while preparing the pseudo-pure state.
  bool noisy_pps_stage = false;
};

inline void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError(std::string(what) + " probability must lie in [0, 1]");
  }
}

inline KrausChannel amplitude_damping_kraus(double p) {
  check_probability(p, "amplitude damping");
  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
  k1(0, 0) = 1.0;
  k1(1, 1) = std::sqrt(1.0 - p);
  ComplexMatrix k2 = ComplexMatrix::Zero(2, 2);
  k2(0, 1) = std::sqrt(p);
  return KrausChannel({k1, k2}, "amplitude_damping");
}

inline KrausChannel dephasing_kraus(double p) {
  check_probability(p, "dephasing");
  return KrausChannel({std::sqrt(1.0 - p) * pauli_i(), std::sqrt(p) * pauli_z()}, "dephasing");
}

inline NoiseProbabilities relaxation_probs(double t_q, double t1, double t2_star) {
  if (!(t_q >= 0.0)) throw ValidationError("gate time must be non-negative");
  const double gamma = t_q / t2_star - t_q / (2.0 * t1);
  if (gamma < 0.0) {
    throw ValidationError("unphysical noise spec: t_q/T2* - t_q/(2 T1) is negative");
  }
  return {1.0 - std::exp(-t_q / t1), 0.5 * (1.0 - std::exp(-2.0 * gamma))};
}

inline NoiseProbabilities thermal_relaxation_probs(double t_q, const NoiseSpec& spec,
                                                   int qubit = 1) {
  if (!(t_q > 0.0)) throw ValidationError("gate time must be positive");
  return relaxation_probs(t_q, spec.t1_for(qubit), spec.t2_star_for(qubit));
}

/// Dephasing followed by damping on one spin for duration t.
inline KrausChannel single_spin_relaxation(double t, const NoiseSpec& spec, int qubit) {
  const auto p = relaxation_probs(t, spec.t1_for(qubit), spec.t2_star_for(qubit));
  return then(dephasing_kraus(p.p_dephasing), amplitude_damping_kraus(p.p_damping));
}

/// Two-spin relaxation for duration t, built from the product sets
/// {K1,K2} (x) {K1,K2} of each stage.
inline KrausChannel two_spin_relaxation(double t, const NoiseSpec& spec) {
  const auto p1 = relaxation_probs(t, spec.t1_for(1), spec.t2_star_for(1));
  const auto p2 = relaxation_probs(t, spec.t1_for(2), spec.t2_star_for(2));
  KrausChannel deph = tensor(dephasing_kraus(p1.p_dephasing), dephasing_kraus(p2.p_dephasing));
  KrausChannel damp = tensor(amplitude_damping_kraus(p1.p_damping),
                             amplitude_damping_kraus(p2.p_damping));
  return then(deph, damp);
}

inline KrausChannel lift_to_lane(const KrausChannel& ch, int qubit) {
  return qubit == 1 ? tensor(ch, KrausChannel::identity(2))
                    : tensor(KrausChannel::identity(2), ch);
}

/// Noise that follows gate `g`, excluding the gate's own unitary.
inline KrausChannel gate_noise_channel(const GateInstruction& g, const NoiseSpec& spec,
                                       const NoiseOptions& opts = {}) {
  g.validate();
  if (g.kind == GateKind::Delay) return two_spin_relaxation(*g.duration, spec);
  if (is_two_qubit(g.kind)) return two_spin_relaxation(spec.t_2q, spec);
  if (opts.idle_spin_noise) return two_spin_relaxation(spec.t_1q, spec);
  return lift_to_lane(single_spin_relaxation(spec.t_1q, spec, g.target), g.target);
}

/// AmplitudeDamping o Dephasing o Unitary(g) as one Kraus set.
inline KrausChannel noisy_gate_channel(const GateInstruction& g, const NoiseSpec& spec,
                                       const DeviceConfig& cfg = {},
                                       const NoiseOptions& opts = {}) {
  return then(KrausChannel::unitary(gate_unitary(g, cfg), std::string(to_string(g.kind))),
              gate_noise_channel(g, spec, opts));
}

/// Average gate fidelity of `ch` against the unitary `u`, through the
/// entanglement fidelity F_e = sum_k |Tr(U^dagger E_k)|^2 / d^2.
inline double average_gate_fidelity(const KrausChannel& ch, const ComplexMatrix& u) {
  const double d = ch.dim();
  double fe = 0.0;
  for (const auto& e : ch.operators()) fe += std::norm((u.adjoint() * e).trace());
  fe /= d * d;
  return (d * fe + 1.0) / (d + 1.0);
}

}  // namespace nmrqc
