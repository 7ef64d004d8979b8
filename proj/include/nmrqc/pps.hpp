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

// Thermal equilibrium and pseudo-pure-state preparation by the relaxation
// method: N rounds of (basis permutation, relaxation delay t).

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "nmrqc/gate_library.hpp"
#include "nmrqc/quantum_core.hpp"

namespace nmrqc {

/// Default 1H polarization scale. Signals are relative, so only the ratio to
/// the 31P polarization carries physics.
inline constexpr double kDefaultEpsilonH = 0.2;

struct ThermalState {
  double epsilon_h = 0.0;
  double epsilon_p = 0.0;
  DensityMatrix matrix = DensityMatrix::maximally_mixed(4);
};

/// I/4 + (eps_H Z(x)I + eps_P I(x)Z)/2 with eps_P = eps_H * larmor_P / larmor_H.
inline ThermalState thermal_state(const DeviceConfig& cfg = {},
                                  double epsilon_h = kDefaultEpsilonH) {
  const double epsilon_p = epsilon_h * cfg.larmor_p_mhz / cfg.larmor_h_mhz;
  if (std::abs(epsilon_h) + std::abs(epsilon_p) > 0.5) {
    throw ValidationError("thermal polarizations too large for a valid state");
  }
  ComplexMatrix m = ComplexMatrix::Identity(4, 4) / 4.0 +
                    0.5 * (epsilon_h * pauli_product("z0") + epsilon_p * pauli_product("0z"));
  return {epsilon_h, epsilon_p, DensityMatrix(m)};
}

/// Basis permutation |01> -> -|10>, |10> -> |11>, |11> -> -i|01>, |00> -> -i|00>.
inline ComplexMatrix u_permute() {
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = -kI;
  u(1, 3) = -kI;
  u(2, 1) = -1.0;
  u(3, 2) = 1.0;
  return u;
}

/// Four-instruction realization of u_permute() (equal up to global phase).
inline Circuit u_permute_pulse_sequence() {
  Circuit c;
  c.name = "u_permute";
  c.add(GateInstruction::rotation(GateKind::Rx, 1, kPi / 2))
      .add(GateInstruction::delay(1.0 / (2.0 * DeviceConfig{}.j_hz)))
      .add(GateInstruction::rotation(GateKind::Ry, 1, -kPi / 2))
      .add(GateInstruction::two(GateKind::CX));
  return c;
}

/// Same sequence with the delay tied to `cfg.j_hz`.
inline Circuit u_permute_pulse_sequence(const DeviceConfig& cfg) {
  Circuit c = u_permute_pulse_sequence();
  c.instructions[1].duration = 1.0 / (2.0 * cfg.j_hz);
  return c;
}

namespace detail {

// Relaxation rate of one Pauli factor on a spin.
inline double factor_rate(char p, int qubit, const DeviceConfig& cfg) {
  switch (p) {
    case '0': return 0.0;
    case 'z': return 1.0 / cfg.t1(qubit);
    default: return 1.0 / cfg.t2_star(qubit);
  }
}

}  // namespace detail

/// Free relaxation for time t toward `eq`. Each Pauli component relaxes
/// exponentially; single-spin z terms with that spin's T1, transverse factors
/// with that spin's T2*, and products with the sum of the factor rates.
inline DensityMatrix t1_relaxation(const DensityMatrix& rho, double t, const DeviceConfig& cfg,
                                   const ThermalState& eq) {
  if (!(t >= 0.0)) throw ValidationError("relaxation time must be non-negative");
  if (rho.dim() != 4) throw ValidationError("relaxation needs a two-qubit state");
  const PauliCoefficients c = pauli_basis_coefficients(rho);
  const PauliCoefficients ceq = pauli_basis_coefficients(eq.matrix);
  PauliCoefficients out;
  for (std::size_t k = 0; k < kPauliLabels.size(); ++k) {
    const auto label = kPauliLabels[k];
    const double rate = detail::factor_rate(label[0], 1, cfg) + detail::factor_rate(label[1], 2, cfg);
    out.values[k] = ceq.values[k] + (c.values[k] - ceq.values[k]) * std::exp(-rate * t);
  }
  ComplexMatrix m = assemble_from_coefficients(out);
  // The linear model is positive near equilibrium only; strongly polarized
  // inputs (e.g. |00> at large epsilon) can leave the state space.
  try {
    return DensityMatrix(0.5 * (m + m.adjoint()));
  } catch (const ValidationError& e) {
    throw EngineError(std::string("relaxation left the state space (input too far from "
                                  "equilibrium for the linear model): ") + e.what());
  }
}

inline DensityMatrix t1_relaxation(const DensityMatrix& rho, double t,
                                   const DeviceConfig& cfg = {}) {
  return t1_relaxation(rho, t, cfg, thermal_state(cfg));
}

struct PpsResult {
  DensityMatrix state = DensityMatrix::maximally_mixed(4);
  double eta = 0.0;
  int repetitions = 0;
  double delay = 0.0;
  double fidelity_vs_00 = 0.0;
  /// Spread (max - min) of the three non-|00> populations.
  double population_residual = 0.0;

  /// I/4 + (rho - I/4)/eta, projected to a valid state: the pure state the
  /// PPS stands in for.
  DensityMatrix normalized() const {
    if (!(eta > 0.0)) throw EngineError("PPS has no |00> excess to normalize");
    const ComplexMatrix quarter = ComplexMatrix::Identity(4, 4) / 4.0;
    return project_to_density(quarter + (state.matrix() - quarter) / eta).state;
  }
};

namespace detail {

inline ComplexMatrix pps_deviation_target() {
  ComplexMatrix d = -ComplexMatrix::Identity(4, 4) / 4.0;
  d(0, 0) += 1.0;
  return d;
}

inline double population_residual(const DensityMatrix& rho) {
  const Eigen::VectorXd p = rho.populations();
  const double hi = std::max({p(1), p(2), p(3)});
  const double lo = std::min({p(1), p(2), p(3)});
  return hi - lo;
}

inline PpsResult summarize_pps(const DensityMatrix& after_loop, int n, double t) {
  // Full dephasing of residual coherences.
  ComplexMatrix diag = ComplexMatrix::Zero(4, 4);
  diag.diagonal() = after_loop.matrix().diagonal();
  DensityMatrix state(diag);

  const ComplexMatrix target = pps_deviation_target();
  const ComplexMatrix dev = state.matrix() - ComplexMatrix::Identity(4, 4) / 4.0;
  const double overlap = (dev * target).trace().real();
  const double tt = (target * target).trace().real();
  const double dd = (dev * dev).trace().real();

  PpsResult r;
  r.state = state;
  r.eta = overlap / tt;
  r.repetitions = n;
  r.delay = t;
  r.fidelity_vs_00 = dd > 0 ? overlap / std::sqrt(dd * tt) : 0.0;
  r.population_residual = population_residual(state);
  return r;
}

}  // namespace detail

inline PpsResult prepare_pps(int n, double t, const DeviceConfig& cfg = {},
                             double epsilon_h = kDefaultEpsilonH) {
  if (n < 1) throw ValidationError("PPS needs at least one repetition");
  if (!(t > 0.0)) throw ValidationError("PPS delay must be positive");
  const ThermalState eq = thermal_state(cfg, epsilon_h);
  const ComplexMatrix u = u_permute();
  DensityMatrix rho = eq.matrix;
  for (int k = 0; k < n; ++k) rho = t1_relaxation(apply_unitary(rho, u), t, cfg, eq);
  return detail::summarize_pps(rho, n, t);
}

struct PpsTuneRange {
  int n_min = 1;
  int n_max = 300;
  double t_min = 0.005;
  double t_max = 0.5;
  int t_steps = 496;  // 1 ms spacing over the default window

  void validate() const {
    if (n_min < 1 || n_max < n_min) throw ValidationError("empty repetition range");
    if (t_steps < 1 || !(t_min > 0.0) || t_max < t_min) {
      throw ValidationError("empty delay range");
    }
  }

  double t_at(int k) const {
    return t_steps == 1 ? t_min : t_min + (t_max - t_min) * k / (t_steps - 1);
  }
};

inline constexpr double kPpsResidualLimit = 1e-3;

struct PpsTuning {
  int n = 0;
  double t = 0.0;
  PpsResult result;
};

/// Grid search maximizing eta subject to population_residual < 1e-3. Ties go
/// to the smaller N, then the smaller t, so the result is deterministic.
inline PpsTuning tune_pps(const DeviceConfig& cfg = {}, const PpsTuneRange& range = {},
                          double epsilon_h = kDefaultEpsilonH) {
  range.validate();
  const ThermalState eq = thermal_state(cfg, epsilon_h);
  const ComplexMatrix u = u_permute();
  std::optional<PpsTuning> best;
  for (int k = 0; k < range.t_steps; ++k) {
    const double t = range.t_at(k);
    DensityMatrix rho = eq.matrix;
    for (int n = 1; n <= range.n_max; ++n) {
      rho = t1_relaxation(apply_unitary(rho, u), t, cfg, eq);
      if (n < range.n_min) continue;
      if (detail::population_residual(rho) >= kPpsResidualLimit) continue;
      PpsResult r = detail::summarize_pps(rho, n, t);
      const bool better = !best || r.eta > best->result.eta ||
                          (r.eta == best->result.eta &&
                           (n < best->n || (n == best->n && t < best->t)));
      if (better) best = PpsTuning{n, t, r};
    }
  }
  if (!best) throw EngineError("no (N, t) in range reaches equal populations within 1e-3");
  return *best;
}

}  // namespace nmrqc
