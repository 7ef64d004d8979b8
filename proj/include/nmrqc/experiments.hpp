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

// End-to-end experiment drivers: the mixed-state geometric phase and the
// two-qubit Heisenberg VQE.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nmrqc/engine.hpp"
#include "nmrqc/gate_library.hpp"
#include "nmrqc/mitigation.hpp"
#include "nmrqc/noise_model.hpp"
#include "nmrqc/pps.hpp"
#include "nmrqc/quantum_core.hpp"
#include "nmrqc/tomography.hpp"

namespace nmrqc {

inline double deg_to_rad(double d) { return d * kPi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / kPi; }

/// Maps an angle into (-pi, pi].
inline double wrap_to_pi(double a) {
  double w = std::remainder(a, 2 * kPi);
  if (w <= -kPi) w += 2 * kPi;
  return w;
}

// ---------------------------------------------------------------------------
// Programs: circuits with engine-level dephase steps
// ---------------------------------------------------------------------------

/// Removes the transverse magnetization of one spin. Ideal and gate-noise
/// modes apply it as a full dephasing channel; pulse mode waits 10 T2*.
struct DephaseStep {
  int qubit = 2;
  friend bool operator==(const DephaseStep&, const DephaseStep&) = default;
};

using ProgramStep = std::variant<GateInstruction, DephaseStep>;

struct Program {
  std::vector<ProgramStep> steps;

  Program& add(GateInstruction g) {
    steps.emplace_back(std::move(g));
    return *this;
  }
  Program& add(DephaseStep d) {
    steps.emplace_back(d);
    return *this;
  }
  Program& append(const Circuit& c) {
    for (const auto& g : c.instructions) steps.emplace_back(g);
    return *this;
  }
};

inline DensityMatrix apply_dephase(const DensityMatrix& rho, const DephaseStep& d,
                                   const EngineConfig& ec) {
  if (d.qubit != 1 && d.qubit != 2) throw ValidationError("dephase qubit must be 1 or 2");
  if (ec.mode == ExecutionMode::Pulse) {
    return apply_gate(rho, GateInstruction::delay(10.0 * ec.noise.t2_star_for(d.qubit)), ec);
  }
  return apply_channel(rho, lift_to_lane(dephasing_kraus(0.5), d.qubit));
}

inline DensityMatrix apply_program(const DensityMatrix& rho, const Program& p,
                                   const EngineConfig& ec) {
  DensityMatrix out = rho;
  for (const auto& step : p.steps) {
    if (const auto* g = std::get_if<GateInstruction>(&step)) {
      out = apply_gate(out, *g, ec);
    } else {
      out = apply_dephase(out, std::get<DephaseStep>(step), ec);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Device initial state
// ---------------------------------------------------------------------------

/// Frozen optimum of tune_pps() over its default range for the default
/// device.
inline constexpr int kDefaultPpsRepetitions = 206;
inline constexpr double kDefaultPpsDelay = 0.082;

/// The PPS run of the device modes. With `noisy_pps_stage` the permutation is
/// realized by its pulse sequence under gate noise instead of the exact
/// unitary.
inline PpsResult device_pps(const EngineConfig& ec) {
  if (!(ec.noisy() && ec.options.noisy_pps_stage)) {
    return prepare_pps(kDefaultPpsRepetitions, kDefaultPpsDelay, ec.device);
  }
  const ThermalState eq = thermal_state(ec.device);
  const Circuit perm = u_permute_pulse_sequence(ec.device);
  DensityMatrix rho = eq.matrix;
  for (int k = 0; k < kDefaultPpsRepetitions; ++k) {
    rho = t1_relaxation(apply_circuit(rho, perm, ec), kDefaultPpsDelay, ec.device, eq);
  }
  return detail::summarize_pps(rho, kDefaultPpsRepetitions, kDefaultPpsDelay);
}

/// |00><00| in ideal mode; the eta-normalized PPS otherwise.
inline DensityMatrix initial_state(const EngineConfig& ec) {
  if (!ec.noisy()) return DensityMatrix::basis_state(0);
  return device_pps(ec).normalized();
}

// ---------------------------------------------------------------------------
// Geometric phase
// ---------------------------------------------------------------------------

/// arg(cos(Omega/2) - i r sin(Omega/2)) in (-pi, pi].
inline double gamma_theory(double r, double omega) {
  if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("r must lie in [0, 1]");
  const double re = std::cos(omega / 2);
  const double im = -r * std::sin(omega / 2);
  if (im == 0.0) return re >= 0 ? 0.0 : kPi;
  return wrap_to_pi(std::atan2(im, re));
}

/// Program taking lane 2 from |0> to (I - r sigma_x)/2.
inline Program prepare_mixed_state(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("r must lie in [0, 1]");
  Program p;
  p.add(GateInstruction::rotation(GateKind::Rx, 2, std::acos(r)))
      .add(DephaseStep{2})
      .add(GateInstruction::rotation(GateKind::Ry, 2, -kPi / 2));
  return p;
}

struct GeometricAngles {
  double theta = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
};

inline GeometricAngles geometric_angles(double omega) {
  const double theta = omega / 4;
  return {theta, kPi / 2 - theta, 2 * theta - kPi / 2};
}

/// Ancilla (lane 1) preparation followed by the controlled loop on lane 2.
/// The explicit CZ pulses have their leading Rx(pi/2) merged into the
/// preceding target rotation, giving Rx(phi1) and Rx(phi2). A closing Z on
/// the ancilla removes the S^dagger that each CZ leaves relative to a
/// controlled Rz(pi).
inline Circuit geometric_phase_circuit(double omega, const DeviceConfig& cfg = {}) {
  if (!std::isfinite(omega)) throw ValidationError("Omega must be finite");
  const auto a = geometric_angles(omega);
  const double free = 1.0 / (2.0 * cfg.j_hz);
  Circuit c;
  c.name = "geometric_phase";
  c.add(GateInstruction::single(GateKind::H, 1));
  for (double phi : {a.phi1, a.phi2}) {
    c.add(GateInstruction::rotation(GateKind::Rx, 1, kPi / 2))
        .add(GateInstruction::rotation(GateKind::Rx, 2, phi))
        .add(GateInstruction::rotation(GateKind::Ry, 1, kPi / 2))
        .add(GateInstruction::rotation(GateKind::Ry, 2, kPi / 2))
        .add(GateInstruction::rotation(GateKind::Rx, 1, -kPi / 2))
        .add(GateInstruction::rotation(GateKind::Rx, 2, -kPi / 2))
        .add(GateInstruction::delay(free));
  }
  c.add(GateInstruction::single(GateKind::Z, 1));
  return c;
}

/// Same loop built from explicit gates: Rx(-theta), CZ, Rx(2 theta - pi), CZ.
inline Circuit geometric_phase_circuit_literal(double omega) {
  const auto a = geometric_angles(omega);
  Circuit c;
  c.name = "geometric_phase_literal";
  c.add(GateInstruction::single(GateKind::H, 1))
      .add(GateInstruction::rotation(GateKind::Rx, 2, -a.theta))
      .add(GateInstruction::two(GateKind::CZ))
      .add(GateInstruction::rotation(GateKind::Rx, 2, 2 * a.theta - kPi))
      .add(GateInstruction::two(GateKind::CZ))
      .add(GateInstruction::single(GateKind::Z, 1));
  return c;
}

inline Program geometric_phase_program(double omega, double r, const DeviceConfig& cfg = {}) {
  Program p = prepare_mixed_state(r);
  p.append(geometric_phase_circuit(omega, cfg));
  return p;
}

struct AncillaPhase {
  double gamma = 0.0;
  double visibility = 0.0;
};

/// Phase of the ancilla coherence relative to +x, in (-pi, pi].
inline AncillaPhase measure_ancilla_phase(const DensityMatrix& rho) {
  const DensityMatrix a = rho.dim() == 4 ? reduced_state(rho, 1) : rho;
  if (a.dim() != 2) throw ValidationError("ancilla phase needs a one- or two-qubit state");
  const double x = expectation(a, pauli_x());
  const double y = expectation(a, pauli_y());
  const double v = std::hypot(x, y);
  if (v < 1e-6) throw EngineError("ancilla visibility below 1e-6; phase undefined");
  return {wrap_to_pi(std::atan2(y, x)), v};
}

inline double extract_ancilla_phase(const DensityMatrix& rho) {
  return measure_ancilla_phase(rho).gamma;
}

struct CircularStats {
  double mean = 0.0;
  double std = 0.0;
};

inline CircularStats circular_stats(const std::vector<double>& angles) {
  if (angles.empty()) throw ValidationError("no angles");
  double s = 0.0;
  double c = 0.0;
  for (double a : angles) {
    s += std::sin(a);
    c += std::cos(a);
  }
  const double n = static_cast<double>(angles.size());
  const double rbar = std::min(1.0, std::hypot(s, c) / n);
  return {wrap_to_pi(std::atan2(s, c)), rbar >= 1.0 ? 0.0 : std::sqrt(-2.0 * std::log(rbar))};
}

struct GeometricPhaseRun {
  double omega = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  int repetitions = 0;
  std::vector<double> measured_gamma;
  double mean = 0.0;
  double std = 0.0;
  double theory = 0.0;
  double visibility = 0.0;
};

struct GeometricOptions {
  EngineConfig engine;
  int repetitions = 5;
  /// Spectral-fit noise on the tomography coefficients (device modes).
  double fit_sigma = 0.0;
  std::uint64_t seed = 0;
};

inline GeometricPhaseRun run_geometric_point(double omega, double r,
                                             const GeometricOptions& opts,
                                             const std::optional<DensityMatrix>& start = {}) {
  if (opts.repetitions < 1) throw ValidationError("repetitions must be at least 1");
  const auto a = geometric_angles(omega);
  GeometricPhaseRun run{omega, r, a.theta, a.phi1, a.phi2, opts.repetitions, {}, 0, 0,
                        gamma_theory(r, omega), 0};
  const DensityMatrix rho0 = start ? *start : initial_state(opts.engine);
  const DensityMatrix out = apply_program(rho0, geometric_phase_program(omega, r, opts.engine.device), opts.engine);
  const TomographyScheme scheme = default_scheme(opts.engine.device);
  double vis = 0.0;
  for (int k = 0; k < opts.repetitions; ++k) {
    DensityMatrix seen = out;
    if (opts.engine.noisy()) {
      MeasureOptions mo;
      mo.device = opts.engine.device;
      mo.noise = opts.engine.noise;
      mo.fit_sigma = opts.fit_sigma;
      mo.seed = opts.seed + static_cast<std::uint64_t>(k);
      seen = reconstruct(measure_coefficients(out, scheme, mo)).state;
    }
    const auto ph = measure_ancilla_phase(seen);
    run.measured_gamma.push_back(ph.gamma);
    vis += ph.visibility;
  }
  const auto st = circular_stats(run.measured_gamma);
  run.mean = st.mean;
  run.std = st.std;
  run.visibility = vis / opts.repetitions;
  return run;
}

/// One row per (Omega, r), Omega-major.
inline std::vector<GeometricPhaseRun> run_geometric_sweep(const std::vector<double>& omegas,
                                                          const std::vector<double>& rs,
                                                          const GeometricOptions& opts = {}) {
  std::vector<GeometricPhaseRun> table;
  if (omegas.empty() || rs.empty()) return table;
  opts.engine.validate();
  const DensityMatrix rho0 = initial_state(opts.engine);
  for (double om : omegas) {
    for (double r : rs) table.push_back(run_geometric_point(om, r, opts, rho0));
  }
  return table;
}

inline const std::vector<double>& sweep_purities() {
  static const std::vector<double> r = {0.26, 0.50, 0.71, 0.87, 0.97};
  return r;
}

// ---------------------------------------------------------------------------
// Heisenberg VQE
// ---------------------------------------------------------------------------

inline ComplexMatrix heisenberg_hamiltonian() {
  return pauli_product("xx") + pauli_product("yy") + pauli_product("zz");
}

using Theta = std::array<double, 4>;

inline Theta default_initial_theta() {
  return {deg_to_rad(10.2), deg_to_rad(8.35), deg_to_rad(108.0), deg_to_rad(91.5)};
}

/// Ry(t1) q1, Ry(t2) q2, CX, Ry(t3) q1, Ry(t4) q2.
inline Circuit ansatz_circuit(const Theta& t) {
  for (double v : t) {
    if (!std::isfinite(v)) throw ValidationError("theta: angles must be finite");
  }
  Circuit c;
  c.name = "ansatz";
  c.add(GateInstruction::rotation(GateKind::Ry, 1, t[0]))
      .add(GateInstruction::rotation(GateKind::Ry, 2, t[1]))
      .add(GateInstruction::two(GateKind::CX))
      .add(GateInstruction::rotation(GateKind::Ry, 1, t[2]))
      .add(GateInstruction::rotation(GateKind::Ry, 2, t[3]));
  return c;
}

enum class Mitigation { None, CEM, REM };

inline std::string_view to_string(Mitigation m) {
  switch (m) {
    case Mitigation::None: return "none";
    case Mitigation::CEM: return "CEM";
    case Mitigation::REM: return "REM";
  }
  return "none";
}

inline Mitigation parse_mitigation(std::string_view s) {
  if (s == "none") return Mitigation::None;
  if (s == "CEM" || s == "cem") return Mitigation::CEM;
  if (s == "REM" || s == "rem") return Mitigation::REM;
  throw ValidationError("mitigation: expected none, CEM or REM, got '" + std::string(s) + "'");
}

struct VqeOptions {
  Theta theta0 = default_initial_theta();
  double alpha = 0.25;
  int max_iters = 100;
  double tol = 1e-4;
  EngineConfig engine;
  Mitigation mitigation = Mitigation::None;
  /// Sampled-readout settings (REM).
  std::uint64_t shots = 8192;
  ConfusionMatrix confusion = default_confusion();
  QuasiRepair repair = QuasiRepair::Clip;
  /// Tomography settings (device modes).
  bool readout_noise = false;
  double fit_sigma = 0.0;
  std::uint64_t seed = 0;
  /// Halve alpha and retry when an ideal-mode step raises the energy.
  bool monotone_guard = true;
  /// Overrides the mode's starting state (|00> or the normalized PPS).
  std::optional<DensityMatrix> initial;

  void validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha: must be > 0");
    if (max_iters < 1) throw ValidationError("max_iters: must be >= 1");
    if (!(tol > 0.0)) throw ValidationError("tol: must be > 0");
    if (shots < 1) throw ValidationError("shots: must be >= 1");
    for (double v : theta0) {
      if (!std::isfinite(v)) throw ValidationError("theta: angles must be finite");
    }
    engine.validate();
  }
};

struct EnergyEval {
  double raw = 0.0;
  std::optional<double> mitigated;
};

/// Evaluates E(theta) under fixed options. Holds the cached device state,
/// tomography scheme and mitigation operators.
class VqeEvaluator {
 public:
  explicit VqeEvaluator(VqeOptions opts)
      : opts_(std::move(opts)),
        h_(heisenberg_hamiltonian()),
        rho0_(opts_.initial ? *opts_.initial : initial_state(opts_.engine)),
        scheme_(default_scheme(opts_.engine.device)) {
    opts_.validate();
    if (opts_.mitigation == Mitigation::CEM) {
      cem_ = superoperator_from_kraus(cnot_noise_channel(opts_.engine.noise));
    }
  }

  const VqeOptions& options() const { return opts_; }
  const DensityMatrix& initial() const { return rho0_; }

  /// Output state of the ansatz: exact in ideal mode, tomographically
  /// reconstructed in device modes.
  DensityMatrix state(const Theta& t, std::uint64_t seed) const {
    const DensityMatrix out = apply_circuit(rho0_, ansatz_circuit(t), opts_.engine);
    if (!opts_.engine.noisy()) return out;
    MeasureOptions mo;
    mo.noisy = opts_.readout_noise;
    mo.noise = opts_.engine.noise;
    mo.device = opts_.engine.device;
    mo.fit_sigma = opts_.fit_sigma;
    mo.seed = seed;
    return reconstruct(measure_coefficients(out, scheme_, mo)).state;
  }

  EnergyEval energy(const Theta& t, std::uint64_t seed = 0) const {
    if (opts_.mitigation == Mitigation::REM) return sampled_energy(t, seed);
    const DensityMatrix rho = state(t, seed);
    EnergyEval e{expectation(rho, h_), std::nullopt};
    if (cem_) e.mitigated = expectation(mitigate_state(rho, *cem_).mitigated, h_);
    return e;
  }

  /// Parameter-shift gradient of the raw energy: 8 evaluations at +-pi/2.
  Theta gradient(const Theta& t, std::uint64_t seed = 0) const {
    Theta g{};
    for (std::size_t i = 0; i < 4; ++i) {
      Theta plus = t;
      Theta minus = t;
      plus[i] += kPi / 2;
      minus[i] -= kPi / 2;
      g[i] = 0.5 * (energy(plus, seed + 2 * i + 1).raw - energy(minus, seed + 2 * i + 2).raw);
    }
    return g;
  }

 private:
  // Energy from X, Y and Z basis counts through the confusion matrix.
  EnergyEval sampled_energy(const Theta& t, std::uint64_t seed) const {
    const DensityMatrix out = apply_circuit(rho0_, ansatz_circuit(t), opts_.engine);
    struct Basis {
      GateInstruction q1;
      GateInstruction q2;
    };
    const std::array<std::optional<Basis>, 3> bases = {
        Basis{GateInstruction::rotation(GateKind::Ry, 1, -kPi / 2),
              GateInstruction::rotation(GateKind::Ry, 2, -kPi / 2)},
        Basis{GateInstruction::rotation(GateKind::Rx, 1, kPi / 2),
              GateInstruction::rotation(GateKind::Rx, 2, kPi / 2)},
        std::nullopt};
    EnergyEval e{0.0, 0.0};
    for (std::size_t b = 0; b < bases.size(); ++b) {
      DensityMatrix rho = out;
      if (bases[b]) {
        rho = apply_gate(rho, bases[b]->q1, opts_.engine);
        rho = apply_gate(rho, bases[b]->q2, opts_.engine);
      }
      const Counts counts = sample_readout(rho, opts_.shots, opts_.confusion, seed * 3 + b);
      const auto rep = mitigate_counts(counts, opts_.confusion, opts_.repair);
      e.raw += parity(rep.raw);
      *e.mitigated += parity(rep.mitigated);
    }
    return e;
  }

  static double parity(const Eigen::Vector4d& p) { return p(0) - p(1) - p(2) + p(3); }

  VqeOptions opts_;
  ComplexMatrix h_;
  DensityMatrix rho0_;
  TomographyScheme scheme_;
  std::optional<Superoperator> cem_;
};

inline double vqe_energy(const Theta& t, const VqeOptions& opts = {}) {
  return VqeEvaluator(opts).energy(t).raw;
}

inline Theta parameter_shift_gradient(const Theta& t, const VqeOptions& opts = {}) {
  return VqeEvaluator(opts).gradient(t);
}

struct VqeIteration {
  int index = 0;
  Theta theta{};
  double energy_raw = 0.0;
  std::optional<double> energy_mitigated;
  Theta gradient{};
  double grad_norm = 0.0;
  double alpha = 0.0;
};

struct VqeRun {
  Theta theta{};
  double learning_rate = 0.25;
  ExecutionMode mode = ExecutionMode::Ideal;
  Mitigation mitigation = Mitigation::None;
  std::vector<VqeIteration> iterations;
  bool converged = false;
  bool alpha_halved = false;
  std::vector<std::string> log;

  /// Energy reported for the run: mitigated when available.
  double final_energy() const {
    if (iterations.empty()) throw EngineError("VQE run has no iterations");
    const auto& last = iterations.back();
    return last.energy_mitigated ? *last.energy_mitigated : last.energy_raw;
  }
};

/// Step-wise gradient descent so callers can pause between iterations and
/// change the learning rate.
class VqeSession {
 public:
  explicit VqeSession(VqeOptions opts) : eval_(std::move(opts)) {
    const auto& o = eval_.options();
    run_.theta = o.theta0;
    run_.learning_rate = o.alpha;
    run_.mode = o.engine.mode;
    run_.mitigation = o.mitigation;
  }

  const VqeRun& run() const { return run_; }
  const VqeEvaluator& evaluator() const { return eval_; }

  bool finished() const {
    return run_.converged ||
           static_cast<int>(run_.iterations.size()) >= eval_.options().max_iters;
  }

  void set_learning_rate(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw ValidationError("learning rate must be positive");
    }
    run_.learning_rate = alpha;
    run_.log.push_back("learning rate set to " + std::to_string(alpha) + " before iteration " +
                       std::to_string(run_.iterations.size()));
  }

  /// Runs one iteration. Returns false once the run has finished.
  bool step() {
    if (finished()) return false;
    const auto& o = eval_.options();
    const int k = static_cast<int>(run_.iterations.size());
    const std::uint64_t seed = o.seed + 16 * static_cast<std::uint64_t>(k + retries_);
    EnergyEval e = eval_.energy(run_.theta, seed);
    if (!std::isfinite(e.raw) || (e.mitigated && !std::isfinite(*e.mitigated))) {
      throw EngineError("non-finite energy at iteration " + std::to_string(k));
    }
    if (o.monotone_guard && !o.engine.noisy() && o.mitigation != Mitigation::REM &&
        !run_.iterations.empty() && e.raw > run_.iterations.back().energy_raw + 1e-9) {
      const auto& prev = run_.iterations.back();
      run_.learning_rate /= 2;
      run_.alpha_halved = true;
      ++retries_;
      run_.log.push_back("energy rose at iteration " + std::to_string(k) +
                         "; learning rate halved to " + std::to_string(run_.learning_rate));
      for (std::size_t i = 0; i < 4; ++i) {
        run_.theta[i] = prev.theta[i] - run_.learning_rate * prev.gradient[i];
      }
      return true;
    }
    VqeIteration it;
    it.index = k;
    it.theta = run_.theta;
    it.energy_raw = e.raw;
    it.energy_mitigated = e.mitigated;
    it.gradient = eval_.gradient(run_.theta, seed + 1);
    double n2 = 0.0;
    for (double g : it.gradient) n2 += g * g;
    it.grad_norm = std::sqrt(n2);
    it.alpha = run_.learning_rate;
    run_.iterations.push_back(it);
    for (std::size_t i = 0; i < 4; ++i) run_.theta[i] -= it.alpha * it.gradient[i];
    update_convergence(o.tol);
    return !finished();
  }

  VqeRun run_to_end() {
    while (step()) {
    }
    return run_;
  }

 private:
  void update_convergence(double tol) {
    const auto& its = run_.iterations;
    if (its.size() < 4) return;
    for (std::size_t j = its.size() - 3; j < its.size(); ++j) {
      if (std::abs(its[j].energy_raw - its[j - 1].energy_raw) >= tol) return;
    }
    run_.converged = true;
  }

  VqeEvaluator eval_;
  VqeRun run_;
  int retries_ = 0;
};

inline VqeRun run_vqe(const VqeOptions& opts = {}) { return VqeSession(opts).run_to_end(); }

struct ReplayRow {
  int iteration = 0;
  double ideal = 0.0;
  double gate_noise = 0.0;
};

/// Re-evaluates a run's recorded theta sequence in ideal and gate-noise modes.
inline std::vector<ReplayRow> replay_with_modes(const VqeRun& run, const EngineConfig& base = {}) {
  if (run.iterations.empty()) throw ValidationError("run has no iterations to replay");
  VqeOptions ideal;
  ideal.engine = base;
  ideal.engine.mode = ExecutionMode::Ideal;
  VqeOptions noisy = ideal;
  noisy.engine.mode = ExecutionMode::GateNoise;
  const VqeEvaluator ei(ideal);
  const VqeEvaluator en(noisy);
  std::vector<ReplayRow> rows;
  rows.reserve(run.iterations.size());
  for (const auto& it : run.iterations) {
    rows.push_back({it.index, ei.energy(it.theta).raw, en.energy(it.theta).raw});
  }
  return rows;
}

}  // namespace nmrqc
