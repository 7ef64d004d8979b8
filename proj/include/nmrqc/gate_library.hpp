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

// Gate set of the two-spin processor, the circuit IR shared by the engine and
// the service, and compilation of circuits into square-pulse schedules.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nmrqc/quantum_core.hpp"

namespace nmrqc {

enum class GateKind { X, Y, Z, X90, Y90, Z90, Rx, Ry, Rz, H, I, CX, CY, CZ, Delay };

inline constexpr std::array<std::pair<GateKind, std::string_view>, 15> kGateNames = {{
    {GateKind::X, "X"},     {GateKind::Y, "Y"},     {GateKind::Z, "Z"},
    {GateKind::X90, "X90"}, {GateKind::Y90, "Y90"}, {GateKind::Z90, "Z90"},
    {GateKind::Rx, "Rx"},   {GateKind::Ry, "Ry"},   {GateKind::Rz, "Rz"},
    {GateKind::H, "H"},     {GateKind::I, "I"},     {GateKind::CX, "CX"},
    {GateKind::CY, "CY"},   {GateKind::CZ, "CZ"},   {GateKind::Delay, "Delay"},
}};

inline std::string_view to_string(GateKind k) {
  for (const auto& [kind, name] : kGateNames) {
    if (kind == k) return name;
  }
  return "?";
}

inline GateKind parse_gate_kind(std::string_view name) {
  for (const auto& [kind, n] : kGateNames) {
    if (n == name) return kind;
  }
  throw ValidationError("kind: unknown gate kind '" + std::string(name) + "'");
}

inline bool is_rotation(GateKind k) {
  return k == GateKind::Rx || k == GateKind::Ry || k == GateKind::Rz;
}

inline bool is_two_qubit(GateKind k) {
  return k == GateKind::CX || k == GateKind::CY || k == GateKind::CZ;
}

inline bool is_single_qubit(GateKind k) { return !is_two_qubit(k) && k != GateKind::Delay; }

/// One circuit instruction. `target` is 1 or 2 for single-qubit kinds and 0
/// otherwise; two-qubit gates always use qubit 1 as control.
struct GateInstruction {
  GateKind kind = GateKind::I;
  int target = 0;
  std::optional<double> angle;     // radians, Rx/Ry/Rz only
  std::optional<double> duration;  // seconds, Delay only

  static GateInstruction single(GateKind k, int target) { return {k, target, {}, {}}; }
  static GateInstruction rotation(GateKind k, int target, double angle) {
    return {k, target, angle, {}};
  }
  static GateInstruction two(GateKind k) { return {k, 0, {}, {}}; }
  static GateInstruction delay(double seconds) { return {GateKind::Delay, 0, {}, seconds}; }

  void validate() const {
    if (is_single_qubit(kind)) {
      if (target != 1 && target != 2) {
        throw ValidationError("target: must be 1 or 2 for " + std::string(to_string(kind)) +
                              ", got " + std::to_string(target));
      }
    } else if (target != 0) {
      throw ValidationError("target: not allowed for " + std::string(to_string(kind)));
    }
    if (is_rotation(kind) != angle.has_value()) {
      throw ValidationError(is_rotation(kind) ? "angle_rad: required for rotations"
                                              : "angle_rad: only allowed for Rx/Ry/Rz");
    }
    if (angle && !std::isfinite(*angle)) throw ValidationError("angle_rad: must be finite");
    if ((kind == GateKind::Delay) != duration.has_value()) {
      throw ValidationError(kind == GateKind::Delay ? "duration_s: required for Delay"
                                                    : "duration_s: only allowed for Delay");
    }
    if (duration && !(*duration >= 0.0 && std::isfinite(*duration))) {
      throw ValidationError("duration_s: must be finite and >= 0");
    }
  }

  friend bool operator==(const GateInstruction&, const GateInstruction&) = default;
};

struct Circuit {
  std::string name;
  std::vector<GateInstruction> instructions;

  void validate() const {
    for (std::size_t k = 0; k < instructions.size(); ++k) {
      try {
        instructions[k].validate();
      } catch (const ValidationError& e) {
        throw ValidationError("instructions[" + std::to_string(k) + "]." + e.what());
      }
    }
  }

  Circuit& add(GateInstruction g) {
    instructions.push_back(std::move(g));
    return *this;
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Physical constants of the processor. Defaults describe the
/// dimethylphosphite sample.
struct DeviceConfig {
  double j_hz = 697.4;
  double larmor_h_mhz = 42.6;
  double larmor_p_mhz = 17.2;
  double t90_h = 10e-6;
  double t90_p = 20e-6;
  double t1_h = 4.0;
  double t1_p = 7.2;
  double t2_h = 0.3;
  double t2_p = 0.5;
  double t2_star_h = 0.025;
  double t2_star_p = 0.025;
  /// Switches the J coupling off during RF segments (hard-pulse limit).
  bool hard_pulses = false;

  void validate() const {
    const double all[] = {j_hz, larmor_h_mhz, larmor_p_mhz, t90_h, t90_p, t1_h,
                          t1_p, t2_h,         t2_p,         t2_star_h, t2_star_p};
    for (double v : all) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError("device config values must be positive");
      }
    }
  }

  double t90(int qubit) const { return qubit == 1 ? t90_h : t90_p; }
  double t1(int qubit) const { return qubit == 1 ? t1_h : t1_p; }
  double t2_star(int qubit) const { return qubit == 1 ? t2_star_h : t2_star_p; }
};

// ---------------------------------------------------------------------------
// Gate unitaries
// ---------------------------------------------------------------------------

inline ComplexMatrix rotation_2x2(char axis, double angle) {
  return std::cos(angle / 2) * pauli_i() - kI * std::sin(angle / 2) * pauli(axis);
}

inline ComplexMatrix zz_evolution(double t, double j_hz) {
  return expm_hermitian((kPi / 2) * j_hz * kron(pauli_z(), pauli_z()), t);
}

inline ComplexMatrix hadamard_2x2() {
  ComplexMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::sqrt(2.0);
}

inline ComplexMatrix controlled(const ComplexMatrix& target_op) {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  m.block(2, 2, 2, 2) = target_op;
  return m;
}

/// 4x4 matrix of one instruction, embedded on its lane.
inline ComplexMatrix gate_unitary(const GateInstruction& g, const DeviceConfig& cfg = {}) {
  g.validate();
  switch (g.kind) {
    case GateKind::X: return embed(pauli_x(), g.target);
    case GateKind::Y: return embed(pauli_y(), g.target);
    case GateKind::Z: return embed(pauli_z(), g.target);
    case GateKind::X90: return embed(rotation_2x2('x', kPi / 2), g.target);
    case GateKind::Y90: return embed(rotation_2x2('y', kPi / 2), g.target);
    case GateKind::Z90: return embed(rotation_2x2('z', kPi / 2), g.target);
    case GateKind::Rx: return embed(rotation_2x2('x', *g.angle), g.target);
    case GateKind::Ry: return embed(rotation_2x2('y', *g.angle), g.target);
    case GateKind::Rz: return embed(rotation_2x2('z', *g.angle), g.target);
    case GateKind::H: return embed(hadamard_2x2(), g.target);
    case GateKind::I: return ComplexMatrix::Identity(4, 4);
    case GateKind::CX: return controlled(pauli_x());
    case GateKind::CY: return controlled(pauli_y());
    case GateKind::CZ: return controlled(pauli_z());
    case GateKind::Delay: return zz_evolution(*g.duration, cfg.j_hz);
  }
  throw ValidationError("unsupported gate kind");
}

/// Time-ordered product; later instructions multiply on the left.
inline ComplexMatrix circuit_unitary(const Circuit& c, const DeviceConfig& cfg = {}) {
  ComplexMatrix u = ComplexMatrix::Identity(4, 4);
  for (const auto& g : c.instructions) u = gate_unitary(g, cfg) * u;
  return u;
}

// ---------------------------------------------------------------------------
// Pulse schedules
// ---------------------------------------------------------------------------

struct RfDrive {
  int target = 1;        // spin lane
  double phase = 0.0;    // nutation axis phase, radians
  double amplitude = 0;  // omega_1, rad/s
  double on_time = 0.0;  // seconds from segment start; 0 means the whole segment

  friend bool operator==(const RfDrive&, const RfDrive&) = default;
};

/// A square RF pulse (one or two simultaneous drives) or a free-evolution
/// window.
struct PulseSegment {
  enum class Kind { RF, FreeEvolution };
  Kind kind = Kind::FreeEvolution;
  std::vector<RfDrive> drives;  // empty for free evolution
  double duration = 0.0;        // seconds

  void validate() const {
    if (!(duration > 0.0)) throw ValidationError("pulse segment duration must be positive");
    if (kind == Kind::RF) {
      if (drives.empty() || drives.size() > 2) {
        throw ValidationError("RF segment needs one or two drives");
      }
      for (const auto& d : drives) {
        if (!(d.amplitude > 0.0)) throw ValidationError("RF amplitude must be positive");
        if (d.target != 1 && d.target != 2) throw ValidationError("RF target must be 1 or 2");
        if (!(d.on_time >= 0.0) || d.on_time > duration * (1 + 1e-12)) {
          throw ValidationError("RF on_time must lie within the segment");
        }
      }
      if (drives.size() == 2 && drives[0].target == drives[1].target) {
        throw ValidationError("simultaneous drives must address different spins");
      }
    } else if (!drives.empty()) {
      throw ValidationError("free evolution carries no drives");
    }
  }

  friend bool operator==(const PulseSegment&, const PulseSegment&) = default;
};

struct PulseSchedule {
  std::vector<PulseSegment> segments;

  double total_duration() const {
    double t = 0.0;
    for (const auto& s : segments) t += s.duration;
    return t;
  }
};

namespace detail {

inline double wrap_phase(double phi) {
  double w = std::fmod(phi, 2 * kPi);
  if (w < 0) w += 2 * kPi;
  return w;
}

// Rotation by `angle` about the in-plane axis at `axis_phase` on every lane in
// `targets`, issued as one simultaneous segment. Each spin is driven at its
// own nutation rate, so the faster spin's pulse ends early.
inline void emit_rotation(PulseSchedule& s, const std::vector<int>& targets, double axis_phase,
                          double angle, const DeviceConfig& cfg) {
  if (angle == 0.0) return;
  double phase = axis_phase;
  if (angle < 0) phase += kPi;
  const double mag = std::abs(angle);
  PulseSegment seg;
  seg.kind = PulseSegment::Kind::RF;
  for (int q : targets) {
    const double on = mag / (kPi / 2) * cfg.t90(q);
    seg.duration = std::max(seg.duration, on);
    seg.drives.push_back({q, wrap_phase(phase), (kPi / 2) / cfg.t90(q), on});
  }
  for (auto& d : seg.drives) {
    if (d.on_time >= seg.duration) d.on_time = 0.0;
  }
  s.segments.push_back(std::move(seg));
}

inline void emit_free(PulseSchedule& s, double duration) {
  if (duration <= 0.0) return;
  s.segments.push_back({PulseSegment::Kind::FreeEvolution, {}, duration});
}

// Rz(theta) realized as Rx(-pi/2), Ry(theta), Rx(pi/2) in time order.
inline void emit_rz(PulseSchedule& s, const std::vector<int>& targets, double theta,
                    const DeviceConfig& cfg) {
  if (theta == 0.0) return;
  emit_rotation(s, targets, 0.0, -kPi / 2, cfg);
  emit_rotation(s, targets, kPi / 2, theta, cfg);
  emit_rotation(s, targets, 0.0, kPi / 2, cfg);
}

inline void emit_cz(PulseSchedule& s, const DeviceConfig& cfg) {
  emit_rotation(s, {1, 2}, 0.0, kPi / 2, cfg);
  emit_rotation(s, {1, 2}, kPi / 2, kPi / 2, cfg);
  emit_rotation(s, {1, 2}, 0.0, -kPi / 2, cfg);
  emit_free(s, 1.0 / (2.0 * cfg.j_hz));
}

inline void emit_gate(PulseSchedule& s, const GateInstruction& g, const DeviceConfig& cfg) {
  const std::vector<int> t{g.target};
  switch (g.kind) {
    case GateKind::X: emit_rotation(s, t, 0.0, kPi, cfg); return;
    case GateKind::Y: emit_rotation(s, t, kPi / 2, kPi, cfg); return;
    case GateKind::X90: emit_rotation(s, t, 0.0, kPi / 2, cfg); return;
    case GateKind::Y90: emit_rotation(s, t, kPi / 2, kPi / 2, cfg); return;
    case GateKind::Rx: emit_rotation(s, t, 0.0, *g.angle, cfg); return;
    case GateKind::Ry: emit_rotation(s, t, kPi / 2, *g.angle, cfg); return;
    case GateKind::Z: emit_rz(s, t, kPi, cfg); return;
    case GateKind::Z90: emit_rz(s, t, kPi / 2, cfg); return;
    case GateKind::Rz: emit_rz(s, t, *g.angle, cfg); return;
    case GateKind::H:
      emit_rotation(s, t, kPi / 2, kPi / 2, cfg);
      emit_rotation(s, t, 0.0, kPi, cfg);
      return;
    case GateKind::I: return;
    case GateKind::CZ: emit_cz(s, cfg); return;
    case GateKind::CX:
      emit_rotation(s, {2}, kPi / 2, -kPi / 2, cfg);
      emit_cz(s, cfg);
      emit_rotation(s, {2}, kPi / 2, kPi / 2, cfg);
      return;
    case GateKind::CY:
      emit_rotation(s, {2}, 0.0, kPi / 2, cfg);
      emit_cz(s, cfg);
      emit_rotation(s, {2}, 0.0, -kPi / 2, cfg);
      return;
    case GateKind::Delay: emit_free(s, *g.duration); return;
  }
  throw ValidationError("unsupported gate kind");
}

}  // namespace detail

inline PulseSchedule compile_gate(const GateInstruction& g, const DeviceConfig& cfg = {}) {
  g.validate();
  PulseSchedule s;
  detail::emit_gate(s, g, cfg);
  return s;
}

/// Square-pulse schedule realizing `c`. Zero-length rotations and delays emit
/// nothing.
inline PulseSchedule compile_to_pulses(const Circuit& c, const DeviceConfig& cfg = {}) {
  c.validate();
  PulseSchedule s;
  for (const auto& g : c.instructions) detail::emit_gate(s, g, cfg);
  return s;
}

/// Rotating-frame Hamiltonian at time `t` into `seg`, in rad/s.
inline ComplexMatrix segment_hamiltonian(const PulseSegment& seg, const DeviceConfig& cfg,
                                         double t = 0.0) {
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  const bool coupling = seg.kind == PulseSegment::Kind::FreeEvolution || !cfg.hard_pulses;
  if (coupling) h += (kPi / 2) * cfg.j_hz * kron(pauli_z(), pauli_z());
  for (const auto& d : seg.drives) {
    if (d.on_time > 0.0 && t >= d.on_time) continue;
    const ComplexMatrix axis = std::cos(d.phase) * pauli_x() + std::sin(d.phase) * pauli_y();
    h += (d.amplitude / 2) * embed(axis, d.target);
  }
  return h;
}

/// Piecewise-constant propagator over the segment, split where drives end.
inline ComplexMatrix pulse_unitary(const PulseSegment& seg, const DeviceConfig& cfg = {}) {
  seg.validate();
  std::vector<double> cuts = {0.0, seg.duration};
  for (const auto& d : seg.drives) {
    if (d.on_time > 0.0 && d.on_time < seg.duration) cuts.push_back(d.on_time);
  }
  std::sort(cuts.begin(), cuts.end());
  ComplexMatrix u = ComplexMatrix::Identity(4, 4);
  for (std::size_t k = 1; k < cuts.size(); ++k) {
    const double dt = cuts[k] - cuts[k - 1];
    if (dt <= 0.0) continue;
    u = expm_hermitian(segment_hamiltonian(seg, cfg, cuts[k - 1]), dt) * u;
  }
  return u;
}

inline ComplexMatrix schedule_unitary(const PulseSchedule& s, const DeviceConfig& cfg = {}) {
  ComplexMatrix u = ComplexMatrix::Identity(4, 4);
  for (const auto& seg : s.segments) u = pulse_unitary(seg, cfg) * u;
  return u;
}

/// min over phi of || a - e^{i phi} b ||_op.
inline double phase_adjusted_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Complex overlap = (b.adjoint() * a).trace();
  const double phi0 = std::abs(overlap) > 0 ? std::arg(overlap) : 0.0;
  auto dist = [&](double phi) { return operator_norm(a - std::exp(kI * phi) * b); };
  // The Frobenius-optimal phase is the operator-norm optimum for every case
  // that matters here (near-equal unitaries); a bracketed golden-section
  // search around it handles the rest.
  double lo = phi0 - kPi / 8;
  double hi = phi0 + kPi / 8;
  double best = dist(phi0);
  const double g = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = dist(x1);
  double f2 = dist(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - g * (hi - lo); f1 = dist(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + g * (hi - lo); f2 = dist(x2);
    }
  }
  return std::min({best, f1, f2});
}

struct CompilationReport {
  ComplexMatrix target;
  ComplexMatrix compiled;
  double distance = 0.0;
  PulseSchedule schedule;
};

inline CompilationReport verify_compilation(const Circuit& c, const DeviceConfig& cfg = {}) {
  CompilationReport r;
  r.target = circuit_unitary(c, cfg);
  r.schedule = compile_to_pulses(c, cfg);
  r.compiled = schedule_unitary(r.schedule, cfg);
  r.distance = phase_adjusted_distance(r.target, r.compiled);
  return r;
}

}  // namespace nmrqc
