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

#include <random>

#include <gtest/gtest.h>

#include "nmrqc/gate_library.hpp"
#include "oracles.hpp"

namespace {

using namespace nmrqc;
using G = GateInstruction;

Circuit circuit(std::initializer_list<G> gs) {
  Circuit c;
  for (const auto& g : gs) c.add(g);
  return c;
}

std::vector<G> every_kind() {
  return {G::single(GateKind::X, 1),        G::single(GateKind::Y, 2),
          G::single(GateKind::Z, 1),        G::single(GateKind::X90, 2),
          G::single(GateKind::Y90, 1),      G::single(GateKind::Z90, 2),
          G::rotation(GateKind::Rx, 1, 0.7), G::rotation(GateKind::Ry, 2, -1.3),
          G::rotation(GateKind::Rz, 1, 2.1), G::single(GateKind::H, 2),
          G::single(GateKind::I, 1),        G::two(GateKind::CX),
          G::two(GateKind::CY),             G::two(GateKind::CZ),
          G::delay(3.1e-4)};
}

TEST(GateInstruction, Validation) {
  EXPECT_THROW(G::single(GateKind::X, 3).validate(), ValidationError);
  EXPECT_THROW((G{GateKind::Rx, 1, {}, {}}).validate(), ValidationError);
  EXPECT_THROW((G{GateKind::X, 1, 0.3, {}}).validate(), ValidationError);
  EXPECT_THROW(G::delay(-1.0).validate(), ValidationError);
  EXPECT_THROW((G{GateKind::CX, 1, {}, {}}).validate(), ValidationError);
  try {
    G::single(GateKind::H, 3).validate();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("target"), std::string::npos);
  }
  EXPECT_EQ(parse_gate_kind("CZ"), GateKind::CZ);
  EXPECT_THROW(parse_gate_kind("SWAP"), ValidationError);
}

TEST(GateUnitary, KnownMatrices) {
  const oracle::M x90 = oracle::kron(oracle::expm(oracle::C(0, -M_PI / 4) * oracle::X()), oracle::I2());
  EXPECT_LT(max_abs_deviation(gate_unitary(G::single(GateKind::X90, 1)), x90), 1e-12);

  const DeviceConfig cfg;
  const double t = 1.0 / (2 * cfg.j_hz);
  oracle::M d = oracle::M::Zero(4, 4);
  const double zz[4] = {1, -1, -1, 1};
  for (int i = 0; i < 4; ++i) d(i, i) = std::polar(1.0, -M_PI / 4 * zz[i]);
  EXPECT_LT(max_abs_deviation(gate_unitary(G::delay(t)), d), 1e-12);

  EXPECT_LT(max_abs_deviation(gate_unitary(G::rotation(GateKind::Rz, 2, 0.0)),
                              oracle::M::Identity(4, 4)), 1e-15);

  oracle::M cx = oracle::M::Zero(4, 4);
  cx(0, 0) = cx(1, 1) = cx(2, 3) = cx(3, 2) = 1.0;
  EXPECT_LT(max_abs_deviation(gate_unitary(G::two(GateKind::CX)), cx), 1e-15);
}

TEST(GateUnitary, AllKindsUnitaryAndRotationsInvert) {
  for (const auto& g : every_kind()) {
    EXPECT_LT(unitary_deviation(gate_unitary(g)), 1e-12) << to_string(g.kind);
  }
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int k = 0; k < 20; ++k) {
    const double th = u(rng);
    for (auto kind : {GateKind::Rx, GateKind::Ry, GateKind::Rz}) {
      const oracle::M p = gate_unitary(G::rotation(kind, 1 + k % 2, th)) *
                     gate_unitary(G::rotation(kind, 1 + k % 2, -th));
      EXPECT_LT(max_abs_deviation(p, oracle::M::Identity(4, 4)), 1e-12);
    }
  }
}

TEST(CircuitUnitary, Identities) {
  EXPECT_LT(max_abs_deviation(circuit_unitary(Circuit{}), oracle::M::Identity(4, 4)), 1e-15);
  const auto h_cz_h = circuit_unitary(circuit({G::single(GateKind::H, 2), G::two(GateKind::CZ),
                                               G::single(GateKind::H, 2)}));
  EXPECT_LT(oracle::phase_distance(h_cz_h, gate_unitary(G::two(GateKind::CX))), 1e-12);
  const auto four = circuit_unitary(circuit({G::single(GateKind::X90, 1), G::single(GateKind::X90, 1),
                                             G::single(GateKind::X90, 1), G::single(GateKind::X90, 1)}));
  const oracle::M x90 = oracle::rot('x', M_PI / 2);
  const oracle::M ref = oracle::kron(x90 * x90 * x90 * x90, oracle::I2());
  EXPECT_LT(max_abs_deviation(four, ref), 1e-12);
  EXPECT_LT(max_abs_deviation(four, -oracle::M::Identity(4, 4)), 1e-12);
}

TEST(CircuitUnitary, LaterInstructionsMultiplyOnTheLeft) {
  const auto u = circuit_unitary(circuit({G::single(GateKind::X90, 1), G::single(GateKind::Y90, 1)}));
  const oracle::M ref = oracle::kron(oracle::rot('y', M_PI / 2) * oracle::rot('x', M_PI / 2), oracle::I2());
  EXPECT_LT(max_abs_deviation(u, ref), 1e-12);
}

TEST(CompileToPulses, SingleX90) {
  const auto s = compile_to_pulses(circuit({G::single(GateKind::X90, 1)}));
  ASSERT_EQ(s.segments.size(), 1u);
  EXPECT_EQ(s.segments[0].kind, PulseSegment::Kind::RF);
  EXPECT_NEAR(s.segments[0].duration, 10e-6, 1e-18);
  ASSERT_EQ(s.segments[0].drives.size(), 1u);
  EXPECT_EQ(s.segments[0].drives[0].target, 1);
  EXPECT_NEAR(s.segments[0].drives[0].phase, 0.0, 1e-15);
  EXPECT_NEAR(s.segments[0].drives[0].amplitude, (M_PI / 2) / 10e-6, 1e-6);
}

TEST(CompileToPulses, NegativeAngleShiftsPhase) {
  const auto s = compile_to_pulses(circuit({G::rotation(GateKind::Rx, 2, -M_PI)}));
  ASSERT_EQ(s.segments.size(), 1u);
  EXPECT_NEAR(s.segments[0].duration, 40e-6, 1e-15);
  EXPECT_NEAR(s.segments[0].drives[0].phase, M_PI, 1e-12);
}

TEST(CompileToPulses, CzStructureAndDuration) {
  const DeviceConfig cfg;
  const auto s = compile_to_pulses(circuit({G::two(GateKind::CZ)}), cfg);
  ASSERT_EQ(s.segments.size(), 4u);
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(s.segments[k].kind, PulseSegment::Kind::RF);
    ASSERT_EQ(s.segments[k].drives.size(), 2u);
    EXPECT_NEAR(s.segments[k].duration, 20e-6, 1e-15);
    // Each spin nutates at its own rate; the proton pulse ends halfway.
    EXPECT_NEAR(s.segments[k].drives[0].amplitude, (M_PI / 2) / 10e-6, 1e-6);
    EXPECT_NEAR(s.segments[k].drives[0].on_time, 10e-6, 1e-15);
    EXPECT_NEAR(s.segments[k].drives[1].amplitude, (M_PI / 2) / 20e-6, 1e-6);
  }
  EXPECT_EQ(s.segments[3].kind, PulseSegment::Kind::FreeEvolution);
  EXPECT_NEAR(s.segments[3].duration, 1.0 / (2 * 697.4), 1e-15);
  EXPECT_NEAR(s.segments[3].duration, 717.0e-6, 0.1e-6);
  double sum = 0.0;
  for (const auto& seg : s.segments) sum += seg.duration;
  EXPECT_DOUBLE_EQ(s.total_duration(), sum);
  EXPECT_NEAR(sum, 1.0 / (2 * cfg.j_hz) + 3 * std::max(cfg.t90_h, cfg.t90_p), 1e-15);
}

TEST(CompileToPulses, DelayIsOneFreeSegment) {
  const auto s = compile_to_pulses(circuit({G::delay(1.5e-3)}));
  ASSERT_EQ(s.segments.size(), 1u);
  EXPECT_EQ(s.segments[0].kind, PulseSegment::Kind::FreeEvolution);
  EXPECT_DOUBLE_EQ(s.segments[0].duration, 1.5e-3);
}

TEST(PulseUnitary, FreeEvolutionAndRf) {
  DeviceConfig cfg;
  PulseSegment free{PulseSegment::Kind::FreeEvolution, {}, 1.0 / (2 * cfg.j_hz)};
  const oracle::M zz = oracle::expm(oracle::C(0, -M_PI / 4) * oracle::pauli2("zz"));
  EXPECT_LT(max_abs_deviation(pulse_unitary(free, cfg), zz), 1e-12);

  PulseSegment rf{PulseSegment::Kind::RF, {{1, 0.0, (M_PI / 2) / 10e-6}}, 10e-6};
  const oracle::M x90 = oracle::kron(oracle::rot('x', M_PI / 2), oracle::I2());
  DeviceConfig decoupled = cfg;
  decoupled.j_hz = 1e-300;
  EXPECT_LT(max_abs_deviation(pulse_unitary(rf, decoupled), x90), 1e-12);
  DeviceConfig hard = cfg;
  hard.hard_pulses = true;
  EXPECT_LT(max_abs_deviation(pulse_unitary(rf, hard), x90), 1e-12);

  // J on: compare against an independent exponential of the same Hamiltonian.
  const oracle::M h = (M_PI / 2) * cfg.j_hz * oracle::pauli2("zz") +
                      ((M_PI / 2) / 10e-6 / 2) * oracle::pauli2("x0");
  const oracle::M ref = oracle::expm(oracle::C(0, -10e-6) * h);
  const auto u = pulse_unitary(rf, cfg);
  EXPECT_LT(max_abs_deviation(u, ref), 1e-10);
  Eigen::JacobiSVD<oracle::M> svd(u - x90);
  EXPECT_LT(svd.singularValues()(0), 0.03);
}

TEST(VerifyCompilation, HardPulseCzIsExactUpToPhase) {
  DeviceConfig hard;
  hard.hard_pulses = true;
  const auto r = verify_compilation(circuit({G::two(GateKind::CZ)}), hard);
  EXPECT_LT(r.distance, 1e-9);
  oracle::M cz = oracle::M::Identity(4, 4);
  cz(3, 3) = -1;
  EXPECT_LT(max_abs_deviation(r.compiled, std::polar(1.0, M_PI / 4) * cz), 1e-9);
  EXPECT_LT(oracle::phase_distance(r.compiled, cz), 1e-8);
}

TEST(VerifyCompilation, IdentityAndSoftCz) {
  EXPECT_NEAR(verify_compilation(Circuit{}).distance, 0.0, 1e-12);
  EXPECT_LT(verify_compilation(circuit({G::two(GateKind::CZ)})).distance, 0.05);
}

TEST(VerifyCompilation, EveryKindInHardPulseLimit) {
  DeviceConfig hard;
  hard.hard_pulses = true;
  for (const auto& g : every_kind()) {
    const auto r = verify_compilation(circuit({g}), hard);
    EXPECT_LT(r.distance, 1e-9) << to_string(g.kind);
    EXPECT_LT(oracle::phase_distance(r.target, r.compiled), 1e-7) << to_string(g.kind);
  }
}

TEST(PhaseAdjustedDistance, IgnoresGlobalPhase) {
  std::mt19937_64 rng(12);
  const oracle::M u = oracle::random_unitary(rng);
  EXPECT_NEAR(phase_adjusted_distance(u, std::polar(1.0, 1.234) * u), 0.0, 1e-12);
  const oracle::M v = oracle::random_unitary(rng);
  EXPECT_NEAR(phase_adjusted_distance(u, v), oracle::phase_distance(u, v), 1e-6);
}

}  // namespace
