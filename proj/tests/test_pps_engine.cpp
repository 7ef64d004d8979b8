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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "nmrqc/experiments.hpp"
#include "nmrqc/pps.hpp"
#include "oracles.hpp"

namespace {

using namespace nmrqc;

oracle::M upermute_literal() {
  oracle::M u = oracle::M::Zero(4, 4);
  u(0, 0) = oracle::C(0, -1);
  u(1, 3) = oracle::C(0, -1);
  u(2, 1) = -1;
  u(3, 2) = 1;
  return u;
}

TEST(UPermute, MatchesMatrixAndIsUnitary) {
  const auto u = u_permute();
  EXPECT_LT(max_abs_deviation(u, upermute_literal()), 1e-15);
  EXPECT_LT(unitary_deviation(u), 1e-12);
}

TEST(UPermute, BasisAction) {
  auto col = [&](int j) { return oracle::V(u_permute().col(j)); };
  EXPECT_LT(std::abs(col(0)(0) - oracle::C(0, -1)), 1e-15);
  EXPECT_LT(std::abs(col(1)(2) + 1.0), 1e-15);
  EXPECT_LT(std::abs(col(2)(3) - 1.0), 1e-15);
  EXPECT_LT(std::abs(col(3)(1) - oracle::C(0, -1)), 1e-15);
}

TEST(UPermute, PopulationCycle) {
  oracle::M d = oracle::M::Zero(4, 4);
  const double a = 0.4, b = 0.3, c = 0.2, e = 0.1;
  d(0, 0) = a;
  d(1, 1) = b;
  d(2, 2) = c;
  d(3, 3) = e;
  const DensityMatrix rho(d);
  const auto p1 = apply_unitary(rho, u_permute()).populations();
  EXPECT_NEAR(p1(0), a, 1e-15);
  EXPECT_NEAR(p1(1), e, 1e-15);
  EXPECT_NEAR(p1(2), b, 1e-15);
  EXPECT_NEAR(p1(3), c, 1e-15);
  DensityMatrix r = rho;
  for (int k = 0; k < 3; ++k) r = apply_unitary(r, u_permute());
  EXPECT_LT((r.populations() - rho.populations()).cwiseAbs().maxCoeff(), 1e-15);
  // Fourth power: one more step of the 3-cycle.
  r = apply_unitary(r, u_permute());
  EXPECT_LT((r.populations() - p1).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(UPermutePulseSequence, FourInstructionsMatchingUnitary) {
  const Circuit c = u_permute_pulse_sequence();
  EXPECT_EQ(c.instructions.size(), 4u);
  EXPECT_LT(oracle::phase_distance(circuit_unitary(c), upermute_literal()), 1e-8);
  EXPECT_LT(phase_adjusted_distance(circuit_unitary(c), u_permute()), 1e-8);
}

TEST(ThermalState, Polarizations) {
  const auto th = thermal_state();
  EXPECT_DOUBLE_EQ(th.epsilon_h, 0.2);
  EXPECT_NEAR(th.epsilon_h / th.epsilon_p, 42.6 / 17.2, 1e-12);
  const auto c = pauli_basis_coefficients(th.matrix);
  EXPECT_NEAR(c["z0"], 0.4, 1e-15);
  EXPECT_NEAR(c["0z"], 0.4 * 17.2 / 42.6, 1e-15);
  EXPECT_THROW(thermal_state(DeviceConfig{}, 0.45), ValidationError);
}

TEST(T1Relaxation, LimitsAndExponentialLaw) {
  std::mt19937_64 rng(31);
  const DensityMatrix rho(oracle::random_density(rng));
  EXPECT_LT(max_abs_deviation(t1_relaxation(rho, 0.0).matrix(), rho.matrix()), 1e-12);
  const auto eq = thermal_state();
  EXPECT_LT(max_abs_deviation(t1_relaxation(rho, 1e4).matrix(), eq.matrix.matrix()), 1e-12);

  // Spin-1 polarization displaced from equilibrium decays by 1/e after T1(H).
  const DeviceConfig cfg;
  oracle::M displaced = eq.matrix.matrix();
  displaced += 0.1 * oracle::kron(oracle::Z(), oracle::I2()) / 4.0;
  const DensityMatrix start(displaced);
  const double d0 = pauli_basis_coefficients(start)["z0"] - pauli_basis_coefficients(eq.matrix)["z0"];
  const auto after = t1_relaxation(start, cfg.t1_h, cfg);
  const double d1 = pauli_basis_coefficients(after)["z0"] - pauli_basis_coefficients(eq.matrix)["z0"];
  EXPECT_NEAR(d1, d0 / std::exp(1.0), 1e-12);
  EXPECT_THROW(t1_relaxation(rho, -1.0), ValidationError);
  // Far from equilibrium the linear model is not positive.
  EXPECT_THROW(t1_relaxation(DensityMatrix::basis_state(0), cfg.t1_h, cfg), EngineError);
}

TEST(PreparePps, RejectsBadArguments) {
  EXPECT_THROW(prepare_pps(0, 0.1), ValidationError);
  EXPECT_THROW(prepare_pps(3, 0.0), ValidationError);
}

TEST(PreparePps, ValidForSmallGrid) {
  for (int n : {1, 7, 50}) {
    for (double t : {0.001, 0.3, 10.0}) {
      const auto r = prepare_pps(n, t);
      EXPECT_NEAR(r.state.matrix().trace().real(), 1.0, 1e-10);
      EXPECT_EQ(r.repetitions, n);
    }
  }
}

TEST(PreparePps, FrozenDeviceConstantsMeetTargets) {
  const auto r = prepare_pps(kDefaultPpsRepetitions, kDefaultPpsDelay);
  const auto p = r.state.populations();
  EXPECT_LT(std::max({p(1), p(2), p(3)}) - std::min({p(1), p(2), p(3)}), 1e-3);
  EXPECT_GE(r.fidelity_vs_00, 0.99);
  EXPECT_GT(r.eta, 0.0);
  // eta is the least-squares fit of rho - I/4 onto |00><00| - I/4.
  const double excess = p(0) - (p(1) + p(2) + p(3)) / 3.0;
  EXPECT_NEAR(r.eta, excess, 1e-3);
  const auto n = r.normalized();
  EXPECT_GT(n.populations()(0), 0.99);
}

TEST(TunePps, DegenerateRangeReturnsThatPoint) {
  PpsTuneRange range;
  range.n_min = range.n_max = kDefaultPpsRepetitions;
  range.t_min = range.t_max = kDefaultPpsDelay;
  range.t_steps = 1;
  const auto t = tune_pps(DeviceConfig{}, range);
  EXPECT_EQ(t.n, kDefaultPpsRepetitions);
  EXPECT_DOUBLE_EQ(t.t, kDefaultPpsDelay);
}

TEST(TunePps, InfeasibleAndEmptyRanges) {
  PpsTuneRange range;
  range.n_min = range.n_max = 1;
  range.t_min = range.t_max = 0.05;
  range.t_steps = 1;
  EXPECT_THROW(tune_pps(DeviceConfig{}, range), EngineError);
  range.n_max = 0;
  EXPECT_THROW(tune_pps(DeviceConfig{}, range), ValidationError);
}

TEST(TunePps, SmallWindowIsReproducible) {
  PpsTuneRange range;
  range.n_min = 150;
  range.n_max = 260;
  range.t_min = 0.07;
  range.t_max = 0.09;
  range.t_steps = 21;
  const auto a = tune_pps(DeviceConfig{}, range);
  const auto b = tune_pps(DeviceConfig{}, range);
  EXPECT_EQ(a.n, b.n);
  EXPECT_EQ(a.t, b.t);
  EXPECT_EQ(a.result.eta, b.result.eta);
  EXPECT_GT(a.result.eta, 0.0);
  EXPECT_LT(a.result.population_residual, kPpsResidualLimit);
}

TEST(Engine, ModesAgreeWithoutNoise) {
  Circuit bell;
  bell.add(GateInstruction::single(GateKind::H, 1)).add(GateInstruction::two(GateKind::CX));
  EngineConfig ideal;
  const auto out = apply_circuit(DensityMatrix::basis_state(0), bell, ideal);
  const auto c = pauli_basis_coefficients(out);
  EXPECT_NEAR(c["xx"], 1.0, 1e-12);
  EXPECT_NEAR(c["zz"], 1.0, 1e-12);
  EXPECT_NEAR(c["yy"], -1.0, 1e-12);

  EngineConfig noisy;
  noisy.mode = ExecutionMode::GateNoise;
  const auto n = apply_circuit(DensityMatrix::basis_state(0), bell, noisy);
  EXPECT_LT(fidelity(n, out), 0.999);
  EXPECT_GT(fidelity(n, out), 0.9);

  EngineConfig pulse;
  pulse.mode = ExecutionMode::Pulse;
  const auto p = apply_circuit(DensityMatrix::basis_state(0), bell, pulse);
  EXPECT_GT(fidelity(p, out), 0.9);
  EXPECT_THROW(parse_execution_mode("fast"), ValidationError);
}

}  // namespace
