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
#include "oracles.hpp"

namespace {

using namespace nmrqc;

double deg(double d) { return d * M_PI / 180.0; }

// Absolute angular difference on the circle.
double ang_diff(double a, double b) { return std::abs(std::remainder(a - b, 2 * M_PI)); }

// Independent ansatz energy from explicit matrices.
double oracle_energy(const Theta& t) {
  using namespace oracle;
  const M cx = oracle::kron(mat2(1, 0, 0, 0), I2()) + oracle::kron(mat2(0, 0, 0, 1), X());
  const M u = oracle::kron(rot('y', t[2]), rot('y', t[3])) * cx *
              oracle::kron(rot('y', t[0]), rot('y', t[1]));
  const V psi = u.col(0);
  return (psi.adjoint() * heisenberg() * psi)(0, 0).real();
}

const Theta kSinglet = {M_PI / 2, 0.0, 0.0, M_PI};

VqeOptions gate_noise_options() {
  VqeOptions o;
  o.engine.mode = ExecutionMode::GateNoise;
  return o;
}

// ---------------------------------------------------------------------------
// Geometric phase
// ---------------------------------------------------------------------------

TEST(GammaTheory, KnownValues) {
  EXPECT_NEAR(rad_to_deg(gamma_theory(0.5, deg(240))), -139.1066, 1e-3);
  EXPECT_NEAR(rad_to_deg(gamma_theory(1.0, deg(180))), -90.0, 1e-12);
  for (double om : {30.0, 90.0, 150.0, 210.0, 300.0}) {
    EXPECT_LT(ang_diff(gamma_theory(1.0, deg(om)), -deg(om) / 2), 1e-12) << om;
  }
  EXPECT_THROW(gamma_theory(1.5, 1.0), ValidationError);
}

TEST(GammaTheory, ZeroPurityIsRealValued) {
  for (double om = 0.0; om < 360.0; om += 7.5) {
    const double g = gamma_theory(0.0, deg(om));
    EXPECT_TRUE(g == 0.0 || std::abs(g - M_PI) < 1e-15) << om;
  }
}

TEST(MixedState, PreparedTargetMatchesBlochVector) {
  for (double r : {1.0, 0.0, 0.5, 0.87}) {
    const auto rho = apply_program(DensityMatrix::basis_state(0), prepare_mixed_state(r), {});
    const oracle::M want = 0.5 * (oracle::I2() - r * oracle::X());
    EXPECT_LT(max_abs_deviation(reduced_state(rho, 2).matrix(), want), 1e-12) << r;
    EXPECT_LT(max_abs_deviation(reduced_state(rho, 1).matrix(),
                                DensityMatrix::basis_state(0, 2).matrix()),
              1e-12);
  }
}

TEST(GeometricCircuit, MergedFormEqualsLiteral) {
  DeviceConfig hard;
  hard.hard_pulses = true;
  for (double om : {0.0, 60.0, 180.0, 240.0, 333.0}) {
    const auto a = circuit_unitary(geometric_phase_circuit(deg(om), hard));
    const auto b = circuit_unitary(geometric_phase_circuit_literal(deg(om)));
    EXPECT_LT(oracle::phase_distance(a, b), 1e-9) << om;
  }
}

TEST(GeometricCircuit, EigenstatesAcquireHalfSolidAngle) {
  using namespace oracle;
  const V plus = (V(2) << 1, 1).finished() / std::sqrt(2.0);
  const V minus = (V(2) << 1, -1).finished() / std::sqrt(2.0);
  for (double om : {90.0, 180.0, 240.0}) {
    const M u = circuit_unitary(geometric_phase_circuit(deg(om)));
    for (int s : {+1, -1}) {
      // The circuit starts with H on the ancilla, so feed it |0>.
      V in(4);
      const V tgt = s > 0 ? plus : minus;
      in << tgt(0), tgt(1), 0, 0;
      const V out = u * in;
      const double g = measure_ancilla_phase(DensityMatrix::from_pure(out)).gamma;
      EXPECT_LT(ang_diff(g, s * deg(om) / 2), 1e-9) << om << " " << s;
    }
  }
}

TEST(AncillaPhase, ExtractionCases) {
  using namespace oracle;
  V a(4), b(4);
  a << 1, 0, 1, 0;
  b << 1, 0, C(0, -1), 0;
  EXPECT_NEAR(extract_ancilla_phase(DensityMatrix::from_pure(a / std::sqrt(2.0))), 0.0, 1e-15);
  EXPECT_NEAR(extract_ancilla_phase(DensityMatrix::from_pure(b / std::sqrt(2.0))), -M_PI / 2,
              1e-15);
  EXPECT_THROW(extract_ancilla_phase(DensityMatrix::maximally_mixed(4)), EngineError);
}

TEST(GeometricSweep, IdealMatchesTheory) {
  const auto table = run_geometric_sweep({deg(180), deg(240), deg(100)}, sweep_purities());
  ASSERT_EQ(table.size(), 15u);
  for (const auto& row : table) {
    EXPECT_LT(rad_to_deg(ang_diff(row.mean, row.theory)), 0.5) << row.omega << " " << row.r;
    EXPECT_LT(row.std, 1e-9);
    const double nu = std::hypot(std::cos(row.omega / 2), row.r * std::sin(row.omega / 2));
    EXPECT_NEAR(row.visibility, nu, 5e-2);
    EXPECT_NEAR(row.visibility, nu, 1e-9);
  }
  EXPECT_TRUE(run_geometric_sweep({deg(180)}, {}).empty());
}

TEST(GeometricSweep, ZeroPurityVisibility) {
  for (double om : {40.0, 120.0, 250.0}) {
    const auto row = run_geometric_point(deg(om), 0.0, {});
    EXPECT_NEAR(row.visibility, std::abs(std::cos(deg(om) / 2)), 1e-9);
    EXPECT_LT(ang_diff(row.mean, gamma_theory(0.0, deg(om))), 1e-9);
  }
}

TEST(GeometricSweep, GateNoiseTracksTheory) {
  GeometricOptions o;
  o.engine.mode = ExecutionMode::GateNoise;
  o.repetitions = 2;
  const auto table = run_geometric_sweep({deg(180), deg(240)}, sweep_purities(), o);
  for (const auto& row : table) {
    EXPECT_LT(rad_to_deg(ang_diff(row.mean, row.theory)), 10.0) << row.omega << " " << row.r;
    const double nu = std::hypot(std::cos(row.omega / 2), row.r * std::sin(row.omega / 2));
    EXPECT_GT(row.visibility, 0.75 * nu);
    EXPECT_LT(row.visibility, nu + 1e-9);
  }
  // At 240 degrees gamma rises with r, and the noisy means follow.
  for (std::size_t k = 6; k < 10; ++k) {
    EXPECT_GT(table[k].theory, table[k - 1].theory);
    EXPECT_GT(table[k].mean, table[k - 1].mean);
  }
}

// ---------------------------------------------------------------------------
// Heisenberg VQE
// ---------------------------------------------------------------------------

TEST(Heisenberg, Spectrum) {
  Eigen::SelfAdjointEigenSolver<oracle::M> es(heisenberg_hamiltonian());
  EXPECT_NEAR(es.eigenvalues()(0), -3.0, 1e-10);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(es.eigenvalues()(k), 1.0, 1e-10);
  EXPECT_LT(max_abs_deviation(heisenberg_hamiltonian(), oracle::heisenberg()), 1e-15);
}

TEST(Ansatz, KnownEnergies) {
  EXPECT_NEAR(vqe_energy({0, 0, 0, 0}), 1.0, 1e-12);
  EXPECT_NEAR(vqe_energy(kSinglet), -3.0, 1e-9);
  EXPECT_NEAR(oracle_energy(kSinglet), -3.0, 1e-12);
  EXPECT_NEAR(vqe_energy({M_PI / 2, 0.0, M_PI, 0.0}), -3.0, 1e-9);
}

TEST(Ansatz, MatchesOracleAndPeriodicity) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int k = 0; k < 25; ++k) {
    const Theta t = {u(rng), u(rng), u(rng), u(rng)};
    const double e = vqe_energy(t);
    EXPECT_NEAR(e, oracle_energy(t), 1e-12);
    for (std::size_t i = 0; i < 4; ++i) {
      Theta s = t;
      s[i] += 2 * M_PI;
      EXPECT_NEAR(vqe_energy(s), e, 1e-12);
    }
  }
}

TEST(Ansatz, GridMinimumIsGroundEnergy) {
  const VqeEvaluator ev{VqeOptions{}};
  double best = 1e9;
  const int n = 12;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const double s = 2 * M_PI / n;
          best = std::min(best, ev.energy({a * s, b * s, c * s, d * s}).raw);
        }
  EXPECT_NEAR(best, -3.0, 1e-6);
  EXPECT_GE(best, -3.0 - 1e-12);
}

TEST(ParameterShift, MatchesFiniteDifferences) {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int k = 0; k < 25; ++k) {
    const Theta t = {u(rng), u(rng), u(rng), u(rng)};
    const Theta g = parameter_shift_gradient(t);
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_NEAR(g[i], oracle::central_difference(oracle_energy, t, i), 1e-4);
    }
  }
}

TEST(ParameterShift, SingleRotationSanity) {
  // E(t) = <zz> after Ry(t) on q1 alone is cos(t); the shift rule gives -sin(t).
  for (double t : {0.3, 1.1, 2.5}) {
    auto z = [](double a) {
      Circuit c;
      c.add(GateInstruction::rotation(GateKind::Ry, 1, a));
      return expectation(apply_circuit(DensityMatrix::basis_state(0), c, {}),
                         pauli_product("zz"));
    };
    EXPECT_NEAR(z(t), std::cos(t), 1e-12);
    EXPECT_NEAR(0.5 * (z(t + M_PI / 2) - z(t - M_PI / 2)), -std::sin(t), 1e-12);
  }
}

TEST(ParameterShift, VanishesAtGroundState) {
  const Theta g = parameter_shift_gradient(kSinglet);
  EXPECT_LT(std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3]), 1e-8);
}

TEST(Vqe, GateNoiseEnergyAtGroundState) {
  const double e = vqe_energy(kSinglet, gate_noise_options());
  EXPECT_GE(e, -2.8);
  EXPECT_LE(e, -2.4);
}

TEST(Vqe, IdealRunDecreasesMonotonically) {
  VqeOptions o;
  o.max_iters = 60;
  const auto run = run_vqe(o);
  ASSERT_GE(run.iterations.size(), 2u);
  for (std::size_t k = 1; k < run.iterations.size(); ++k) {
    EXPECT_LE(run.iterations[k].energy_raw, run.iterations[k - 1].energy_raw + 1e-9);
  }
  EXPECT_LE(run.final_energy(), -2.95);
  const auto rows = replay_with_modes(run);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_NEAR(rows[k].ideal, run.iterations[k].energy_raw, 1e-12);
  }
}

TEST(Vqe, SessionLearningRateChange) {
  VqeOptions o;
  o.max_iters = 6;
  VqeSession s(o);
  s.step();
  s.step();
  s.set_learning_rate(0.1);
  while (s.step()) {
  }
  const auto& its = s.run().iterations;
  ASSERT_EQ(its.size(), 6u);
  EXPECT_DOUBLE_EQ(its[1].alpha, 0.25);
  EXPECT_DOUBLE_EQ(its[2].alpha, 0.1);
  EXPECT_FALSE(s.step());
  EXPECT_THROW(s.set_learning_rate(-1.0), ValidationError);
}

TEST(Vqe, GateNoiseReplay) {
  VqeOptions o = gate_noise_options();
  o.max_iters = 100;
  const auto run = run_vqe(o);
  const auto rows = replay_with_modes(run);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_NEAR(rows[k].gate_noise, run.iterations[k].energy_raw, 1e-9);
  }
  // The noisy optimizer still lands near the true ground state.
  EXPECT_NEAR(rows.back().ideal, -3.0, 0.05);
}

TEST(Vqe, ReadoutMitigation) {
  VqeOptions o;
  o.mitigation = Mitigation::REM;
  o.shots = 20000;
  o.seed = 3;
  const auto e = VqeEvaluator(o).energy(kSinglet, 7);
  ASSERT_TRUE(e.mitigated.has_value());
  EXPECT_NEAR(*e.mitigated, -3.0, 0.06);
  EXPECT_GT(e.raw, *e.mitigated);
  EXPECT_THROW(parse_mitigation("foo"), ValidationError);
  EXPECT_EQ(parse_mitigation("CEM"), Mitigation::CEM);
}

TEST(Vqe, OptionValidation) {
  VqeOptions o;
  o.alpha = 0.0;
  EXPECT_THROW(run_vqe(o), ValidationError);
  o = VqeOptions{};
  o.max_iters = 0;
  EXPECT_THROW(run_vqe(o), ValidationError);
  EXPECT_THROW(ansatz_circuit({NAN, 0, 0, 0}), ValidationError);
}

}  // namespace
