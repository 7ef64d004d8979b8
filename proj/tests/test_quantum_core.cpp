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

#include "nmrqc/quantum_core.hpp"
#include "nmrqc/gate_library.hpp"
#include "nmrqc/noise_model.hpp"
#include "oracles.hpp"

namespace {

using namespace nmrqc;

ComplexMatrix cx() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

TEST(DensityMatrix, RejectsInvalidMatrices) {
  EXPECT_THROW(DensityMatrix(ComplexMatrix::Identity(3, 3) / 3.0), ValidationError);
  EXPECT_THROW(DensityMatrix(ComplexMatrix::Identity(4, 4) / 2.0), ValidationError);
  ComplexMatrix nonherm = ComplexMatrix::Identity(2, 2) / 2.0;
  nonherm(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{nonherm}, ValidationError);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{neg}, ValidationError);
  EXPECT_THROW(DensityMatrix::basis_state(4), ValidationError);
}

TEST(DensityMatrix, ToleratesTinyNegativeEigenvalue) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0 + 5e-10;
  m(1, 1) = -5e-10;
  EXPECT_NO_THROW(DensityMatrix{m});
}

TEST(ApplyUnitary, IdentityAndControlledNot) {
  const auto r00 = DensityMatrix::basis_state(0);
  EXPECT_TRUE(approx_equal(apply_unitary(r00, ComplexMatrix::Identity(4, 4)).matrix(), r00.matrix()));
  EXPECT_TRUE(approx_equal(apply_unitary(r00, cx()).matrix(), r00.matrix()));
  const auto out = apply_unitary(DensityMatrix::basis_state(2), cx());
  EXPECT_TRUE(approx_equal(out.matrix(), DensityMatrix::basis_state(3).matrix()));
}

TEST(ApplyUnitary, RejectsBadOperators) {
  const auto r = DensityMatrix::basis_state(0);
  EXPECT_THROW(apply_unitary(r, ComplexMatrix::Identity(2, 2)), ValidationError);
  EXPECT_THROW(apply_unitary(r, 1.001 * ComplexMatrix::Identity(4, 4)), ValidationError);
}

TEST(ApplyChannel, IdentityDephasingDamping) {
  std::mt19937_64 rng(1);
  const DensityMatrix rho(oracle::random_density(rng));
  EXPECT_TRUE(approx_equal(apply_channel(rho, KrausChannel::identity(4)).matrix(), rho.matrix()));

  oracle::V plus(2);
  plus << 1, 1;
  const auto dephased = apply_channel(DensityMatrix::from_pure(plus), dephasing_kraus(0.5));
  EXPECT_LT(max_abs_deviation(dephased.matrix(), oracle::I2() / 2.0), 1e-12);

  const double p = 0.3;
  const auto damped = apply_channel(DensityMatrix::basis_state(1, 2), amplitude_damping_kraus(p));
  EXPECT_NEAR(damped(1, 1).real(), 1 - p, 1e-12);
  EXPECT_NEAR(damped(0, 0).real(), p, 1e-12);
}

TEST(KrausChannel, RejectsIncompleteSets) {
  EXPECT_THROW(KrausChannel({0.9 * ComplexMatrix::Identity(2, 2)}, "short"), ValidationError);
  EXPECT_THROW(KrausChannel({}, "empty"), ValidationError);
}

TEST(Expectation, BasicValuesAndSinglet) {
  const auto r00 = DensityMatrix::basis_state(0);
  EXPECT_NEAR(expectation(r00, oracle::pauli2("z0")), 1.0, 1e-15);
  EXPECT_NEAR(expectation(r00, oracle::pauli2("x0")), 0.0, 1e-15);
  oracle::V singlet(4);
  singlet << 0, 1, -1, 0;
  EXPECT_NEAR(expectation(DensityMatrix::from_pure(singlet), oracle::heisenberg()), -3.0, 1e-12);
  ComplexMatrix nonherm = ComplexMatrix::Zero(4, 4);
  nonherm(0, 1) = 1.0;
  EXPECT_THROW(expectation(r00, nonherm), ValidationError);
}

TEST(Fidelity, KnownValues) {
  std::mt19937_64 rng(2);
  const DensityMatrix rho(oracle::random_density(rng));
  EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-9);
  EXPECT_NEAR(fidelity(DensityMatrix::basis_state(0), DensityMatrix::basis_state(3)), 0.0, 1e-12);

  // Pure-versus-mixed closed form <psi|rho|psi>.
  const double eta = 0.9;
  oracle::M pps = (1 - eta) / 4.0 * oracle::M::Identity(4, 4);
  pps(0, 0) += eta;
  EXPECT_NEAR(fidelity(DensityMatrix::basis_state(0), DensityMatrix(pps)), pps(0, 0).real(), 1e-9);
  EXPECT_NEAR(pps(0, 0).real(), 0.925, 1e-15);
}

TEST(Fidelity, SymmetricOnRandomPairs) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix a(oracle::random_density(rng)), b(oracle::random_density(rng, 4, 2));
    // b is rank 2, so the square roots carry ~sqrt(eps) noise.
    EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-7);
    const double f = fidelity(a, b);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0 + 1e-12);
  }
}

TEST(Fidelity, DiagonalUnitaryOnDiagonalStateIsOne) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    oracle::M d = oracle::M::Zero(4, 4);
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += (d(i, i) = u(rng)).real();
    d /= s;
    oracle::M phase = oracle::M::Zero(4, 4);
    for (int i = 0; i < 4; ++i) phase(i, i) = std::polar(1.0, 6.28 * u(rng));
    const DensityMatrix rho(d);
    EXPECT_NEAR(fidelity(rho, apply_unitary(rho, phase)), 1.0, 1e-9);
  }
}

TEST(PauliCoefficients, KnownStates) {
  const auto c = pauli_basis_coefficients(DensityMatrix::basis_state(0));
  for (auto label : kPauliLabels) {
    const bool one = label == "z0" || label == "0z" || label == "zz";
    EXPECT_NEAR(c[label], one ? 1.0 : 0.0, 1e-15) << label;
  }
  const auto m = pauli_basis_coefficients(DensityMatrix::maximally_mixed());
  for (double v : m.values) EXPECT_NEAR(v, 0.0, 1e-15);
}

TEST(PauliCoefficients, MatchOracleTraceAndRoundTrip) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const oracle::M r = oracle::random_density(rng, 4, 1 + k % 4);
    const DensityMatrix rho(r);
    const auto c = pauli_basis_coefficients(rho);
    for (auto label : kPauliLabels) {
      const std::string l(label);
      EXPECT_NEAR(c[label], oracle::trace_real(r * oracle::pauli2(l.c_str())), 1e-12);
    }
    EXPECT_LT(max_abs_deviation(assemble_from_coefficients(c), r), 1e-10);
  }
}

TEST(Channels, TracePreservedAndUnitaryAgreement) {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix rho(oracle::random_density(rng));
    const oracle::M u = oracle::random_unitary(rng);
    const auto a = apply_unitary(rho, u);
    const auto b = apply_channel(rho, KrausChannel::unitary(u));
    EXPECT_TRUE((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() == 0.0);
    const auto ch = noisy_gate_channel(GateInstruction::two(GateKind::CX), NoiseSpec{});
    EXPECT_NEAR(apply_channel(rho, ch).matrix().trace().real(), 1.0, 1e-10);
  }
}

TEST(ReducedState, TracesOutOtherLane) {
  std::mt19937_64 rng(7);
  const oracle::M a = oracle::random_density(rng, 2), b = oracle::random_density(rng, 2);
  const DensityMatrix rho(oracle::kron(a, b));
  EXPECT_LT(max_abs_deviation(reduced_state(rho, 1).matrix(), a), 1e-12);
  EXPECT_LT(max_abs_deviation(reduced_state(rho, 2).matrix(), b), 1e-12);
}

TEST(ProjectToDensity, ClipsNegativeEigenvalues) {
  oracle::M m = oracle::M::Zero(4, 4);
  m(0, 0) = 1.1;
  m(1, 1) = -0.1;
  const auto p = project_to_density(m);
  EXPECT_TRUE(p.projected);
  EXPECT_NEAR(p.state(0, 0).real(), 1.0, 1e-12);
  const auto q = project_to_density(DensityMatrix::basis_state(2).matrix());
  EXPECT_FALSE(q.projected);
}

TEST(TraceDistance, OrthogonalAndEqual) {
  EXPECT_NEAR(trace_distance(DensityMatrix::basis_state(0), DensityMatrix::basis_state(1)), 1.0, 1e-12);
  EXPECT_NEAR(trace_distance(DensityMatrix::basis_state(0), DensityMatrix::basis_state(0)), 0.0, 1e-12);
}

}  // namespace
