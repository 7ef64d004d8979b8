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

// Error mitigation: inversion of a known channel in superoperator form, and
// confusion-matrix inversion of readout distributions.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "nmrqc/noise_model.hpp"
#include "nmrqc/quantum_core.hpp"
#include "nmrqc/tomography.hpp"

namespace nmrqc {

/// vec(rho)_{i*n + j} = rho_ij.
inline ComplexVector vec_rows(const ComplexMatrix& m) {
  const auto n = m.rows();
  ComplexVector v(n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) v(i * n + j) = m(i, j);
  }
  return v;
}

inline ComplexMatrix unvec_rows(const ComplexVector& v) {
  const auto n = static_cast<Eigen::Index>(std::lround(std::sqrt(static_cast<double>(v.size()))));
  if (n * n != v.size()) throw ValidationError("vector length is not a square");
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = v(i * n + j);
  }
  return m;
}

class Superoperator {
 public:
  /// Conjugation conventions tried in order: E (x) conj(E), then E (x) E^dagger.
  static constexpr const char* kRowStackConj = "row-stacking:E(x)conj(E)";
  static constexpr const char* kRowStackDagger = "row-stacking:E(x)E^dagger";

  static Superoperator from_kraus(const KrausChannel& ch, std::uint64_t check_seed = 20) {
    const std::array<const char*, 2> tags = {kRowStackConj, kRowStackDagger};
    for (const char* tag : tags) {
      const bool dagger = std::string(tag) == kRowStackDagger;
      const auto d = ch.dim();
      ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
      for (const auto& e : ch.operators()) {
        s += kron(e, dagger ? ComplexMatrix(e.adjoint()) : ComplexMatrix(e.conjugate()));
      }
      Superoperator so(std::move(s), tag);
      if (so.agrees_with(ch, check_seed)) return so;
    }
    throw EngineError("superoperator of '" + ch.label() + "' failed verification");
  }

  int dim() const { return static_cast<int>(s_.rows()); }
  const ComplexMatrix& matrix() const { return s_; }
  const std::string& convention() const { return tag_; }

  ComplexMatrix apply(const ComplexMatrix& rho) const { return unvec_rows(s_ * vec_rows(rho)); }

  /// sigma_max / sigma_min; infinite when singular.
  double condition_number() const {
    Eigen::JacobiSVD<ComplexMatrix> svd(s_);
    const auto& sv = svd.singularValues();
    const double lo = sv(sv.size() - 1);
    return lo > 0 ? sv(0) / lo : std::numeric_limits<double>::infinity();
  }

  bool singular() const {
    Eigen::JacobiSVD<ComplexMatrix> svd(s_);
    const auto& sv = svd.singularValues();
    return sv(sv.size() - 1) < 1e-12 * sv(0);
  }

  friend Superoperator operator*(const Superoperator& a, const Superoperator& b) {
    return Superoperator(a.s_ * b.s_, a.tag_);
  }

 private:
  Superoperator(ComplexMatrix s, std::string tag) : s_(std::move(s)), tag_(std::move(tag)) {}

  // Compares against direct Kraus application on 20 random states.
  bool agrees_with(const KrausChannel& ch, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    const auto d = ch.dim();
    for (int trial = 0; trial < 20; ++trial) {
      ComplexMatrix a(d, d);
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
      }
      ComplexMatrix rho = a * a.adjoint();
      rho /= rho.trace().real();
      const DensityMatrix direct = apply_channel(DensityMatrix(rho), ch);
      if (max_abs_deviation(apply(rho), direct.matrix()) > 1e-10) return false;
    }
    return true;
  }

  ComplexMatrix s_;
  std::string tag_;
};

inline Superoperator superoperator_from_kraus(const KrausChannel& ch) {
  return Superoperator::from_kraus(ch);
}

struct StateMitigationReport {
  DensityMatrix raw = DensityMatrix::maximally_mixed(4);
  DensityMatrix mitigated = DensityMatrix::maximally_mixed(4);
  double conditioning = 1.0;
  bool projection_fired = false;
};

/// rho_0 = unvec(S^-1 vec(rho_f)), Hermitized and projected to a valid state.
inline StateMitigationReport mitigate_state(const DensityMatrix& rho_f, const Superoperator& s) {
  if (s.dim() != rho_f.dim() * rho_f.dim()) {
    throw ValidationError("superoperator dimension does not match the state");
  }
  if (s.singular()) throw EngineError("channel superoperator is singular");
  const ComplexVector x = s.matrix().fullPivLu().solve(vec_rows(rho_f.matrix()));
  const ComplexMatrix m = unvec_rows(x);
  auto p = project_to_density(0.5 * (m + m.adjoint()));
  return {rho_f, p.state, s.condition_number(), p.projected};
}

inline StateMitigationReport mitigate_state(const DensityMatrix& rho_f, const KrausChannel& ch) {
  return mitigate_state(rho_f, superoperator_from_kraus(ch));
}

/// The channel inverted by CNOT-error mitigation: relaxation of both spins
/// over one two-qubit gate time.
inline KrausChannel cnot_noise_channel(const NoiseSpec& spec) {
  return gate_noise_channel(GateInstruction::two(GateKind::CX), spec);
}

enum class QuasiRepair { Clip, Simplex };

struct CountsMitigationReport {
  Eigen::Vector4d raw = Eigen::Vector4d::Zero();
  Eigen::Vector4d mitigated = Eigen::Vector4d::Zero();
  double conditioning = 1.0;
  bool projection_fired = false;
};

namespace detail {

// Euclidean projection onto the probability simplex.
inline Eigen::Vector4d project_simplex(const Eigen::Vector4d& v) {
  std::array<double, 4> u{v(0), v(1), v(2), v(3)};
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double tau = 0.0;
  for (int k = 0; k < 4; ++k) {
    cumsum += u[static_cast<std::size_t>(k)];
    const double t = (cumsum - 1.0) / (k + 1);
    if (u[static_cast<std::size_t>(k)] - t > 0) tau = t;
  }
  return (v.array() - tau).cwiseMax(0.0);
}

}  // namespace detail

/// P^-1 c_noisy, then repaired into a probability distribution.
inline CountsMitigationReport mitigate_counts(const Eigen::Vector4d& c_noisy,
                                              const ConfusionMatrix& p,
                                              QuasiRepair repair = QuasiRepair::Clip) {
  if (!c_noisy.allFinite() || (c_noisy.array() < 0).any()) {
    throw ValidationError("noisy distribution must be non-negative");
  }
  const double total = c_noisy.sum();
  if (!(total > 0)) throw ValidationError("noisy distribution is empty");
  const Eigen::Vector4d c = c_noisy / total;

  Eigen::JacobiSVD<Eigen::Matrix4d> svd(p.matrix());
  const auto& sv = svd.singularValues();
  if (sv(3) < 1e-12 * sv(0)) throw EngineError("confusion matrix is singular");

  CountsMitigationReport r;
  r.raw = c;
  r.conditioning = sv(0) / sv(3);
  Eigen::Vector4d q = p.matrix().fullPivLu().solve(c);
  const bool negative = (q.array() < 0).any();
  if (repair == QuasiRepair::Clip) {
    if (negative) {
      q = q.cwiseMax(0.0);
      q /= q.sum();
    }
  } else if (negative || std::abs(q.sum() - 1.0) > 1e-12) {
    q = detail::project_simplex(q);
  }
  r.projection_fired = negative;
  r.mitigated = q;
  return r;
}

inline CountsMitigationReport mitigate_counts(const Counts& counts, const ConfusionMatrix& p,
                                              QuasiRepair repair = QuasiRepair::Clip) {
  return mitigate_counts(frequencies(counts), p, repair);
}

}  // namespace nmrqc
