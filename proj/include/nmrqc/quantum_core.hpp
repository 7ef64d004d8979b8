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

// Dense 2- and 4-dimensional complex linear algebra for the two-spin
// processor: density matrices, Kraus channels and the scalar functionals
// computed from them.
//
// Basis ordering is fixed everywhere as |00>, |01>, |10>, |11>. Qubit 1 is
// the 1H spin and is the first (most significant) tensor factor; qubit 2 is
// the 31P spin.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace nmrqc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Raised when an input violates a documented precondition or invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure cannot produce a result (singular
/// operators, undefined phases, non-finite energies).
class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double kMatrixEquality = 1e-12;
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-9;
inline constexpr double kCompleteness = 1e-10;
inline constexpr double kUnitaryReject = 1e-8;
inline constexpr double kImaginaryResidue = 1e-9;
}  // namespace tol

// ---------------------------------------------------------------------------
// Operator constants
// ---------------------------------------------------------------------------

inline ComplexMatrix pauli_i() { return ComplexMatrix::Identity(2, 2); }

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

/// Pauli matrix by label: '0' (identity), 'x', 'y' or 'z'.
inline ComplexMatrix pauli(char label) {
  switch (label) {
    case '0': return pauli_i();
    case 'x': return pauli_x();
    case 'y': return pauli_y();
    case 'z': return pauli_z();
    default: break;
  }
  throw ValidationError(std::string("unknown Pauli label '") + label + "'");
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Embeds a single-qubit operator on lane 1 or 2 of the two-qubit register.
inline ComplexMatrix embed(const ComplexMatrix& op, int qubit) {
  if (op.rows() != 2 || op.cols() != 2) {
    throw ValidationError("embed expects a 2x2 operator");
  }
  if (qubit == 1) return kron(op, pauli_i());
  if (qubit == 2) return kron(pauli_i(), op);
  throw ValidationError("qubit index must be 1 or 2, got " + std::to_string(qubit));
}

inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                         double atol = tol::kMatrixEquality) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= atol;
}

inline double max_abs_deviation(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double hermitian_deviation(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline double unitary_deviation(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()))
      .cwiseAbs()
      .maxCoeff();
}

/// Largest singular value.
inline double operator_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

/// exp(-i H t) for Hermitian H via eigendecomposition.
inline ComplexMatrix expm_hermitian(const ComplexMatrix& hamiltonian, double t) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hamiltonian);
  const Eigen::VectorXd& w = es.eigenvalues();
  ComplexVector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::exp(-kI * (w(k) * t));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Principal square root of a Hermitian PSD matrix; negative eigenvalues are
/// clamped to zero.
inline ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

// ---------------------------------------------------------------------------
// DensityMatrix
// ---------------------------------------------------------------------------

/// Hermitian, unit-trace, positive semidefinite 2x2 or 4x4 matrix. Instances
/// are validated at construction and immutable afterwards.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) { validate(); }

  static DensityMatrix basis_state(std::size_t index, int dim = 4) {
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    if (index >= static_cast<std::size_t>(dim)) {
      throw ValidationError("basis index out of range");
    }
    m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
    return DensityMatrix(std::move(m));
  }

  static DensityMatrix maximally_mixed(int dim = 4) {
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
  }

  static DensityMatrix from_pure(const ComplexVector& psi) {
    const double n = psi.norm();
    if (n == 0.0) throw ValidationError("zero state vector");
    ComplexVector v = psi / n;
    return DensityMatrix(v * v.adjoint());
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  Eigen::VectorXd eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }

  Eigen::VectorXd populations() const { return m_.diagonal().real(); }

 private:
  void validate() const {
    if (m_.rows() != m_.cols() || (m_.rows() != 2 && m_.rows() != 4)) {
      throw ValidationError("density matrix must be 2x2 or 4x4");
    }
    if (!m_.allFinite()) throw ValidationError("density matrix has non-finite entries");
    if (hermitian_deviation(m_) > tol::kHermitian) {
      throw ValidationError("density matrix is not Hermitian");
    }
    if (std::abs(m_.trace() - Complex(1.0)) > tol::kTrace) {
      throw ValidationError("density matrix trace differs from 1");
    }
    if (eigenvalues().minCoeff() < tol::kEigenvalueFloor) {
      throw ValidationError("density matrix has a negative eigenvalue");
    }
  }

  ComplexMatrix m_;
};

struct ProjectionResult {
  DensityMatrix state;
  bool projected = false;
};

/// Nearest valid density matrix: Hermitize, clip eigenvalues at zero and
/// renormalize the trace. `projected` is set when clipping was needed.
inline ProjectionResult project_to_density(const ComplexMatrix& m) {
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  Eigen::VectorXd w = es.eigenvalues();
  const bool clip = w.minCoeff() < tol::kEigenvalueFloor ||
                    std::abs(h.trace().real() - 1.0) > tol::kTrace;
  if (!clip) return {DensityMatrix(h), false};
  w = w.cwiseMax(0.0);
  const double s = w.sum();
  if (s <= 0.0) throw EngineError("cannot project a negative semidefinite matrix");
  w /= s;
  ComplexMatrix out = es.eigenvectors() * w.cast<Complex>().asDiagonal() *
                      es.eigenvectors().adjoint();
  out = 0.5 * (out + out.adjoint());
  return {DensityMatrix(out), true};
}

// ---------------------------------------------------------------------------
// KrausChannel
// ---------------------------------------------------------------------------

/// A set of Kraus operators satisfying sum_k E_k^dagger E_k = I.
class KrausChannel {
 public:
  KrausChannel(std::vector<ComplexMatrix> ops, std::string label)
      : ops_(std::move(ops)), label_(std::move(label)) {
    if (ops_.empty()) throw ValidationError("Kraus channel needs at least one operator");
    const auto d = ops_.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& e : ops_) {
      if (e.rows() != d || e.cols() != d) {
        throw ValidationError("Kraus operators must share one square dimension");
      }
      sum += e.adjoint() * e;
    }
    if (max_abs_deviation(sum, ComplexMatrix::Identity(d, d)) > tol::kCompleteness) {
      throw ValidationError("Kraus set '" + label_ + "' is not complete");
    }
  }

  static KrausChannel identity(int dim) {
    return KrausChannel({ComplexMatrix::Identity(dim, dim)}, "identity");
  }

  static KrausChannel unitary(const ComplexMatrix& u, std::string label = "unitary") {
    return KrausChannel({u}, std::move(label));
  }

  int dim() const { return static_cast<int>(ops_.front().rows()); }
  const std::vector<ComplexMatrix>& operators() const { return ops_; }
  const std::string& label() const { return label_; }

  /// Channel that applies `first` and then `second`.
  friend KrausChannel then(const KrausChannel& first, const KrausChannel& second) {
    std::vector<ComplexMatrix> ops;
    ops.reserve(first.ops_.size() * second.ops_.size());
    for (const auto& b : second.ops_) {
      for (const auto& a : first.ops_) ops.push_back(b * a);
    }
    return KrausChannel(std::move(ops), first.label_ + "|" + second.label_);
  }

  /// Product channel {A_i (x) B_j} acting on two lanes.
  friend KrausChannel tensor(const KrausChannel& a, const KrausChannel& b) {
    std::vector<ComplexMatrix> ops;
    ops.reserve(a.ops_.size() * b.ops_.size());
    for (const auto& x : a.ops_) {
      for (const auto& y : b.ops_) ops.push_back(kron(x, y));
    }
    return KrausChannel(std::move(ops), a.label_ + "(x)" + b.label_);
  }

 private:
  std::vector<ComplexMatrix> ops_;
  std::string label_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

inline DensityMatrix apply_unitary(const DensityMatrix& rho, const ComplexMatrix& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim()) {
    throw ValidationError("unitary dimension does not match the state");
  }
  if (unitary_deviation(u) > tol::kUnitaryReject) {
    throw ValidationError("operator is not unitary");
  }
  ComplexMatrix out = u * rho.matrix() * u.adjoint();
  return DensityMatrix(0.5 * (out + out.adjoint()));
}

inline DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch) {
  if (ch.dim() != rho.dim()) {
    throw ValidationError("channel dimension does not match the state");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& e : ch.operators()) out += e * rho.matrix() * e.adjoint();
  return DensityMatrix(0.5 * (out + out.adjoint()));
}

/// Tr(rho * obs) for Hermitian obs.
inline double expectation(const DensityMatrix& rho, const ComplexMatrix& obs) {
  if (obs.rows() != rho.dim() || obs.cols() != rho.dim()) {
    throw ValidationError("observable dimension does not match the state");
  }
  if (hermitian_deviation(obs) > tol::kHermitian) {
    throw ValidationError("observable is not Hermitian");
  }
  const Complex v = (rho.matrix() * obs).trace();
  if (std::abs(v.imag()) > tol::kImaginaryResidue) {
    throw EngineError("expectation value has an imaginary residue");
  }
  return v.real();
}

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2.
inline double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("fidelity needs equal dimensions");
  const ComplexMatrix sa = sqrt_psd(a.matrix());
  const ComplexMatrix inner = sa * b.matrix() * sa;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (inner + inner.adjoint()),
                                                  Eigen::EigenvaluesOnly);
  const double root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(root * root, 0.0, 1.0);
}

/// Half the trace norm of a - b.
inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("trace distance needs equal dimensions");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.matrix() - b.matrix(),
                                                  Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/// Reduced single-qubit state of lane 1 or 2.
inline DensityMatrix reduced_state(const DensityMatrix& rho, int qubit) {
  if (rho.dim() != 4) throw ValidationError("reduced_state needs a two-qubit state");
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix r = ComplexMatrix::Zero(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int k = 0; k < 2; ++k) {
        if (qubit == 1) {
          r(a, b) += m(2 * a + k, 2 * b + k);
        } else if (qubit == 2) {
          r(a, b) += m(2 * k + a, 2 * k + b);
        } else {
          throw ValidationError("qubit index must be 1 or 2");
        }
      }
    }
  }
  return DensityMatrix(0.5 * (r + r.adjoint()));
}

// ---------------------------------------------------------------------------
// Pauli-basis decomposition
// ---------------------------------------------------------------------------

/// The 15 two-qubit Pauli labels in wire order. Character 1 is the operator
/// on qubit 1, character 2 on qubit 2; '0' is the identity.
inline constexpr std::array<std::string_view, 15> kPauliLabels = {
    "x0", "y0", "z0", "0x", "0y", "0z", "xx", "xy",
    "xz", "yx", "yy", "yz", "zx", "zy", "zz"};

inline std::size_t pauli_label_index(std::string_view label) {
  for (std::size_t k = 0; k < kPauliLabels.size(); ++k) {
    if (kPauliLabels[k] == label) return k;
  }
  throw ValidationError("unknown Pauli label '" + std::string(label) + "'");
}

inline ComplexMatrix pauli_product(std::string_view label) {
  if (label.size() != 2) throw ValidationError("Pauli product label needs two characters");
  return kron(pauli(label[0]), pauli(label[1]));
}

/// c_ij = Tr(rho sigma_i sigma_j) in kPauliLabels order.
struct PauliCoefficients {
  std::array<double, 15> values{};

  double operator[](std::string_view label) const { return values[pauli_label_index(label)]; }
  double& operator[](std::string_view label) { return values[pauli_label_index(label)]; }
};

inline PauliCoefficients pauli_basis_coefficients(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw ValidationError("Pauli decomposition needs a two-qubit state");
  PauliCoefficients c;
  for (std::size_t k = 0; k < kPauliLabels.size(); ++k) {
    c.values[k] = (rho.matrix() * pauli_product(kPauliLabels[k])).trace().real();
  }
  return c;
}

/// I/4 + sum c_ij sigma_i sigma_j / 4, without any positivity repair.
inline ComplexMatrix assemble_from_coefficients(const PauliCoefficients& c) {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4) / 4.0;
  for (std::size_t k = 0; k < kPauliLabels.size(); ++k) {
    m += (c.values[k] / 4.0) * pauli_product(kPauliLabels[k]);
  }
  return m;
}

}  // namespace nmrqc
