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

// Emulated NMR readout. A spin's spectrum exposes four product observables;
// readout pulses rotate the remaining Pauli components into view.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nmrqc/engine.hpp"
#include "nmrqc/gate_library.hpp"
#include "nmrqc/noise_model.hpp"
#include "nmrqc/quantum_core.hpp"

namespace nmrqc {

enum class Spin { H, P };

inline int lane_of(Spin s) { return s == Spin::H ? 1 : 2; }

/// Labels of the four NMR-visible products on a spin, in the order returned
/// by nmr_observables().
inline std::array<std::string_view, 4> nmr_observable_labels(Spin s) {
  if (s == Spin::H) return {"x0", "xz", "y0", "yz"};
  return {"0x", "zx", "0y", "zy"};
}

inline std::array<ComplexMatrix, 4> nmr_observables(Spin s) {
  const auto labels = nmr_observable_labels(s);
  return {pauli_product(labels[0]), pauli_product(labels[1]), pauli_product(labels[2]),
          pauli_product(labels[3])};
}

/// c[label] = sign * <observable #observable>.
struct Extraction {
  std::string label;
  int observable = 0;
  double sign = 1.0;
};

struct ReadoutExperiment {
  std::string name;
  Circuit readout_pulse;
  Spin observed_spin = Spin::H;
  std::vector<Extraction> yields;
};

namespace detail {

// Derives the extraction map of (readout, spin): each observable O seen after
// readout R measures Tr(rho R^dagger O R), which for the Clifford readouts
// used here is +-1 times a single Pauli product.
inline std::vector<Extraction> derive_extractions(const Circuit& readout, Spin spin,
                                                  const DeviceConfig& cfg) {
  const ComplexMatrix r = circuit_unitary(readout, cfg);
  const auto obs = nmr_observables(spin);
  std::vector<Extraction> out;
  for (int k = 0; k < 4; ++k) {
    const ComplexMatrix heis = r.adjoint() * obs[static_cast<std::size_t>(k)] * r;
    int hits = 0;
    Extraction e;
    for (auto label : kPauliLabels) {
      const double c = (heis * pauli_product(label)).trace().real() / 4.0;
      if (std::abs(c) > 1e-9) {
        ++hits;
        if (std::abs(std::abs(c) - 1.0) > 1e-9) hits = 99;
        e = {std::string(label), k, c > 0 ? 1.0 : -1.0};
      }
    }
    if (hits != 1) {
      throw EngineError("readout does not map an observable onto a single Pauli product");
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace detail

inline ReadoutExperiment make_experiment(std::string name, Circuit readout, Spin spin,
                                         const DeviceConfig& cfg = {}) {
  readout.validate();
  ReadoutExperiment e{std::move(name), std::move(readout), spin, {}};
  e.yields = detail::derive_extractions(e.readout_pulse, spin, cfg);
  return e;
}

struct TomographyScheme {
  std::vector<ReadoutExperiment> experiments;

  /// 15 x (yield count) matrix: column j holds the Pauli coefficients of the
  /// operator read by yield j.
  Eigen::MatrixXd coverage_matrix(const DeviceConfig& cfg = {}) const {
    std::vector<Eigen::VectorXd> cols;
    for (const auto& e : experiments) {
      const ComplexMatrix r = circuit_unitary(e.readout_pulse, cfg);
      const auto obs = nmr_observables(e.observed_spin);
      for (const auto& y : e.yields) {
        const ComplexMatrix heis =
            y.sign * (r.adjoint() * obs[static_cast<std::size_t>(y.observable)] * r);
        Eigen::VectorXd col(15);
        for (std::size_t k = 0; k < kPauliLabels.size(); ++k) {
          col(static_cast<Eigen::Index>(k)) =
              (heis * pauli_product(kPauliLabels[k])).trace().real() / 4.0;
        }
        cols.push_back(col);
      }
    }
    Eigen::MatrixXd m(15, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = cols[j];
    return m;
  }

  int coverage_rank(const DeviceConfig& cfg = {}) const {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(coverage_matrix(cfg));
    lu.setThreshold(1e-9);
    return static_cast<int>(lu.rank());
  }

  /// Throws unless every label is yielded exactly once and the coverage
  /// matrix has rank 15.
  void validate(const DeviceConfig& cfg = {}) const {
    std::array<int, 15> seen{};
    for (const auto& e : experiments) {
      for (const auto& y : e.yields) ++seen[pauli_label_index(y.label)];
    }
    for (std::size_t k = 0; k < seen.size(); ++k) {
      if (seen[k] != 1) {
        throw EngineError("tomography scheme yields '" + std::string(kPauliLabels[k]) + "' " +
                          std::to_string(seen[k]) + " times");
      }
    }
    if (coverage_rank(cfg) != 15) throw EngineError("tomography scheme is rank deficient");
  }
};

/// Six experiments: no pulse (read each spin), Y90 on H (the c_z0 anchor, with
/// c_zz), Y90 on P, Ry(-pi/2) on P read on H, X90 on P read on H.
inline TomographyScheme default_scheme(const DeviceConfig& cfg = {}) {
  auto pulse = [](GateInstruction g) {
    Circuit c;
    c.add(g);
    return c;
  };
  TomographyScheme s;
  s.experiments.push_back(make_experiment("direct-H", Circuit{}, Spin::H, cfg));
  s.experiments.push_back(make_experiment("direct-P", Circuit{}, Spin::P, cfg));
  s.experiments.push_back(
      make_experiment("Y90-H", pulse(GateInstruction::single(GateKind::Y90, 1)), Spin::H, cfg));
  s.experiments.push_back(
      make_experiment("Y90-P", pulse(GateInstruction::single(GateKind::Y90, 2)), Spin::P, cfg));
  s.experiments.push_back(make_experiment(
      "Ry-90-P", pulse(GateInstruction::rotation(GateKind::Ry, 2, -kPi / 2)), Spin::H, cfg));
  s.experiments.push_back(
      make_experiment("X90-P", pulse(GateInstruction::single(GateKind::X90, 2)), Spin::H, cfg));
  // Drop the duplicate reads so every coefficient comes from one experiment.
  std::array<bool, 15> taken{};
  for (auto& e : s.experiments) {
    std::vector<Extraction> kept;
    for (const auto& y : e.yields) {
      auto& t = taken[pauli_label_index(y.label)];
      if (!t) {
        t = true;
        kept.push_back(y);
      }
    }
    e.yields = std::move(kept);
  }
  s.validate(cfg);
  return s;
}

struct MeasureOptions {
  /// Run the readout pulses through the gate-noise model.
  bool noisy = false;
  NoiseSpec noise;
  DeviceConfig device;
  /// Standard deviation of additive Gaussian spectral-fit noise on each c_ij.
  double fit_sigma = 0.0;
  std::uint64_t seed = 0;
};

inline PauliCoefficients measure_coefficients(const DensityMatrix& rho,
                                              const TomographyScheme& scheme,
                                              const MeasureOptions& opts = {}) {
  if (rho.dim() != 4) throw ValidationError("tomography needs a two-qubit state");
  if (!(opts.fit_sigma >= 0.0)) throw ValidationError("fit_sigma must be non-negative");
  EngineConfig ec;
  ec.mode = opts.noisy ? ExecutionMode::GateNoise : ExecutionMode::Ideal;
  ec.device = opts.device;
  ec.noise = opts.noise;
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> fit(0.0, opts.fit_sigma > 0 ? opts.fit_sigma : 1.0);

  PauliCoefficients c;
  for (const auto& e : scheme.experiments) {
    const DensityMatrix after = apply_circuit(rho, e.readout_pulse, ec);
    const auto obs = nmr_observables(e.observed_spin);
    for (const auto& y : e.yields) {
      double v = y.sign * expectation(after, obs[static_cast<std::size_t>(y.observable)]);
      if (opts.fit_sigma > 0) v += fit(rng);
      c[y.label] = v;
    }
  }
  return c;
}

struct Reconstruction {
  DensityMatrix state = DensityMatrix::maximally_mixed(4);
  bool projected = false;
};

inline Reconstruction reconstruct(const PauliCoefficients& c) {
  for (double v : c.values) {
    if (!std::isfinite(v)) throw ValidationError("coefficients must be finite");
  }
  auto p = project_to_density(assemble_from_coefficients(c));
  return {p.state, p.projected};
}

// ---------------------------------------------------------------------------
// Sampled readout
// ---------------------------------------------------------------------------

/// Column-stochastic readout confusion matrix: p(k, j) is the probability
/// that string j is read as string k. Strings are ordered 00, 01, 10, 11.
class ConfusionMatrix {
 public:
  ConfusionMatrix() : p_(Eigen::Matrix4d::Identity()) {}
  explicit ConfusionMatrix(const Eigen::Matrix4d& p) : p_(p) {
    if ((p_.array() < 0.0).any() || !p_.allFinite()) {
      throw ValidationError("confusion matrix entries must be non-negative");
    }
    for (int j = 0; j < 4; ++j) {
      if (std::abs(p_.col(j).sum() - 1.0) > 1e-12) {
        throw ValidationError("confusion matrix columns must sum to 1");
      }
    }
  }

  /// Independent symmetric bit flips with probability e1 on qubit 1 and e2
  /// on qubit 2.
  static ConfusionMatrix from_flip_probabilities(double e1, double e2) {
    check_probability(e1, "readout flip");
    check_probability(e2, "readout flip");
    Eigen::Matrix2d a;
    a << 1 - e1, e1, e1, 1 - e1;
    Eigen::Matrix2d b;
    b << 1 - e2, e2, e2, 1 - e2;
    Eigen::Matrix4d p;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) p.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
    // Re-normalize columns exactly against rounding.
    for (int j = 0; j < 4; ++j) p.col(j) /= p.col(j).sum();
    return ConfusionMatrix(p);
  }

  const Eigen::Matrix4d& matrix() const { return p_; }
  double operator()(int k, int j) const { return p_(k, j); }

 private:
  Eigen::Matrix4d p_;
};

/// Readout error rates of the two superconducting qubits used for the REM
/// comparison.
inline constexpr double kReadoutFlipQ1 = 2.280e-2;
inline constexpr double kReadoutFlipQ2 = 3.660e-2;

inline ConfusionMatrix default_confusion() {
  return ConfusionMatrix::from_flip_probabilities(kReadoutFlipQ1, kReadoutFlipQ2);
}

using Counts = std::array<std::uint64_t, 4>;

/// Draws `shots` projective outcomes from diag(rho), then corrupts each label
/// through the confusion matrix column of the true outcome.
inline Counts sample_readout(const DensityMatrix& rho, std::uint64_t shots,
                             const ConfusionMatrix& confusion, std::uint64_t seed) {
  if (rho.dim() != 4) throw ValidationError("readout sampling needs a two-qubit state");
  if (shots < 1) throw ValidationError("shots must be at least 1");
  std::mt19937_64 rng(seed);
  const Eigen::VectorXd pop = rho.populations().cwiseMax(0.0);
  std::discrete_distribution<int> truth(pop.data(), pop.data() + 4);
  std::array<std::discrete_distribution<int>, 4> flip;
  for (int j = 0; j < 4; ++j) {
    const Eigen::Vector4d col = confusion.matrix().col(j);
    flip[static_cast<std::size_t>(j)] = std::discrete_distribution<int>(col.data(), col.data() + 4);
  }
  Counts counts{};
  for (std::uint64_t s = 0; s < shots; ++s) {
    const int t = truth(rng);
    ++counts[static_cast<std::size_t>(flip[static_cast<std::size_t>(t)](rng))];
  }
  return counts;
}

inline Eigen::Vector4d frequencies(const Counts& c) {
  const double n = static_cast<double>(c[0] + c[1] + c[2] + c[3]);
  if (n <= 0) throw ValidationError("empty counts");
  return Eigen::Vector4d(c[0] / n, c[1] / n, c[2] / n, c[3] / n);
}

}  // namespace nmrqc
