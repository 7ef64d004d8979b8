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

// Wire formats. Objects are emitted with a fixed key order so identical
// values always serialize to identical bytes.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nmrqc/experiments.hpp"
#include "nmrqc/gate_library.hpp"
#include "nmrqc/mitigation.hpp"
#include "nmrqc/noise_model.hpp"
#include "nmrqc/pps.hpp"
#include "nmrqc/quantum_core.hpp"
#include "nmrqc/tomography.hpp"

namespace nmrqc::io {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Field readers with path-qualified errors
// ---------------------------------------------------------------------------

inline std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ValidationError((path.empty() ? "body" : path) + ": must be an object");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(join(path, key) + ": required");
  return *it;
}

inline double read_number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ValidationError(where + ": must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ValidationError(where + ": must be finite");
  return d;
}

inline int read_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ValidationError(where + ": must be an integer");
  return v.get<int>();
}

inline std::string read_string(const Json& v, const std::string& where) {
  if (!v.is_string()) throw ValidationError(where + ": must be a string");
  return v.get<std::string>();
}

inline bool read_bool(const Json& v, const std::string& where) {
  if (!v.is_boolean()) throw ValidationError(where + ": must be a boolean");
  return v.get<bool>();
}

inline std::optional<double> opt_number(const Json& j, const std::string& key,
                                        const std::string& path) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return read_number(*it, join(path, key));
}

inline std::vector<double> read_numbers(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ValidationError(where + ": must be an array of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    out.push_back(read_number(v[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Circuits
// ---------------------------------------------------------------------------

inline Json to_json(const GateInstruction& g) {
  Json j;
  j["kind"] = std::string(to_string(g.kind));
  if (g.target != 0) j["target"] = g.target;
  if (g.angle) j["angle_rad"] = *g.angle;
  if (g.duration) j["duration_s"] = *g.duration;
  return j;
}

inline GateInstruction instruction_from_json(const Json& j, const std::string& path = "") {
  if (!j.is_object()) throw ValidationError((path.empty() ? "instruction" : path) + ": must be an object");
  GateInstruction g;
  const std::string kind = read_string(require(j, "kind", path), join(path, "kind"));
  try {
    g.kind = parse_gate_kind(kind);
  } catch (const ValidationError& e) {
    throw ValidationError(path.empty() ? e.what() : path + "." + e.what());
  }
  for (const auto& [key, _] : j.items()) {
    if (key != "kind" && key != "target" && key != "angle_rad" && key != "duration_s") {
      throw ValidationError(join(path, key) + ": unknown field");
    }
  }
  if (auto it = j.find("target"); it != j.end() && !it->is_null()) {
    g.target = read_int(*it, join(path, "target"));
  }
  g.angle = opt_number(j, "angle_rad", path);
  g.duration = opt_number(j, "duration_s", path);
  try {
    g.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(path.empty() ? e.what() : path + "." + e.what());
  }
  return g;
}

inline Json to_json(const Circuit& c) {
  Json j;
  j["name"] = c.name;
  Json arr = Json::array();
  for (const auto& g : c.instructions) arr.push_back(to_json(g));
  j["instructions"] = arr;
  return j;
}

inline Circuit circuit_from_json(const Json& j, const std::string& path = "") {
  if (!j.is_object()) throw ValidationError((path.empty() ? "circuit" : path) + ": must be an object");
  Circuit c;
  if (auto it = j.find("name"); it != j.end() && !it->is_null()) {
    c.name = read_string(*it, join(path, "name"));
  }
  const Json& arr = require(j, "instructions", path);
  if (!arr.is_array()) throw ValidationError(join(path, "instructions") + ": must be an array");
  for (std::size_t k = 0; k < arr.size(); ++k) {
    c.instructions.push_back(
        instruction_from_json(arr[k], join(path, "instructions[" + std::to_string(k) + "]")));
  }
  return c;
}

inline Json to_json(const PulseSchedule& s) {
  Json segs = Json::array();
  for (const auto& seg : s.segments) {
    Json js;
    js["kind"] = seg.kind == PulseSegment::Kind::RF ? "rf" : "free";
    js["duration_s"] = seg.duration;
    Json drives = Json::array();
    for (const auto& d : seg.drives) {
      drives.push_back(Json{{"target", d.target}, {"phase_rad", d.phase},
                            {"amplitude_rad_s", d.amplitude},
                            {"on_time_s", d.on_time > 0.0 ? d.on_time : seg.duration}});
    }
    js["drives"] = drives;
    segs.push_back(js);
  }
  Json j;
  j["total_duration_s"] = s.total_duration();
  j["segments"] = segs;
  return j;
}

// ---------------------------------------------------------------------------
// Noise and device
// ---------------------------------------------------------------------------

inline Json to_json(const NoiseSpec& n) {
  Json j;
  j["t1_s"] = n.t1;
  j["t2_star_s"] = n.t2_star;
  j["t_1q_s"] = n.t_1q;
  j["t_2q_s"] = n.t_2q;
  if (n.t1_p) j["t1_p_s"] = *n.t1_p;
  if (n.t2_star_p) j["t2_star_p_s"] = *n.t2_star_p;
  return j;
}

/// Missing fields keep their defaults.
inline NoiseSpec noise_from_json(const Json& j, const std::string& path = "noise") {
  if (!j.is_object()) throw ValidationError(path + ": must be an object");
  NoiseSpec n;
  for (const auto& [key, _] : j.items()) {
    if (key != "t1_s" && key != "t2_star_s" && key != "t_1q_s" && key != "t_2q_s" &&
        key != "t1_p_s" && key != "t2_star_p_s") {
      throw ValidationError(join(path, key) + ": unknown field");
    }
  }
  if (auto v = opt_number(j, "t1_s", path)) n.t1 = *v;
  if (auto v = opt_number(j, "t2_star_s", path)) n.t2_star = *v;
  if (auto v = opt_number(j, "t_1q_s", path)) n.t_1q = *v;
  if (auto v = opt_number(j, "t_2q_s", path)) n.t_2q = *v;
  n.t1_p = opt_number(j, "t1_p_s", path);
  n.t2_star_p = opt_number(j, "t2_star_p_s", path);
  try {
    n.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return n;
}

// ---------------------------------------------------------------------------
// States and coefficients
// ---------------------------------------------------------------------------

inline Json to_json(const ComplexMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array();
    Json ii = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  Json j;
  j["re"] = re;
  j["im"] = im;
  return j;
}

inline Json to_json(const DensityMatrix& rho) { return to_json(rho.matrix()); }

inline ComplexMatrix matrix_from_json(const Json& j, const std::string& path = "matrix") {
  const Json& re = require(j, "re", path);
  const Json& im = require(j, "im", path);
  if (!re.is_array() || !im.is_array() || re.size() != im.size() || re.empty()) {
    throw ValidationError(path + ": re and im must be equal-sized square arrays");
  }
  const auto n = static_cast<Eigen::Index>(re.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto ru = static_cast<std::size_t>(r);
    if (!re[ru].is_array() || !im[ru].is_array() || re[ru].size() != re.size() ||
        im[ru].size() != re.size()) {
      throw ValidationError(path + ": rows must have " + std::to_string(n) + " entries");
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto cu = static_cast<std::size_t>(c);
      const std::string where = path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
      m(r, c) = Complex(read_number(re[ru][cu], where), read_number(im[ru][cu], where));
    }
  }
  return m;
}

/// Parses and validates against the density-matrix invariants.
inline DensityMatrix density_from_json(const Json& j, const std::string& path = "density") {
  ComplexMatrix m = matrix_from_json(j, path);
  if (m.rows() != 2 && m.rows() != 4) throw ValidationError(path + ": must be 2x2 or 4x4");
  try {
    return DensityMatrix(std::move(m));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline Json to_json(const PauliCoefficients& c) {
  Json labels = Json::array();
  Json values = Json::array();
  for (std::size_t k = 0; k < kPauliLabels.size(); ++k) {
    labels.push_back(std::string(kPauliLabels[k]));
    values.push_back(c.values[k]);
  }
  Json j;
  j["labels"] = labels;
  j["values"] = values;
  return j;
}

inline PauliCoefficients coefficients_from_json(const Json& j,
                                                const std::string& path = "coefficients") {
  const auto values = read_numbers(require(j, "values", path), join(path, "values"));
  if (values.size() != 15) throw ValidationError(join(path, "values") + ": needs 15 entries");
  PauliCoefficients c;
  if (auto it = j.find("labels"); it != j.end()) {
    if (!it->is_array() || it->size() != 15) {
      throw ValidationError(join(path, "labels") + ": needs 15 entries");
    }
    for (std::size_t k = 0; k < 15; ++k) {
      c[read_string((*it)[k], join(path, "labels"))] = values[k];
    }
  } else {
    std::copy(values.begin(), values.end(), c.values.begin());
  }
  return c;
}

inline Json to_json(const ConfusionMatrix& p) {
  Json rows = Json::array();
  for (int r = 0; r < 4; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 4; ++c) row.push_back(p(r, c));
    rows.push_back(row);
  }
  return rows;
}

inline ConfusionMatrix confusion_from_json(const Json& j, const std::string& path = "confusion") {
  if (!j.is_array() || j.size() != 4) throw ValidationError(path + ": must be a 4x4 array");
  Eigen::Matrix4d p;
  for (int r = 0; r < 4; ++r) {
    const auto row = read_numbers(j[static_cast<std::size_t>(r)], path);
    if (row.size() != 4) throw ValidationError(path + ": must be a 4x4 array");
    for (int c = 0; c < 4; ++c) p(r, c) = row[static_cast<std::size_t>(c)];
  }
  try {
    return ConfusionMatrix(p);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline Json to_json(const Eigen::Vector4d& v) { return Json::array({v(0), v(1), v(2), v(3)}); }

// ---------------------------------------------------------------------------
// Experiment results
// ---------------------------------------------------------------------------

inline Json to_json(const PpsResult& p) {
  Json j;
  j["repetitions"] = p.repetitions;
  j["delay_s"] = p.delay;
  j["eta"] = p.eta;
  j["fidelity_vs_00"] = p.fidelity_vs_00;
  j["population_residual"] = p.population_residual;
  j["state"] = to_json(p.state);
  return j;
}

inline Json theta_json(const Theta& t) { return Json::array({t[0], t[1], t[2], t[3]}); }

inline Theta theta_from_json(const Json& j, const std::string& where) {
  const auto v = read_numbers(j, where);
  if (v.size() != 4) throw ValidationError(where + ": needs 4 angles");
  return {v[0], v[1], v[2], v[3]};
}

inline Json to_json(const VqeIteration& it) {
  Json j;
  j["iteration"] = it.index;
  j["theta"] = theta_json(it.theta);
  j["energy_raw"] = it.energy_raw;
  j["energy_mitigated"] = it.energy_mitigated ? Json(*it.energy_mitigated) : Json(nullptr);
  j["gradient"] = theta_json(it.gradient);
  j["grad_norm"] = it.grad_norm;
  j["alpha"] = it.alpha;
  return j;
}

inline VqeIteration iteration_from_json(const Json& j, const std::string& path = "iteration") {
  VqeIteration it;
  it.index = read_int(require(j, "iteration", path), join(path, "iteration"));
  it.theta = theta_from_json(require(j, "theta", path), join(path, "theta"));
  it.energy_raw = read_number(require(j, "energy_raw", path), join(path, "energy_raw"));
  it.energy_mitigated = opt_number(j, "energy_mitigated", path);
  it.gradient = theta_from_json(require(j, "gradient", path), join(path, "gradient"));
  it.grad_norm = read_number(require(j, "grad_norm", path), join(path, "grad_norm"));
  it.alpha = read_number(require(j, "alpha", path), join(path, "alpha"));
  return it;
}

inline Json to_json(const GeometricPhaseRun& g) {
  Json gammas = Json::array();
  for (double v : g.measured_gamma) gammas.push_back(rad_to_deg(v));
  Json j;
  j["omega_deg"] = rad_to_deg(g.omega);
  j["r"] = g.r;
  j["theta_rad"] = g.theta;
  j["phi1_rad"] = g.phi1;
  j["phi2_rad"] = g.phi2;
  j["repetitions"] = g.repetitions;
  j["gamma_deg"] = gammas;
  j["gamma_mean_deg"] = rad_to_deg(g.mean);
  j["gamma_std_deg"] = rad_to_deg(g.std);
  j["gamma_theory_deg"] = rad_to_deg(g.theory);
  j["visibility"] = g.visibility;
  return j;
}

}  // namespace nmrqc::io
