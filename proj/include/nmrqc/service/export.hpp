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

#include <cstdio>
#include <string>

#include "nmrqc/service/records.hpp"

namespace nmrqc {

namespace detail {

inline std::string csv_number(const io::Json& v) {
  if (v.is_null()) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
  return buf;
}

}  // namespace detail

/// CSV view of a finished record. VQE records give one row per iteration;
/// geometric records give one row per (omega, r) point.
inline std::string export_csv(const ExperimentRecord& r) {
  using detail::csv_number;
  if (!r.result.is_object()) {
    throw ConflictError("record " + r.id + " has no result to export");
  }
  std::string out;
  if (r.kind == RecordKind::Vqe) {
    out = "iteration,energy_raw,energy_mitigated,grad_norm,alpha\n";
    for (const auto& it : r.result.at("iterations")) {
      out += std::to_string(it.at("iteration").get<int>()) + "," + csv_number(it.at("energy_raw")) +
             "," + csv_number(it.at("energy_mitigated")) + "," + csv_number(it.at("grad_norm")) +
             "," + csv_number(it.at("alpha")) + "\n";
    }
    return out;
  }
  if (r.kind == RecordKind::Geometric) {
    out = "omega_deg,r,gamma_mean_deg,gamma_std_deg,gamma_theory_deg,visibility\n";
    for (const auto& row : r.result.at("rows")) {
      out += csv_number(row.at("omega_deg")) + "," + csv_number(row.at("r")) + "," +
             csv_number(row.at("gamma_mean_deg")) + "," + csv_number(row.at("gamma_std_deg")) +
             "," + csv_number(row.at("gamma_theory_deg")) + "," + csv_number(row.at("visibility")) +
             "\n";
    }
    return out;
  }
  throw ConflictError("csv export supports vqe and geometric records, not " +
                      std::string(to_string(r.kind)));
}

}  // namespace nmrqc
