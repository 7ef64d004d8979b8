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

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nmrqc/noise_model.hpp"
#include "nmrqc/service/json_io.hpp"

namespace nmrqc {

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Request is well formed but not allowed in the record's current state.
class ConflictError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RecordKind { Circuit, Vqe, Geometric, PpsTune };
enum class RecordStatus { Queued, Running, Done, Failed };

inline std::string_view to_string(RecordKind k) {
  switch (k) {
    case RecordKind::Circuit: return "circuit";
    case RecordKind::Vqe: return "vqe";
    case RecordKind::Geometric: return "geometric";
    case RecordKind::PpsTune: return "pps-tune";
  }
  return "circuit";
}

inline RecordKind parse_record_kind(std::string_view s) {
  if (s == "circuit") return RecordKind::Circuit;
  if (s == "vqe") return RecordKind::Vqe;
  if (s == "geometric") return RecordKind::Geometric;
  if (s == "pps-tune") return RecordKind::PpsTune;
  throw ValidationError("kind: expected circuit, vqe, geometric or pps-tune, got '" +
                        std::string(s) + "'");
}

inline std::string_view to_string(RecordStatus s) {
  switch (s) {
    case RecordStatus::Queued: return "queued";
    case RecordStatus::Running: return "running";
    case RecordStatus::Done: return "done";
    case RecordStatus::Failed: return "failed";
  }
  return "queued";
}

inline RecordStatus parse_record_status(std::string_view s) {
  if (s == "queued") return RecordStatus::Queued;
  if (s == "running") return RecordStatus::Running;
  if (s == "done") return RecordStatus::Done;
  if (s == "failed") return RecordStatus::Failed;
  throw ValidationError("status: expected queued, running, done or failed, got '" +
                        std::string(s) + "'");
}

/// UTC time with millisecond precision, e.g. 2026-01-31T12:00:00.125Z.
inline std::string iso_timestamp(std::chrono::system_clock::time_point tp =
                                     std::chrono::system_clock::now()) {
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(tp.time_since_epoch()).count();
  const std::time_t secs = static_cast<std::time_t>(ms / 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms % 1000));
  return out;
}

struct ExperimentRecord {
  std::string id;
  std::string created_at;
  std::uint64_t seq = 0;
  RecordKind kind = RecordKind::Circuit;
  RecordStatus status = RecordStatus::Queued;
  ExecutionMode mode = ExecutionMode::Ideal;
  NoiseSpec noise;
  std::uint64_t seed = 0;
  io::Json params = io::Json::object();
  io::Json result = nullptr;
  std::optional<std::string> error;
  io::Json log = io::Json::array();
  std::optional<std::string> started_at;
  std::optional<std::string> finished_at;

  /// Simulate tasks run ideal unitaries and never touch the device.
  bool device_task() const { return mode != ExecutionMode::Ideal; }
};

inline io::Json to_json(const ExperimentRecord& r) {
  io::Json j;
  j["id"] = r.id;
  j["created_at"] = r.created_at;
  j["seq"] = r.seq;
  j["kind"] = std::string(to_string(r.kind));
  j["status"] = std::string(to_string(r.status));
  j["mode"] = std::string(to_string(r.mode));
  j["noise"] = io::to_json(r.noise);
  j["seed"] = r.seed;
  j["params"] = r.params;
  j["result"] = r.result;
  j["error"] = r.error ? io::Json(*r.error) : io::Json(nullptr);
  j["log"] = r.log;
  j["started_at"] = r.started_at ? io::Json(*r.started_at) : io::Json(nullptr);
  j["finished_at"] = r.finished_at ? io::Json(*r.finished_at) : io::Json(nullptr);
  return j;
}

namespace detail {

inline std::optional<std::string> opt_string(const io::Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return io::read_string(*it, key);
}

// Every density matrix in a result must satisfy the state invariants.
inline void check_densities(const io::Json& j, const std::string& path) {
  if (j.is_object()) {
    if (j.contains("re") && j.contains("im")) {
      io::density_from_json(j, path);
      return;
    }
    for (const auto& [k, v] : j.items()) check_densities(v, path + "." + k);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      check_densities(j[i], path + "[" + std::to_string(i) + "]");
    }
  }
}

}  // namespace detail

inline ExperimentRecord record_from_json(const io::Json& j) {
  ExperimentRecord r;
  r.id = io::read_string(io::require(j, "id", ""), "id");
  r.created_at = io::read_string(io::require(j, "created_at", ""), "created_at");
  r.seq = io::require(j, "seq", "").get<std::uint64_t>();
  r.kind = parse_record_kind(io::read_string(io::require(j, "kind", ""), "kind"));
  r.status = parse_record_status(io::read_string(io::require(j, "status", ""), "status"));
  r.mode = parse_execution_mode(io::read_string(io::require(j, "mode", ""), "mode"));
  r.noise = io::noise_from_json(io::require(j, "noise", ""));
  r.seed = io::require(j, "seed", "").get<std::uint64_t>();
  r.params = j.value("params", io::Json::object());
  r.result = j.value("result", io::Json(nullptr));
  r.error = detail::opt_string(j, "error");
  r.log = j.value("log", io::Json::array());
  r.started_at = detail::opt_string(j, "started_at");
  r.finished_at = detail::opt_string(j, "finished_at");
  detail::check_densities(r.result, "result");
  return r;
}

}  // namespace nmrqc
