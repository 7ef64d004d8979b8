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

// The emulated instrument behind the API. Device-mode tasks run one at a
// time from a FIFO; ideal-mode (simulate) tasks run on a separate lane. VQE
// records run on their own session thread, driven by control actions.

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "nmrqc/experiments.hpp"
#include "nmrqc/service/json_io.hpp"
#include "nmrqc/service/records.hpp"
#include "nmrqc/service/store.hpp"

namespace nmrqc {

namespace detail {

inline void check_keys(const io::Json& j, std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ValidationError(key + ": unknown field");
  }
}

template <typename T, typename F>
T field_or(const io::Json& j, const char* key, T fallback, F read) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return read(*it, std::string(key));
}

}  // namespace detail

/// Validates a submission and normalizes it into a record draft with every
/// parameter spelled out.
inline ExperimentRecord draft_to_record(const io::Json& draft) {
  if (!draft.is_object()) throw ValidationError("body: must be a JSON object");
  detail::check_keys(draft, {"kind", "mode", "noise", "seed", "circuit", "mitigation",
                             "readout_noise", "fit_sigma", "theta0_rad", "theta0_deg", "alpha",
                             "max_iters", "tol", "shots", "omegas_deg", "rs", "repetitions",
                             "n_min", "n_max", "t_min_s", "t_max_s", "t_steps"});
  ExperimentRecord r;
  r.kind = parse_record_kind(detail::field_or<std::string>(draft, "kind", "circuit", io::read_string));
  r.mode = parse_execution_mode(detail::field_or<std::string>(draft, "mode", "ideal", io::read_string));
  if (auto it = draft.find("noise"); it != draft.end() && !it->is_null()) {
    r.noise = io::noise_from_json(*it);
  }
  if (auto it = draft.find("seed"); it != draft.end() && !it->is_null()) {
    if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<long long>() >= 0)) {
      throw ValidationError("seed: must be a non-negative integer");
    }
    r.seed = it->get<std::uint64_t>();
  } else {
    r.seed = std::random_device{}();
  }

  auto num = [&](const char* key, double fallback) {
    return detail::field_or<double>(draft, key, fallback, io::read_number);
  };
  auto integer = [&](const char* key, int fallback) {
    return detail::field_or<int>(draft, key, fallback, io::read_int);
  };
  const double fit_sigma = num("fit_sigma", 0.0);
  if (fit_sigma < 0) throw ValidationError("fit_sigma: must be >= 0");
  const bool readout_noise =
      detail::field_or<bool>(draft, "readout_noise", false, io::read_bool);
  const std::string mitigation = std::string(to_string(parse_mitigation(
      detail::field_or<std::string>(draft, "mitigation", "none", io::read_string))));

  io::Json p = io::Json::object();
  switch (r.kind) {
    case RecordKind::Circuit: {
      const Circuit c = io::circuit_from_json(io::require(draft, "circuit", ""), "circuit");
      if (mitigation == "REM") throw ValidationError("mitigation: REM applies to vqe only");
      p["circuit"] = io::to_json(c);
      p["mitigation"] = mitigation;
      p["readout_noise"] = readout_noise;
      p["fit_sigma"] = fit_sigma;
      break;
    }
    case RecordKind::Vqe: {
      Theta t0 = default_initial_theta();
      if (draft.contains("theta0_rad") && draft.contains("theta0_deg")) {
        throw ValidationError("theta0_deg: give theta0_rad or theta0_deg, not both");
      }
      if (auto it = draft.find("theta0_rad"); it != draft.end()) {
        t0 = io::theta_from_json(*it, "theta0_rad");
      } else if (auto it2 = draft.find("theta0_deg"); it2 != draft.end()) {
        t0 = io::theta_from_json(*it2, "theta0_deg");
        for (auto& v : t0) v = deg_to_rad(v);
      }
      VqeOptions o;
      o.theta0 = t0;
      o.alpha = num("alpha", 0.25);
      o.max_iters = integer("max_iters", 100);
      o.tol = num("tol", 1e-4);
      const int shots = integer("shots", 8192);
      if (shots < 1) throw ValidationError("shots: must be >= 1");
      o.shots = static_cast<std::uint64_t>(shots);
      o.validate();
      p["theta0_rad"] = io::theta_json(o.theta0);
      p["alpha"] = o.alpha;
      p["max_iters"] = o.max_iters;
      p["tol"] = o.tol;
      p["mitigation"] = mitigation;
      p["shots"] = shots;
      p["readout_noise"] = readout_noise;
      p["fit_sigma"] = fit_sigma;
      break;
    }
    case RecordKind::Geometric: {
      std::vector<double> omegas = {180.0, 240.0};
      std::vector<double> rs = sweep_purities();
      if (auto it = draft.find("omegas_deg"); it != draft.end()) {
        omegas = io::read_numbers(*it, "omegas_deg");
      }
      if (auto it = draft.find("rs"); it != draft.end()) rs = io::read_numbers(*it, "rs");
      for (std::size_t k = 0; k < rs.size(); ++k) {
        if (rs[k] < 0 || rs[k] > 1) {
          throw ValidationError("rs[" + std::to_string(k) + "]: must lie in [0, 1]");
        }
      }
      const int reps = integer("repetitions", 5);
      if (reps < 1) throw ValidationError("repetitions: must be >= 1");
      p["omegas_deg"] = omegas;
      p["rs"] = rs;
      p["repetitions"] = reps;
      p["fit_sigma"] = fit_sigma;
      break;
    }
    case RecordKind::PpsTune: {
      PpsTuneRange range;
      range.n_min = integer("n_min", range.n_min);
      range.n_max = integer("n_max", range.n_max);
      range.t_min = num("t_min_s", range.t_min);
      range.t_max = num("t_max_s", range.t_max);
      range.t_steps = integer("t_steps", range.t_steps);
      range.validate();
      p["n_min"] = range.n_min;
      p["n_max"] = range.n_max;
      p["t_min_s"] = range.t_min;
      p["t_max_s"] = range.t_max;
      p["t_steps"] = range.t_steps;
      break;
    }
  }
  r.params = p;
  return r;
}

inline VqeOptions vqe_options_from_record(const ExperimentRecord& r) {
  const auto& p = r.params;
  VqeOptions o;
  o.theta0 = io::theta_from_json(p.at("theta0_rad"), "theta0_rad");
  o.alpha = p.at("alpha").get<double>();
  o.max_iters = p.at("max_iters").get<int>();
  o.tol = p.at("tol").get<double>();
  o.mitigation = parse_mitigation(p.at("mitigation").get<std::string>());
  o.shots = p.at("shots").get<std::uint64_t>();
  o.readout_noise = p.value("readout_noise", false);
  o.fit_sigma = p.value("fit_sigma", 0.0);
  o.seed = r.seed;
  o.engine.mode = r.mode;
  o.engine.noise = r.noise;
  return o;
}

inline io::Json vqe_result_json(const VqeRun& run, bool final) {
  io::Json its = io::Json::array();
  for (const auto& it : run.iterations) its.push_back(io::to_json(it));
  io::Json j;
  j["theta"] = io::theta_json(run.theta);
  j["learning_rate"] = run.learning_rate;
  j["converged"] = run.converged;
  j["alpha_halved"] = run.alpha_halved;
  j["iterations"] = its;
  if (final && !run.iterations.empty()) {
    j["final_energy"] = run.final_energy();
    j["final_energy_raw"] = run.iterations.back().energy_raw;
  }
  return j;
}

/// Executes a non-VQE record and returns its result payload.
inline io::Json execute_record(const ExperimentRecord& r) {
  EngineConfig ec;
  ec.mode = r.mode;
  ec.noise = r.noise;
  ec.validate();
  const auto& p = r.params;
  switch (r.kind) {
    case RecordKind::Circuit: {
      const Circuit c = io::circuit_from_json(p.at("circuit"), "circuit");
      EngineConfig ideal = ec;
      ideal.mode = ExecutionMode::Ideal;
      const DensityMatrix sim = apply_circuit(DensityMatrix::basis_state(0), c, ideal);
      io::Json out;
      out["simulated"] = {{"density", io::to_json(sim)},
                          {"coefficients", io::to_json(pauli_basis_coefficients(sim))}};
      out["schedule"] = io::to_json(compile_to_pulses(c, ec.device));
      if (!ec.noisy()) return out;

      const PpsResult pps = device_pps(ec);
      const DensityMatrix after = apply_circuit(pps.normalized(), c, ec);
      MeasureOptions mo;
      mo.noisy = p.value("readout_noise", false);
      mo.noise = ec.noise;
      mo.device = ec.device;
      mo.fit_sigma = p.value("fit_sigma", 0.0);
      mo.seed = r.seed;
      const PauliCoefficients coeffs = measure_coefficients(after, default_scheme(ec.device), mo);
      const Reconstruction rec = reconstruct(coeffs);
      out["reconstructed"] = {{"density", io::to_json(rec.state)},
                              {"coefficients", io::to_json(coeffs)},
                              {"projected", rec.projected}};
      out["fidelity"] = fidelity(rec.state, sim);
      out["pps"] = io::to_json(pps);
      if (p.value("mitigation", std::string("none")) == "CEM") {
        const auto m = mitigate_state(rec.state, cnot_noise_channel(ec.noise));
        out["mitigated"] = {{"density", io::to_json(m.mitigated)},
                            {"conditioning", m.conditioning},
                            {"projection_fired", m.projection_fired},
                            {"fidelity", fidelity(m.mitigated, sim)}};
      }
      return out;
    }
    case RecordKind::Geometric: {
      GeometricOptions go;
      go.engine = ec;
      go.repetitions = p.at("repetitions").get<int>();
      go.fit_sigma = p.value("fit_sigma", 0.0);
      go.seed = r.seed;
      std::vector<double> omegas;
      for (double d : p.at("omegas_deg").get<std::vector<double>>()) omegas.push_back(deg_to_rad(d));
      const auto rows = run_geometric_sweep(omegas, p.at("rs").get<std::vector<double>>(), go);
      io::Json arr = io::Json::array();
      for (const auto& row : rows) arr.push_back(io::to_json(row));
      return io::Json{{"rows", arr}};
    }
    case RecordKind::PpsTune: {
      PpsTuneRange range;
      range.n_min = p.at("n_min").get<int>();
      range.n_max = p.at("n_max").get<int>();
      range.t_min = p.at("t_min_s").get<double>();
      range.t_max = p.at("t_max_s").get<double>();
      range.t_steps = p.at("t_steps").get<int>();
      const auto t = tune_pps(ec.device, range);
      return io::Json{{"n", t.n}, {"t_s", t.t}, {"pps", io::to_json(t.result)}};
    }
    case RecordKind::Vqe:
      break;
  }
  throw EngineError("vqe records run through vqe_control");
}

class DeviceService {
 public:
  explicit DeviceService(std::filesystem::path store_root) : store_(std::move(store_root)) {
    recover();
    device_lane_ = std::thread([this] { lane_loop(device_queue_); });
    simulate_lane_ = std::thread([this] { lane_loop(simulate_queue_); });
  }

  DeviceService(const DeviceService&) = delete;
  DeviceService& operator=(const DeviceService&) = delete;

  ~DeviceService() {
    {
      std::lock_guard lock(mu_);
      stopping_ = true;
    }
    queue_cv_.notify_all();
    std::map<std::string, std::shared_ptr<VqeControl>> sessions;
    {
      std::lock_guard lock(mu_);
      sessions = sessions_;
    }
    for (auto& [id, ctl] : sessions) {
      {
        std::lock_guard l(ctl->m);
        ctl->stop = true;
      }
      ctl->cv.notify_all();
    }
    for (auto& [id, ctl] : sessions) {
      if (ctl->thread.joinable()) ctl->thread.join();
    }
    if (device_lane_.joinable()) device_lane_.join();
    if (simulate_lane_.joinable()) simulate_lane_.join();
  }

  RecordStore& store() { return store_; }

  /// Persists a validated draft as queued. Non-VQE records are queued for
  /// execution at once; VQE records wait for a start action.
  std::string submit(const io::Json& draft) {
    ExperimentRecord r = store_.create(draft_to_record(draft));
    if (r.kind != RecordKind::Vqe) enqueue(r);
    return r.id;
  }

  ExperimentRecord get(const std::string& id) const { return store_.get(id); }

  std::vector<ExperimentRecord> list(const RecordFilter& f = {}) const { return store_.list(f); }

  /// Blocks until the record is done or failed.
  ExperimentRecord wait(const std::string& id,
                        std::chrono::milliseconds timeout = std::chrono::minutes(10)) {
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    std::unique_lock lock(mu_);
    while (true) {
      ExperimentRecord r = store_.get(id);
      const bool terminal = r.status == RecordStatus::Done || r.status == RecordStatus::Failed;
      if (terminal && !session_active(id)) return r;
      if (std::chrono::steady_clock::now() >= deadline) {
        throw EngineError("timed out waiting for record " + id);
      }
      done_cv_.wait_for(lock, std::chrono::milliseconds(50));
    }
  }

  /// Ids of device-mode tasks in the order they completed.
  std::vector<std::string> device_completion_order() const {
    std::lock_guard lock(mu_);
    return device_completions_;
  }

  /// Handles {"action": "start" | "pause" | "resume" | "set_learning_rate", "alpha": x}.
  io::Json vqe_control(const std::string& id, const io::Json& body) {
    if (!body.is_object()) throw ValidationError("body: must be a JSON object");
    const std::string action = io::read_string(io::require(body, "action", ""), "action");
    detail::check_keys(body, {"action", "alpha"});
    ExperimentRecord r = store_.get(id);
    if (r.kind != RecordKind::Vqe) throw ConflictError("record " + id + " is not a vqe run");

    if (action == "start") return start_vqe(r);
    if (action != "pause" && action != "resume" && action != "set_learning_rate") {
      throw ValidationError("action: expected start, pause, resume or set_learning_rate");
    }
    std::optional<double> alpha;
    if (action == "set_learning_rate") {
      alpha = io::read_number(io::require(body, "alpha", ""), "alpha");
      if (!(*alpha > 0.0)) throw ValidationError("alpha: must be > 0");
    }
    auto ctl = session(id);
    if (!ctl) {
      if (action == "set_learning_rate" && r.status == RecordStatus::Queued) {
        r.params["alpha"] = *alpha;
        r.log.push_back(log_entry("set_learning_rate", 0, alpha));
        store_.put(r);
        return ack(r.id, r.status, "idle");
      }
      throw ConflictError("cannot " + action + ": run is not active (status " +
                          std::string(to_string(r.status)) + ")");
    }
    std::lock_guard l(ctl->m);
    if (ctl->finished) throw ConflictError("cannot " + action + ": run has finished");
    const int next = static_cast<int>(ctl->events.size());
    if (action == "pause") {
      if (ctl->paused) throw ConflictError("cannot pause: run is already paused");
      ctl->paused = true;
      ctl->record.log.push_back(log_entry("pause", next));
    } else if (action == "resume") {
      if (!ctl->paused) throw ConflictError("cannot resume: run is not paused");
      ctl->paused = false;
      ctl->record.log.push_back(log_entry("resume", next));
    } else {
      ctl->pending_alpha = alpha;
      ctl->record.log.push_back(log_entry("set_learning_rate", next, alpha));
    }
    store_.put(ctl->record);
    ctl->cv.notify_all();
    return ack(id, ctl->record.status, state_of(*ctl));
  }

  /// Iterations with index > after. Waits up to `timeout` for at least one
  /// when none are available and the run is still going.
  io::Json events(const std::string& id, long after, std::chrono::milliseconds timeout) {
    ExperimentRecord r = store_.get(id);
    if (r.kind != RecordKind::Vqe) throw ConflictError("record " + id + " is not a vqe run");
    auto ctl = session(id);
    io::Json evs = io::Json::array();
    std::string state = "idle";
    RecordStatus status = r.status;
    bool finished = r.status == RecordStatus::Done || r.status == RecordStatus::Failed;
    if (ctl) {
      std::unique_lock l(ctl->m);
      auto ready = [&] {
        return ctl->finished || static_cast<long>(ctl->events.size()) > after + 1;
      };
      ctl->cv.wait_for(l, timeout, ready);
      for (std::size_t k = static_cast<std::size_t>(std::max(0L, after + 1));
           k < ctl->events.size(); ++k) {
        evs.push_back(ctl->events[k]);
      }
      state = state_of(*ctl);
      status = ctl->record.status;
      finished = ctl->finished;
    } else if (r.result.is_object() && r.result.contains("iterations")) {
      for (const auto& e : r.result["iterations"]) {
        if (e["iteration"].get<long>() > after) evs.push_back(e);
      }
      if (finished) state = "finished";
    }
    io::Json j;
    j["id"] = id;
    j["status"] = std::string(to_string(status));
    j["control_state"] = state;
    j["finished"] = finished;
    j["events"] = evs;
    return j;
  }

 private:
  struct VqeControl {
    std::mutex m;
    std::condition_variable cv;
    bool paused = false;
    bool stop = false;
    bool finished = false;
    std::optional<double> pending_alpha;
    std::vector<io::Json> events;
    ExperimentRecord record;
    std::thread thread;
  };

  static std::string state_of(const VqeControl& c) {
    if (c.finished) return "finished";
    return c.paused ? "paused" : "running";
  }

  static io::Json ack(const std::string& id, RecordStatus s, const std::string& state) {
    return io::Json{{"id", id}, {"status", std::string(to_string(s))}, {"control_state", state}};
  }

  static io::Json log_entry(const std::string& action, int at_iteration,
                            std::optional<double> alpha = std::nullopt) {
    io::Json j;
    j["time"] = iso_timestamp();
    j["action"] = action;
    j["at_iteration"] = at_iteration;
    if (alpha) j["alpha"] = *alpha;
    return j;
  }

  bool session_active(const std::string& id) const {
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return false;
    std::lock_guard l(it->second->m);
    return !it->second->finished;
  }

  std::shared_ptr<VqeControl> session(const std::string& id) {
    std::lock_guard lock(mu_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  // Restart semantics: interrupted VQE runs fail, other running tasks go
  // back to the queue, and every queued task is re-enqueued in order.
  void recover() {
    auto all = store_.list();
    std::reverse(all.begin(), all.end());  // oldest first
    for (auto& r : all) {
      if (r.status == RecordStatus::Running) {
        if (r.kind == RecordKind::Vqe) {
          r.status = RecordStatus::Failed;
          r.error = "interrupted by restart";
          r.finished_at = iso_timestamp();
        } else {
          r.status = RecordStatus::Queued;
          r.started_at.reset();
          r.log.push_back(log_entry("requeued after restart", 0));
        }
        store_.put(r);
      }
      if (r.status == RecordStatus::Queued && r.kind != RecordKind::Vqe) enqueue(r);
    }
  }

  void enqueue(const ExperimentRecord& r) {
    {
      std::lock_guard lock(mu_);
      (r.device_task() ? device_queue_ : simulate_queue_).push_back(r.id);
    }
    queue_cv_.notify_all();
  }

  void lane_loop(std::deque<std::string>& queue) {
    while (true) {
      std::string id;
      {
        std::unique_lock lock(mu_);
        queue_cv_.wait(lock, [&] { return stopping_ || !queue.empty(); });
        if (stopping_) return;
        id = queue.front();
        queue.pop_front();
      }
      run_task(id);
    }
  }

  void run_task(const std::string& id) {
    ExperimentRecord r = store_.get(id);
    if (r.status != RecordStatus::Queued) return;
    std::unique_lock<std::mutex> device;
    if (r.device_task()) device = std::unique_lock(device_mu_);
    r.status = RecordStatus::Running;
    r.started_at = iso_timestamp();
    store_.put(r);
    try {
      r.result = execute_record(r);
      r.status = RecordStatus::Done;
    } catch (const std::exception& e) {
      r.status = RecordStatus::Failed;
      r.error = e.what();
    }
    r.finished_at = iso_timestamp();
    store_.put(r);
    {
      std::lock_guard lock(mu_);
      if (r.device_task()) device_completions_.push_back(r.id);
    }
    done_cv_.notify_all();
  }

  io::Json start_vqe(ExperimentRecord r) {
    std::lock_guard lock(mu_);
    if (sessions_.count(r.id) != 0 || r.status != RecordStatus::Queued) {
      throw ConflictError("cannot start: run status is " + std::string(to_string(r.status)));
    }
    auto opts = vqe_options_from_record(r);
    auto ctl = std::make_shared<VqeControl>();
    r.status = RecordStatus::Running;
    r.started_at = iso_timestamp();
    r.log.push_back(log_entry("start", 0));
    r.result = vqe_result_json(VqeRun{opts.theta0, opts.alpha, opts.engine.mode,
                                      opts.mitigation, {}, false, false, {}},
                               false);
    store_.put(r);
    ctl->record = r;
    sessions_[r.id] = ctl;
    ctl->thread = std::thread([this, ctl, opts] { vqe_loop(ctl, opts); });
    return ack(r.id, r.status, "running");
  }

  void vqe_loop(std::shared_ptr<VqeControl> ctl, VqeOptions opts) {
    std::unique_lock<std::mutex> device;
    if (opts.engine.noisy()) device = std::unique_lock(device_mu_);
    bool stopped = false;
    try {
      VqeSession session(opts);
      while (true) {
        {
          std::unique_lock l(ctl->m);
          ctl->cv.wait(l, [&] { return !ctl->paused || ctl->stop; });
          if (ctl->stop) {
            stopped = true;
            break;
          }
          if (ctl->pending_alpha) {
            session.set_learning_rate(*ctl->pending_alpha);
            ctl->pending_alpha.reset();
          }
        }
        const bool more = session.step();
        {
          std::lock_guard l(ctl->m);
          const auto& its = session.run().iterations;
          for (std::size_t k = ctl->events.size(); k < its.size(); ++k) {
            ctl->events.push_back(io::to_json(its[k]));
          }
          ctl->record.result = vqe_result_json(session.run(), false);
          store_.put(ctl->record);
        }
        ctl->cv.notify_all();
        if (!more) break;
      }
      std::lock_guard l(ctl->m);
      if (stopped) {
        ctl->record.status = RecordStatus::Failed;
        ctl->record.error = "interrupted by service shutdown";
      } else {
        io::Json result = vqe_result_json(session.run(), true);
        io::Json replay = io::Json::array();
        EngineConfig base = opts.engine;
        for (const auto& row : replay_with_modes(session.run(), base)) {
          replay.push_back(io::Json{{"iteration", row.iteration}, {"ideal", row.ideal},
                                    {"gate_noise", row.gate_noise}});
        }
        result["replay"] = replay;
        ctl->record.result = result;
        ctl->record.status = RecordStatus::Done;
        for (const auto& line : session.run().log) {
          ctl->record.log.push_back(io::Json{{"time", iso_timestamp()}, {"action", "note"},
                                             {"message", line}});
        }
      }
    } catch (const std::exception& e) {
      std::lock_guard l(ctl->m);
      ctl->record.status = RecordStatus::Failed;
      ctl->record.error = e.what();
    }
    {
      std::lock_guard l(ctl->m);
      ctl->record.finished_at = iso_timestamp();
      store_.put(ctl->record);
      ctl->finished = true;
    }
    ctl->cv.notify_all();
    {
      std::lock_guard lock(mu_);
      if (opts.engine.noisy()) device_completions_.push_back(ctl->record.id);
    }
    done_cv_.notify_all();
  }

  RecordStore store_;
  mutable std::mutex mu_;
  std::condition_variable queue_cv_;
  std::condition_variable done_cv_;
  std::deque<std::string> device_queue_;
  std::deque<std::string> simulate_queue_;
  std::vector<std::string> device_completions_;
  std::map<std::string, std::shared_ptr<VqeControl>> sessions_;
  std::mutex device_mu_;
  bool stopping_ = false;
  std::thread device_lane_;
  std::thread simulate_lane_;
};

}  // namespace nmrqc
