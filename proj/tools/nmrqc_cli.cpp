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

// nmrqc: command-line front end to the emulated device.
//
// Exit codes: 0 success, 2 validation error, 1 engine error or failed task.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nmrqc/service/device_service.hpp"
#include "nmrqc/service/export.hpp"
#include "nmrqc/service/http_api.hpp"

namespace {

using nmrqc::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitEngine = 1;
constexpr int kExitValidation = 2;

struct Globals {
  std::optional<double> t1, t2star, t1q, t2q;
  std::optional<std::string> mode;
  std::optional<std::uint64_t> seed;
  std::string store;
};

Json read_json_file(const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw nmrqc::ValidationError("circuit: cannot open '" + path + "'");
    ss << in.rdbuf();
  }
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw nmrqc::ValidationError("circuit: invalid JSON in '" + path + "': " + e.what());
  }
}

Json base_draft(const Globals& g, const std::string& kind, const std::string& default_mode) {
  Json d;
  d["kind"] = kind;
  d["mode"] = g.mode.value_or(default_mode);
  if (g.t1 || g.t2star || g.t1q || g.t2q) {
    nmrqc::NoiseSpec n;
    n.t1 = g.t1.value_or(n.t1);
    n.t2_star = g.t2star.value_or(n.t2_star);
    n.t_1q = g.t1q.value_or(n.t_1q);
    n.t_2q = g.t2q.value_or(n.t_2q);
    d["noise"] = nmrqc::io::to_json(n);
  }
  if (g.seed) d["seed"] = *g.seed;
  return d;
}

int finish(const nmrqc::ExperimentRecord& r) {
  std::cout << nmrqc::to_json(r).dump(2) << "\n";
  if (r.status == nmrqc::RecordStatus::Failed) {
    std::cerr << "error: task " << r.id << " failed: " << r.error.value_or("unknown") << "\n";
    return kExitEngine;
  }
  return kExitOk;
}

int submit_and_wait(const Globals& g, const Json& draft) {
  nmrqc::DeviceService svc(g.store);
  const std::string id = svc.submit(draft);
  return finish(svc.wait(id, std::chrono::hours(24)));
}

nmrqc::HttpApi* g_api = nullptr;

void on_signal(int) {
  if (g_api) g_api->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit NMR quantum computer emulator"};
  app.require_subcommand(1);
  Globals g;
  const char* env_store = std::getenv("QPU_STORE");
  g.store = env_store && *env_store ? env_store : "./qpu-store";

  app.add_option("--noise-t1", g.t1, "T1 relaxation time (s)");
  app.add_option("--noise-t2star", g.t2star, "T2* dephasing time (s)");
  app.add_option("--t1q", g.t1q, "single-qubit gate time (s)");
  app.add_option("--t2q", g.t2q, "two-qubit gate time (s)");
  app.add_option("--mode", g.mode, "ideal, gate-noise or pulse");
  app.add_option("--seed", g.seed, "RNG seed stored with the record");
  app.add_option("--store", g.store, "record store directory (env QPU_STORE)");

  std::string circuit_path;
  std::string mitigation = "none";
  bool readout_noise = false;
  auto* run = app.add_subcommand("run", "run a circuit on the emulated device");
  run->add_option("circuit", circuit_path, "circuit JSON file, or - for stdin")->required();
  run->add_option("--mitigation", mitigation, "none or CEM");
  run->add_flag("--readout-noise", readout_noise, "sample tomography readout noise");

  auto* sim = app.add_subcommand("simulate", "ideal simulation from |00>");
  sim->add_option("circuit", circuit_path, "circuit JSON file, or - for stdin")->required();

  std::vector<double> theta0_deg;
  double alpha = 0.25, tol = 1e-4;
  int max_iters = 100, shots = 8192;
  std::string vqe_mitigation = "none";
  auto* vqe = app.add_subcommand("vqe", "Heisenberg VQE run to completion");
  vqe->add_option("--theta0-deg", theta0_deg, "four initial angles in degrees")->expected(4);
  vqe->add_option("--alpha", alpha, "learning rate");
  vqe->add_option("--max-iters", max_iters, "iteration cap");
  vqe->add_option("--tol", tol, "energy change tolerance");
  vqe->add_option("--mitigation", vqe_mitigation, "none, CEM or REM");
  vqe->add_option("--shots", shots, "shots per basis for REM");

  std::vector<double> omegas = {180.0, 240.0};
  std::vector<double> rs = nmrqc::sweep_purities();
  int repetitions = 5;
  auto* geo = app.add_subcommand("geo-sweep", "mixed-state geometric phase sweep");
  geo->add_option("--omegas-deg", omegas, "solid angles in degrees");
  geo->add_option("--rs", rs, "Bloch radii in [0, 1]");
  geo->add_option("--repetitions", repetitions, "repetitions per point");

  nmrqc::PpsTuneRange range;
  auto* pps = app.add_subcommand("pps-tune", "scan PPS repetitions and delay");
  pps->add_option("--n-min", range.n_min);
  pps->add_option("--n-max", range.n_max);
  pps->add_option("--t-min", range.t_min, "seconds");
  pps->add_option("--t-max", range.t_max, "seconds");
  pps->add_option("--t-steps", range.t_steps);

  std::string id;
  auto* show = app.add_subcommand("show", "print a record");
  show->add_option("id", id)->required();

  std::string csv_out;
  auto* csv = app.add_subcommand("export-csv", "CSV of a vqe or geometric record");
  csv->add_option("id", id)->required();
  csv->add_option("-o,--output", csv_out, "output file (default stdout)");

  int port = 0;
  auto* serve = app.add_subcommand("serve", "HTTP API (env QPU_PORT, default 7700)");
  serve->add_option("--port", port);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*run) {
      Json d = base_draft(g, "circuit", "gate-noise");
      d["circuit"] = read_json_file(circuit_path);
      d["mitigation"] = mitigation;
      d["readout_noise"] = readout_noise;
      return submit_and_wait(g, d);
    }
    if (*sim) {
      if (g.mode && *g.mode != "ideal") {
        throw nmrqc::ValidationError("mode: simulate always runs ideal");
      }
      Json d = base_draft(g, "circuit", "ideal");
      d["circuit"] = read_json_file(circuit_path);
      return submit_and_wait(g, d);
    }
    if (*vqe) {
      Json d = base_draft(g, "vqe", "ideal");
      if (!theta0_deg.empty()) d["theta0_deg"] = theta0_deg;
      d["alpha"] = alpha;
      d["max_iters"] = max_iters;
      d["tol"] = tol;
      d["mitigation"] = vqe_mitigation;
      d["shots"] = shots;
      nmrqc::DeviceService svc(g.store);
      const std::string vid = svc.submit(d);
      svc.vqe_control(vid, Json{{"action", "start"}});
      return finish(svc.wait(vid, std::chrono::hours(24)));
    }
    if (*geo) {
      Json d = base_draft(g, "geometric", "ideal");
      d["omegas_deg"] = omegas;
      d["rs"] = rs;
      d["repetitions"] = repetitions;
      return submit_and_wait(g, d);
    }
    if (*pps) {
      Json d = base_draft(g, "pps-tune", "ideal");
      d["n_min"] = range.n_min;
      d["n_max"] = range.n_max;
      d["t_min_s"] = range.t_min;
      d["t_max_s"] = range.t_max;
      d["t_steps"] = range.t_steps;
      return submit_and_wait(g, d);
    }
    if (*show) {
      nmrqc::RecordStore store(g.store);
      std::cout << nmrqc::to_json(store.get(id)).dump(2) << "\n";
      return kExitOk;
    }
    if (*csv) {
      nmrqc::RecordStore store(g.store);
      const std::string text = nmrqc::export_csv(store.get(id));
      if (csv_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(csv_out);
        if (!out) throw nmrqc::EngineError("cannot write " + csv_out);
        out << text;
      }
      return kExitOk;
    }
    if (*serve) {
      auto cfg = nmrqc::ServeConfig::from_env();
      if (port) cfg.port = port;
      nmrqc::DeviceService svc(g.store);
      nmrqc::HttpApi api(svc);
      if (!api.bind("0.0.0.0", cfg.port)) {
        throw nmrqc::EngineError("cannot bind port " + std::to_string(cfg.port));
      }
      g_api = &api;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "listening on :" << cfg.port << ", store " << g.store << "\n";
      api.listen_after_bind();
      g_api = nullptr;
      return kExitOk;
    }
  } catch (const nmrqc::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEngine;
  }
  return kExitOk;
}
