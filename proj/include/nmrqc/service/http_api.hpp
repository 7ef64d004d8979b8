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

// JSON over HTTP:
//
//   POST /api/tasks                      submit a draft        -> 201 {"id", "status"}
//   GET  /api/tasks?kind=&status=&limit= list, newest first
//   GET  /api/tasks/:id                  one record
//   GET  /api/tasks/:id/csv              CSV export
//   POST /api/vqe/:id/control            {"action", "alpha"}
//   GET  /api/vqe/:id/events?after=&timeout_ms=
//   GET  /api/health
//
// Errors are {"error": message} with 400, 404, 409 or 500.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <string>

// Eigen must come before httplib: <resolv.h> defines a _res macro that
// collides with Eigen parameter names.
#include "nmrqc/service/device_service.hpp"
#include "nmrqc/service/export.hpp"

#include <httplib.h>

namespace nmrqc {

inline constexpr int kDefaultPort = 7700;
inline constexpr long kMaxEventWaitMs = 30000;

class HttpApi {
 public:
  explicit HttpApi(DeviceService& service) : svc_(service) { routes(); }

  httplib::Server& server() { return server_; }

  /// Binds to an ephemeral port on host and returns it, or -1.
  int bind_any_port(const std::string& host = "127.0.0.1") {
    return server_.bind_to_any_port(host);
  }
  bool bind(const std::string& host, int port) { return server_.bind_to_port(host, port); }
  bool listen_after_bind() { return server_.listen_after_bind(); }
  void stop() { server_.stop(); }
  void wait_until_ready() const { server_.wait_until_ready(); }

 private:
  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  static void reply(httplib::Response& res, int status, const io::Json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  static void error(httplib::Response& res, int status, const std::string& msg) {
    reply(res, status, io::Json{{"error", msg}});
  }

  static io::Json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return io::Json::object();
    try {
      return io::Json::parse(req.body);
    } catch (const io::Json::parse_error& e) {
      throw ValidationError(std::string("body: invalid JSON: ") + e.what());
    }
  }

  static long query_long(const httplib::Request& req, const char* key, long fallback) {
    if (!req.has_param(key)) return fallback;
    const std::string v = req.get_param_value(key);
    try {
      std::size_t used = 0;
      const long out = std::stol(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return out;
    } catch (const std::exception&) {
      throw ValidationError(std::string(key) + ": expected an integer, got '" + v + "'");
    }
  }

  Handler guarded(Handler h) {
    return [h](const httplib::Request& req, httplib::Response& res) {
      try {
        h(req, res);
      } catch (const ValidationError& e) {
        error(res, 400, e.what());
      } catch (const NotFoundError& e) {
        error(res, 404, e.what());
      } catch (const ConflictError& e) {
        error(res, 409, e.what());
      } catch (const std::exception& e) {
        error(res, 500, e.what());
      }
    };
  }

  void routes() {
    server_.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                 {"Access-Control-Allow-Headers", "Content-Type"},
                                 {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    server_.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });

    server_.Get("/api/health", guarded([](const httplib::Request&, httplib::Response& res) {
                  reply(res, 200, io::Json{{"ok", true}});
                }));

    server_.Post("/api/tasks", guarded([this](const httplib::Request& req, httplib::Response& res) {
                   const std::string id = svc_.submit(parse_body(req));
                   const auto r = svc_.get(id);
                   reply(res, 201,
                         io::Json{{"id", id}, {"status", std::string(to_string(r.status))}});
                 }));

    server_.Get("/api/tasks", guarded([this](const httplib::Request& req, httplib::Response& res) {
                  RecordFilter f;
                  if (req.has_param("kind")) f.kind = parse_record_kind(req.get_param_value("kind"));
                  if (req.has_param("status")) {
                    f.status = parse_record_status(req.get_param_value("status"));
                  }
                  const long limit = query_long(req, "limit", 0);
                  if (limit < 0) throw ValidationError("limit: must be >= 0");
                  f.limit = static_cast<std::size_t>(limit);
                  io::Json arr = io::Json::array();
                  for (const auto& r : svc_.list(f)) arr.push_back(to_json(r));
                  reply(res, 200, io::Json{{"records", arr}});
                }));

    server_.Get("/api/tasks/:id",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  reply(res, 200, to_json(svc_.get(req.path_params.at("id"))));
                }));

    server_.Get("/api/tasks/:id/csv",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  res.status = 200;
                  res.set_content(export_csv(svc_.get(req.path_params.at("id"))), "text/csv");
                }));

    server_.Post("/api/vqe/:id/control",
                 guarded([this](const httplib::Request& req, httplib::Response& res) {
                   reply(res, 200, svc_.vqe_control(req.path_params.at("id"), parse_body(req)));
                 }));

    server_.Get("/api/vqe/:id/events",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  const long after = query_long(req, "after", -1);
                  const long wait = std::clamp(query_long(req, "timeout_ms", 0), 0L,
                                               kMaxEventWaitMs);
                  reply(res, 200,
                        svc_.events(req.path_params.at("id"), after,
                                    std::chrono::milliseconds(wait)));
                }));
  }

  DeviceService& svc_;
  httplib::Server server_;
};

/// QPU_STORE and QPU_PORT, with defaults.
struct ServeConfig {
  std::string store = "./qpu-store";
  int port = kDefaultPort;

  static ServeConfig from_env() {
    ServeConfig c;
    if (const char* s = std::getenv("QPU_STORE"); s && *s) c.store = s;
    if (const char* p = std::getenv("QPU_PORT"); p && *p) {
      try {
        c.port = std::stoi(p);
      } catch (const std::exception&) {
        throw ValidationError(std::string("QPU_PORT: expected an integer, got '") + p + "'");
      }
      if (c.port < 1 || c.port > 65535) throw ValidationError("QPU_PORT: out of range");
    }
    return c;
  }
};

}  // namespace nmrqc
