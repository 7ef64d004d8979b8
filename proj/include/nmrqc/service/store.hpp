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

// Directory-of-JSON record store:
//
//   <root>/index.json          {"next_seq": n, "records": [{id, seq, kind, status, created_at}]}
//   <root>/records/<id>.json   one ExperimentRecord each
//
// Files are replaced atomically (write to a temporary, then rename). Readers
// share the lock; writes are exclusive.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <vector>

#include "nmrqc/service/records.hpp"

namespace nmrqc {

struct RecordFilter {
  std::optional<RecordKind> kind;
  std::optional<RecordStatus> status;
  std::size_t limit = 0;  // 0 = unlimited

  bool matches(RecordKind k, RecordStatus s) const {
    return (!kind || *kind == k) && (!status || *status == s);
  }
};

class RecordStore {
 public:
  explicit RecordStore(std::filesystem::path root) : root_(std::move(root)) {
    std::filesystem::create_directories(root_ / "records");
    load_index();
  }

  const std::filesystem::path& root() const { return root_; }

  /// Assigns id, seq and created_at to a fresh record and persists it.
  ExperimentRecord create(ExperimentRecord r) {
    std::unique_lock lock(mu_);
    do {
      r.id = random_id();
    } while (index_.count(r.id) != 0);
    r.seq = next_seq_++;
    r.created_at = iso_timestamp();
    write_locked(r);
    return r;
  }

  void put(const ExperimentRecord& r) {
    std::unique_lock lock(mu_);
    if (index_.count(r.id) == 0) throw NotFoundError("no record with id '" + r.id + "'");
    write_locked(r);
  }

  bool contains(const std::string& id) const {
    std::shared_lock lock(mu_);
    return index_.count(id) != 0;
  }

  ExperimentRecord get(const std::string& id) const {
    std::shared_lock lock(mu_);
    if (index_.count(id) == 0) throw NotFoundError("no record with id '" + id + "'");
    return read_record(id);
  }

  /// Newest first.
  std::vector<ExperimentRecord> list(const RecordFilter& f = {}) const {
    std::shared_lock lock(mu_);
    std::vector<const IndexEntry*> hits;
    for (const auto& [id, e] : index_) {
      if (f.matches(e.kind, e.status)) hits.push_back(&e);
    }
    std::sort(hits.begin(), hits.end(),
              [](const IndexEntry* a, const IndexEntry* b) { return a->seq > b->seq; });
    if (f.limit && hits.size() > f.limit) hits.resize(f.limit);
    std::vector<ExperimentRecord> out;
    out.reserve(hits.size());
    for (const auto* e : hits) out.push_back(read_record(e->id));
    return out;
  }

  std::size_t size() const {
    std::shared_lock lock(mu_);
    return index_.size();
  }

 private:
  struct IndexEntry {
    std::string id;
    std::uint64_t seq = 0;
    RecordKind kind = RecordKind::Circuit;
    RecordStatus status = RecordStatus::Queued;
    std::string created_at;
  };

  std::filesystem::path record_path(const std::string& id) const {
    return root_ / "records" / (id + ".json");
  }

  static void atomic_write(const std::filesystem::path& p, const std::string& text) {
    const auto tmp = p.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw EngineError("cannot write " + tmp);
      out << text;
      out.flush();
      if (!out) throw EngineError("short write to " + tmp);
    }
    std::filesystem::rename(tmp, p);
  }

  static io::Json read_json(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw EngineError("cannot read " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      return io::Json::parse(ss.str());
    } catch (const io::Json::parse_error& e) {
      throw EngineError("corrupt store file " + p.string() + ": " + e.what());
    }
  }

  ExperimentRecord read_record(const std::string& id) const {
    return record_from_json(read_json(record_path(id)));
  }

  void write_locked(const ExperimentRecord& r) {
    atomic_write(record_path(r.id), to_json(r).dump(2));
    index_[r.id] = {r.id, r.seq, r.kind, r.status, r.created_at};
    write_index();
  }

  void write_index() {
    io::Json arr = io::Json::array();
    std::vector<const IndexEntry*> entries;
    for (const auto& [id, e] : index_) entries.push_back(&e);
    std::sort(entries.begin(), entries.end(),
              [](const IndexEntry* a, const IndexEntry* b) { return a->seq < b->seq; });
    for (const auto* e : entries) {
      arr.push_back(io::Json{{"id", e->id},
                             {"seq", e->seq},
                             {"kind", std::string(to_string(e->kind))},
                             {"status", std::string(to_string(e->status))},
                             {"created_at", e->created_at}});
    }
    io::Json j;
    j["next_seq"] = next_seq_;
    j["records"] = arr;
    atomic_write(root_ / "index.json", j.dump(2));
  }

  // The index is a cache of the record files; rebuild it when it is missing
  // or disagrees with them.
  void load_index() {
    index_.clear();
    next_seq_ = 1;
    for (const auto& entry : std::filesystem::directory_iterator(root_ / "records")) {
      const auto& p = entry.path();
      if (p.extension() != ".json") continue;
      const auto j = read_json(p);
      IndexEntry e;
      e.id = io::read_string(io::require(j, "id", ""), "id");
      e.seq = io::require(j, "seq", "").get<std::uint64_t>();
      e.kind = parse_record_kind(io::read_string(io::require(j, "kind", ""), "kind"));
      e.status = parse_record_status(io::read_string(io::require(j, "status", ""), "status"));
      e.created_at = io::read_string(io::require(j, "created_at", ""), "created_at");
      next_seq_ = std::max(next_seq_, e.seq + 1);
      index_[e.id] = e;
    }
    const auto idx = root_ / "index.json";
    if (std::filesystem::exists(idx)) {
      const auto j = read_json(idx);
      next_seq_ = std::max<std::uint64_t>(next_seq_, j.value("next_seq", std::uint64_t{1}));
    }
    write_index();
  }

  std::string random_id() {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string id(16, '0');
    for (auto& c : id) c = kHex[rng_() & 0xf];
    return id;
  }

  std::filesystem::path root_;
  mutable std::shared_mutex mu_;
  std::map<std::string, IndexEntry> index_;
  std::uint64_t next_seq_ = 1;
  std::mt19937_64 rng_{std::random_device{}()};
};

}  // namespace nmrqc
