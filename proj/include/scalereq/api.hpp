#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "scalereq/model.hpp"

namespace httplib {
class Server;
}

namespace scalereq {

struct ApiResponse {
  int status = 200;
  std::string body;
};

// HTTP-independent core of the workbench server. Reads are served from an
// immutable snapshot of the current revision; writes are serialized, persisted
// atomically and publish a new snapshot.
class ApiService {
 public:
  // Loads and validates the model file. Throws Error if it cannot be served.
  explicit ApiService(std::string model_path);
  ~ApiService();

  ApiService(const ApiService&) = delete;
  ApiService& operator=(const ApiService&) = delete;

  // resource is one of: model, scenarios, eval, triage, risk, checklist.
  ApiResponse get(std::string_view resource) const;

  // Body: {"overrides": {param: {scenario: number}}}. Never persists anything.
  ApiResponse whatif(std::string_view body) const;

  // Body: {"scenario", "value", "provenance": {"source", "date"?, "note"?},
  //        "expected_revision"?}.
  ApiResponse update_parameter(std::string_view name, std::string_view body);

  std::uint64_t revision() const;
  Model model() const;

 private:
  struct Snapshot;

  std::shared_ptr<const Snapshot> snapshot() const;
  void publish(Model model);

  std::string path_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const Snapshot> snapshot_;
  std::mutex write_mutex_;
};

// Registers the /api routes (plus CORS and optional static UI) on `server`.
void mount_routes(httplib::Server& server, ApiService& service, const std::optional<std::string>& ui_dir);

}  // namespace scalereq
