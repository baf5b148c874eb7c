#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace httplib {
class Server;
}

namespace retrorank {

class Engine;

struct ServiceOptions {
  std::optional<std::filesystem::path> static_dir;
  std::size_t max_eval_queries = 1000;  ///< larger /api/eval goldsets are refused with 413
};

/// Registers the read-only JSON API on `server`:
///   GET  /api/health
///   GET  /api/query?q=&config=&k=&top_m=&weights=
///   GET  /api/bugs/{id}
///   GET  /api/bugs/{id}/comments
///   POST /api/eval   body {"goldset": [...], "configs": [...], "top_m"?, "alpha"?}
/// The engine must outlive the server.
void install_routes(httplib::Server& server, const Engine& engine, const ServiceOptions& options = {});

}  // namespace retrorank
