#include "retrorank/service.hpp"

#include <chrono>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "retrorank/error.hpp"
#include "retrorank/eval_stats.hpp"
#include "retrorank/ranker.hpp"
#include "retrorank/text_util.hpp"
#include "retrorank/wire.hpp"

namespace retrorank {

using nlohmann::json;

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"error", message}});
}

std::optional<std::string> param(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return std::nullopt;
  return req.get_param_value(key);
}

std::optional<int> int_param(const httplib::Request& req, const char* key) {
  auto v = param(req, key);
  if (!v) return std::nullopt;
  std::size_t used = 0;
  int out = 0;
  try {
    out = std::stoi(*v, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (v->empty() || used != v->size()) throw InvalidArgument(std::string("parameter '") + key + "' must be an integer");
  return out;
}

std::vector<NamedConfig> eval_configs(const json& body, std::optional<int> top_m) {
  std::vector<NamedConfig> out;
  auto it = body.find("configs");
  if (it == body.end()) {
    for (const auto& name : preset_names()) out.push_back(wire::resolve_config(name, std::nullopt, std::nullopt, top_m));
    return out;
  }
  if (!it->is_array()) throw InvalidArgument("'configs' must be an array");
  for (const auto& c : *it) {
    if (c.is_string()) {
      out.push_back(wire::resolve_config(c.get<std::string>(), std::nullopt, std::nullopt, top_m));
    } else if (c.is_object() && c.contains("name") && c["name"].is_string()) {
      std::optional<std::string> weights;
      if (c.contains("weights")) {
        if (!c["weights"].is_string()) throw InvalidArgument("config 'weights' must be a string like \"1,1,1\"");
        weights = c["weights"].get<std::string>();
      }
      out.push_back(wire::resolve_config(c["name"].get<std::string>(), weights, std::nullopt, top_m));
    } else {
      throw InvalidArgument("each config must be a preset name or {\"name\", \"weights\"}");
    }
  }
  return out;
}

}  // namespace

void install_routes(httplib::Server& server, const Engine& engine, const ServiceOptions& options) {
  server.Get("/api/health", [&engine](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, wire::health_json(engine));
  });

  server.Get("/api/query", [&engine](const httplib::Request& req, httplib::Response& res) {
    auto started = std::chrono::steady_clock::now();
    try {
      auto q = param(req, "q").value_or("");
      if (trim(q).empty()) return send_error(res, 400, "query parameter 'q' is empty");
      auto weights = param(req, "weights");
      auto config = wire::resolve_config(param(req, "config").value_or("vsm+sa+tr"),
                                         weights ? std::optional<std::string_view>(*weights) : std::nullopt,
                                         int_param(req, "k"), int_param(req, "top_m"));
      auto results = engine.rank(q, config.config);
      std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - started;
      send_json(res, 200, wire::query_response(engine, results, config, elapsed.count()));
    } catch (const InvalidArgument& e) {
      send_error(res, 400, e.what());
    }
  });

  server.Get(R"(/api/bugs/([^/]+))", [&engine](const httplib::Request& req, httplib::Response& res) {
    const auto* bug = engine.corpus().find_bug(req.matches[1]);
    if (!bug) return send_error(res, 404, "bug '" + std::string(req.matches[1]) + "' not found");
    send_json(res, 200, wire::bug_json(*bug));
  });

  server.Get(R"(/api/bugs/([^/]+)/comments)", [&engine](const httplib::Request& req, httplib::Response& res) {
    const auto* bug = engine.corpus().find_bug(req.matches[1]);
    if (!bug) return send_error(res, 404, "bug '" + std::string(req.matches[1]) + "' not found");
    send_json(res, 200, wire::comments_json(*bug));
  });

  server.Post("/api/eval", [&engine, cap = options.max_eval_queries](const httplib::Request& req,
                                                                     httplib::Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::parse_error& e) {
      return send_error(res, 400, std::string("malformed JSON body: ") + e.what());
    }
    try {
      if (!body.is_object() || !body.contains("goldset") || !body["goldset"].is_array())
        return send_error(res, 400, "body needs a 'goldset' array");
      if (body["goldset"].size() > cap)
        return send_error(res, 413, "goldset exceeds the limit of " + std::to_string(cap) + " queries");
      std::stringstream lines;
      for (const auto& rec : body["goldset"]) lines << rec.dump() << '\n';
      auto goldset = parse_goldset(lines, "goldset");

      std::optional<int> top_m;
      if (body.contains("top_m")) {
        if (!body["top_m"].is_number_integer()) return send_error(res, 400, "'top_m' must be an integer");
        top_m = body["top_m"].get<int>();
      }
      double alpha = 0.05;
      if (body.contains("alpha")) {
        if (!body["alpha"].is_number()) return send_error(res, 400, "'alpha' must be a number");
        alpha = body["alpha"].get<double>();
      }
      auto configs = eval_configs(body, top_m);
      send_json(res, 200, wire::eval_report_json(run_eval(engine, goldset, configs, alpha)));
    } catch (const NotFoundError& e) {
      send_error(res, 422, e.what());
    } catch (const Error& e) {
      send_error(res, 400, e.what());
    }
  });

  if (options.static_dir) server.set_mount_point("/", options.static_dir->string());

  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      send_error(res, 500, e.what());
    } catch (...) {
      send_error(res, 500, "internal error");
    }
  });
}

}  // namespace retrorank
