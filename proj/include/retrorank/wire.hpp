#pragma once

// Shared projections for the CLI and HTTP surfaces. Both emit these exact JSON
// objects, so the two interfaces agree field for field.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "retrorank/eval_stats.hpp"
#include "retrorank/ranker.hpp"

namespace retrorank::wire {

inline constexpr std::size_t kExcerptBytes = 240;

/// Preset plus optional "w_vsm,w_sa,w_tr" override. Throws InvalidArgument listing the
/// valid presets for unknown names, and on malformed weights or k/top_m < 1.
NamedConfig resolve_config(std::string_view preset_name, std::optional<std::string_view> weights,
                           std::optional<int> k, std::optional<int> top_m);

nlohmann::json config_json(const NamedConfig& config);
nlohmann::json result_json(const Engine& engine, const RankedComment& r);
nlohmann::json query_response(const Engine& engine, std::span<const RankedComment> results,
                              const NamedConfig& config, double timing_ms);

nlohmann::json bug_json(const BugReport& bug);
nlohmann::json comments_json(const BugReport& bug);
nlohmann::json health_json(const Engine& engine);

nlohmann::json eval_report_json(const EvalReport& report);

/// JSON Lines: one record per result, then a trailer {"config", "count", "timing_ms"}.
void write_query_machine(std::ostream& out, const nlohmann::json& response);
void write_query_text(std::ostream& out, const nlohmann::json& response);
void write_eval_text(std::ostream& out, const EvalReport& report);

/// 4 significant digits, e.g. 2.254e-01.
std::string format_p(double p);

}  // namespace retrorank::wire
