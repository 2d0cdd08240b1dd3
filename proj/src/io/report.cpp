#include "pmu/report.hpp"

#include "pmu/csv.hpp"
#include "pmu/error.hpp"

namespace pmu {

std::string format_report(const RunReport& r) {
  std::string out;
  auto put = [&](std::string_view k, const std::string& v) {
    out.append(k).append("=").append(v).append("\n");
  };
  put("schema_version", std::to_string(kReportSchemaVersion));
  put("method", r.method);
  put("converged", r.converged ? "true" : "false");
  put("iterations", std::to_string(r.iterations));
  put("final_residual", format_number(r.final_residual));
  put("elapsed_ms", format_number(r.elapsed_ms));
  if (r.mae) put("mae", format_number(*r.mae));
  if (r.plan) {
    put("reshape_n1", std::to_string(r.plan->n1));
    put("reshape_n2", std::to_string(r.plan->n2));
    put("reshape_n_star", std::to_string(r.plan->n_star));
    put("reshape_seg_len", std::to_string(r.plan->seg_len));
  }
  for (const auto& [k, v] : r.config) put("config." + k, v);
  return out;
}

void write_report(const RunReport& report, const std::filesystem::path& path) {
  write_text_file(path, format_report(report));
}

RunReport parse_report(std::string_view text) {
  const KeyValues kv = parse_key_values(text, "report");
  auto need = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw ParameterError("report lacks '" + k + "'");
    return it->second;
  };
  if (parse_integer(need("schema_version"), "schema_version") != kReportSchemaVersion)
    throw ParameterError("unsupported report schema_version " + need("schema_version"));

  RunReport r;
  r.method = need("method");
  r.converged = need("converged") == "true";
  r.iterations = static_cast<int>(parse_integer(need("iterations"), "iterations"));
  r.final_residual = parse_real(need("final_residual"), "final_residual");
  r.elapsed_ms = parse_real(need("elapsed_ms"), "elapsed_ms");
  if (kv.contains("mae")) r.mae = parse_real(kv.at("mae"), "mae");
  if (kv.contains("reshape_n_star")) {
    ReshapePlan p;
    p.n1 = parse_integer(need("reshape_n1"), "reshape_n1");
    p.n2 = parse_integer(need("reshape_n2"), "reshape_n2");
    p.n_star = parse_integer(need("reshape_n_star"), "reshape_n_star");
    p.seg_len = parse_integer(need("reshape_seg_len"), "reshape_seg_len");
    r.plan = p;
  }
  for (const auto& [k, v] : kv)
    if (k.starts_with("config.")) r.config.emplace_back(k.substr(7), v);
  return r;
}

}  // namespace pmu
