#pragma once

// Run report: flat key=value text, one pair per line.
//
//   schema_version=1
//   method=<admm|als|persistent>
//   converged=<true|false>
//   iterations=<int>
//   final_residual=<real>
//   elapsed_ms=<real>
//   mae=<real>                       only when a truth matrix was supplied
//   reshape_n1=, reshape_n2=, reshape_n_star=, reshape_seg_len=
//                                    only when CCRM was applied
//   config.<key>=<value>             everything needed to rerun the job

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmu/ccrm.hpp"
#include "pmu/config.hpp"

namespace pmu {

inline constexpr int kReportSchemaVersion = 1;

struct RunReport {
  std::string method;
  std::vector<std::pair<std::string, std::string>> config;
  bool converged = false;
  int iterations = 0;
  double final_residual = 0.0;
  double elapsed_ms = 0.0;
  std::optional<double> mae;
  std::optional<ReshapePlan> plan;
};

std::string format_report(const RunReport& report);
void write_report(const RunReport& report, const std::filesystem::path& path);

/// Inverse of format_report; fails on a schema_version it does not know.
RunReport parse_report(std::string_view text);

}  // namespace pmu
