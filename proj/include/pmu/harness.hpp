#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmu/admm.hpp"
#include "pmu/als.hpp"
#include "pmu/ccrm.hpp"
#include "pmu/synthetic.hpp"

namespace pmu {

enum class Method { kAdmm, kAls, kPersistent };
enum class MaskRegime { kRandom, kRows, kBurst };

std::string_view to_string(Method m);
std::string_view to_string(MaskRegime r);
Method parse_method(std::string_view s);
MaskRegime parse_regime(std::string_view s);

/// `auto` reshapes exactly when some row is entirely missing.
struct ReshapeMode {
  enum class Kind { kAuto, kOff, kFixed };
  Kind kind = Kind::kAuto;
  Index n_star = 1;

  static ReshapeMode parse(std::string_view s);  // auto | off | n=<k>
  std::string str() const;
};

struct MethodSettings {
  AdmmConfig admm;
  AlsConfig als;
  ReshapeMode reshape;
};

struct Completion {
  RecoveryResult result;  // xhat in the caller's orientation
  std::optional<ReshapePlan> plan;
};

/// Runs one method on `observed`, with CCRM around it when the reshape mode
/// asks for it. The persistent model never reshapes.
Completion complete(const ObservedMatrix& observed, Method method, const MethodSettings& settings);

enum class TrialStatus { kOk, kNoMissing, kFailed };

struct TrialOutcome {
  TrialStatus status = TrialStatus::kOk;
  double mae = 0.0;
  int iterations = 0;
  bool converged = false;
  double elapsed_ms = 0.0;
  std::optional<ReshapePlan> plan;
  std::string error;
};

struct TrialSpec {
  ScenarioSpec scenario;
  MaskRegime regime = MaskRegime::kRandom;
  double p = 0.9;  // unused for the burst regime
  BurstSpec burst = default_burst();
  Method method = Method::kAdmm;
  MethodSettings settings;
  std::uint64_t trial_seed = 0;
};

/// Seeds used inside one trial, all from mix_seed(scenario.seed, {trial_seed, k}):
/// k = 0 truth, k = 1 mask, k = 2 solver initialization.
std::uint64_t trial_stream_seed(const TrialSpec& t, std::uint64_t stream);

TrialOutcome run_trial(const TrialSpec& trial);

struct MaeStats {
  std::string method;
  std::string scenario;
  double observed_probability = 0.0;
  int trials = 0;
  int failed = 0;     // solver errors, excluded from the statistics
  int undefined = 0;  // nothing missing, MAE undefined
  double mean = 0.0;  // NaN when no trial succeeded
  double min = 0.0;
  double max = 0.0;
  std::vector<double> per_trial;  // successful trials in trial order
};

struct BenchmarkGrid {
  ScenarioSpec scenario;
  std::string scenario_label = "synthetic";
  MaskRegime regime = MaskRegime::kRandom;
  BurstSpec burst = default_burst();
  std::vector<double> probabilities = {0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95};
  std::vector<Method> methods = {Method::kAdmm, Method::kAls};
  int trials = 50;
  std::uint64_t base_seed = 2024;
  MethodSettings settings;

  void validate() const;
};

/// trial_seed = mix_seed(base_seed, {probability_index, trial_index}). The
/// same seed is used for every method, so methods are compared on paired
/// data, and adding trials never changes earlier ones.
std::uint64_t grid_trial_seed(std::uint64_t base_seed, std::size_t probability_index,
                              std::size_t trial_index);

/// One MaeStats per (method, probability), method-major in grid order.
/// `threads` = 0 picks the hardware concurrency.
std::vector<MaeStats> run_monte_carlo(const BenchmarkGrid& grid, unsigned threads = 1);

struct ChannelTrace {
  Index channel = 0;  // 1-based
  std::vector<Index> instants;
  std::vector<double> truth;
  std::vector<double> admm;
  std::vector<double> als;
  std::vector<double> persistent;
};

struct MethodComparison {
  std::vector<ChannelTrace> traces;
  std::optional<double> admm_mae;
  std::optional<double> als_mae;
  std::optional<double> persistent_mae;
};

/// Generates the scenario, drops `burst`, recovers with all three methods
/// and reports traces of `channels` over instants [from, to] (1-based).
MethodComparison compare_methods(const ScenarioSpec& spec, const BurstSpec& burst,
                                 const std::vector<Index>& channels, Index from, Index to,
                                 const MethodSettings& settings = {});

}  // namespace pmu
