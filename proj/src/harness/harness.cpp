#include "pmu/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <thread>

#include "pmu/error.hpp"
#include "pmu/linalg.hpp"
#include "pmu/persistent.hpp"
#include "pmu/rng.hpp"

namespace pmu {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kAdmm:
      return "admm";
    case Method::kAls:
      return "als";
    case Method::kPersistent:
      return "persistent";
  }
  return "?";
}

std::string_view to_string(MaskRegime r) {
  switch (r) {
    case MaskRegime::kRandom:
      return "random";
    case MaskRegime::kRows:
      return "rows";
    case MaskRegime::kBurst:
      return "burst";
  }
  return "?";
}

Method parse_method(std::string_view s) {
  if (s == "admm") return Method::kAdmm;
  if (s == "als") return Method::kAls;
  if (s == "persistent") return Method::kPersistent;
  throw ParameterError("unknown method '" + std::string(s) + "' (admm|als|persistent)");
}

MaskRegime parse_regime(std::string_view s) {
  if (s == "random") return MaskRegime::kRandom;
  if (s == "rows") return MaskRegime::kRows;
  if (s == "burst") return MaskRegime::kBurst;
  throw ParameterError("unknown mask regime '" + std::string(s) + "' (random|rows|burst)");
}

ReshapeMode ReshapeMode::parse(std::string_view s) {
  if (s == "auto") return {Kind::kAuto, 1};
  if (s == "off") return {Kind::kOff, 1};
  if (s.starts_with("n=")) {
    Index k = 0;
    const auto digits = s.substr(2);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && k >= 1)
      return {Kind::kFixed, k};
  }
  throw ParameterError("reshape must be auto, off or n=<k>, got '" + std::string(s) + "'");
}

std::string ReshapeMode::str() const {
  switch (kind) {
    case Kind::kAuto:
      return "auto";
    case Kind::kOff:
      return "off";
    case Kind::kFixed:
      return "n=" + std::to_string(n_star);
  }
  return "?";
}

Completion complete(const ObservedMatrix& observed, Method method,
                    const MethodSettings& settings) {
  Completion out;
  if (method == Method::kPersistent) {
    const auto start = std::chrono::steady_clock::now();
    out.result.xhat = persistent_fill(observed);
    out.result.converged = true;
    out.result.elapsed = std::chrono::steady_clock::now() - start;
    return out;
  }

  Index n_star = 1;
  switch (settings.reshape.kind) {
    case ReshapeMode::Kind::kOff:
      break;
    case ReshapeMode::Kind::kFixed:
      n_star = settings.reshape.n_star;
      break;
    case ReshapeMode::Kind::kAuto:
      if (observed.mask().first_empty_row() >= 0)
        n_star = select_cut_factor(observed.rows(), observed.cols());
      break;
  }

  auto solve = [&](const ObservedMatrix& m) {
    return method == Method::kAdmm ? admm_complete(m, settings.admm)
                                   : als_complete(m, settings.als);
  };

  if (n_star == 1 && settings.reshape.kind != ReshapeMode::Kind::kFixed) {
    out.result = solve(observed);
    return out;
  }
  auto [reshaped, plan] = ccrm_reshape(observed, n_star);
  out.result = solve(reshaped);
  out.result.xhat = ccrm_inverse(out.result.xhat, plan);
  out.plan = plan;
  return out;
}

std::uint64_t trial_stream_seed(const TrialSpec& t, std::uint64_t stream) {
  return mix_seed(t.scenario.seed, {t.trial_seed, stream});
}

TrialOutcome run_trial(const TrialSpec& trial) {
  TrialOutcome out;
  ScenarioSpec scenario = trial.scenario;
  scenario.seed = trial_stream_seed(trial, 0);
  const DenseMatrix truth = generate_synthetic(scenario);

  const std::uint64_t mask_seed = trial_stream_seed(trial, 1);
  ObservedMatrix observed;
  switch (trial.regime) {
    case MaskRegime::kRandom:
      observed = apply_random_mask(truth, trial.p, mask_seed);
      break;
    case MaskRegime::kRows:
      observed = apply_row_mask(truth, trial.p, mask_seed);
      break;
    case MaskRegime::kBurst:
      observed = apply_burst_mask(truth, trial.burst);
      break;
  }
  if (observed.mask().all_observed()) {
    out.status = TrialStatus::kNoMissing;
    out.error = "MAE is undefined: no missing entries";
    return out;
  }

  MethodSettings settings = trial.settings;
  settings.admm.init_seed = trial_stream_seed(trial, 2);
  settings.als.init_seed = trial_stream_seed(trial, 2);
  try {
    Completion c = complete(observed, trial.method, settings);
    out.mae = mae_missing(c.result.xhat, truth, observed.mask());
    out.iterations = c.result.iterations;
    out.converged = c.result.converged;
    out.elapsed_ms = c.result.elapsed_ms();
    out.plan = c.plan;
  } catch (const Error& e) {
    out.status = TrialStatus::kFailed;
    out.error = e.what();
  }
  return out;
}

void BenchmarkGrid::validate() const {
  scenario.validate();
  if (trials < 1) throw ParameterError("trials must be at least 1");
  if (probabilities.empty()) throw ParameterError("probability list is empty");
  for (double p : probabilities)
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("probabilities must lie in [0, 1]");
  if (methods.empty()) throw ParameterError("method list is empty");
}

std::uint64_t grid_trial_seed(std::uint64_t base_seed, std::size_t probability_index,
                              std::size_t trial_index) {
  return mix_seed(base_seed, {probability_index, trial_index});
}

std::vector<MaeStats> run_monte_carlo(const BenchmarkGrid& grid, unsigned threads) {
  grid.validate();
  const std::size_t n_methods = grid.methods.size();
  const std::size_t n_probs = grid.probabilities.size();
  const auto n_trials = static_cast<std::size_t>(grid.trials);
  const std::size_t n_tasks = n_methods * n_probs * n_trials;

  std::vector<TrialOutcome> outcomes(n_tasks);
  auto run_task = [&](std::size_t task) {
    const std::size_t t = task % n_trials;
    const std::size_t pi = (task / n_trials) % n_probs;
    const std::size_t mi = task / (n_trials * n_probs);
    TrialSpec spec;
    spec.scenario = grid.scenario;
    spec.regime = grid.regime;
    spec.p = grid.probabilities[pi];
    spec.burst = grid.burst;
    spec.method = grid.methods[mi];
    spec.settings = grid.settings;
    spec.trial_seed = grid_trial_seed(grid.base_seed, pi, t);
    outcomes[task] = run_trial(spec);
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_tasks));
  if (threads <= 1) {
    for (std::size_t task = 0; task < n_tasks; ++task) run_task(task);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (std::size_t task = next++; task < n_tasks; task = next++) run_task(task);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<MaeStats> stats;
  stats.reserve(n_methods * n_probs);
  for (std::size_t mi = 0; mi < n_methods; ++mi) {
    for (std::size_t pi = 0; pi < n_probs; ++pi) {
      MaeStats s;
      s.method = std::string(to_string(grid.methods[mi]));
      s.scenario = grid.scenario_label;
      s.observed_probability = grid.probabilities[pi];
      s.trials = grid.trials;
      for (std::size_t t = 0; t < n_trials; ++t) {
        const auto& o = outcomes[(mi * n_probs + pi) * n_trials + t];
        if (o.status == TrialStatus::kOk)
          s.per_trial.push_back(o.mae);
        else if (o.status == TrialStatus::kFailed)
          ++s.failed;
        else
          ++s.undefined;
      }
      if (s.per_trial.empty()) {
        s.mean = s.min = s.max = std::numeric_limits<double>::quiet_NaN();
      } else {
        double sum = 0.0;
        for (double v : s.per_trial) sum += v;
        s.mean = sum / static_cast<double>(s.per_trial.size());
        const auto [lo, hi] = std::minmax_element(s.per_trial.begin(), s.per_trial.end());
        s.min = *lo;
        s.max = *hi;
      }
      stats.push_back(std::move(s));
    }
  }
  return stats;
}

MethodComparison compare_methods(const ScenarioSpec& spec, const BurstSpec& burst,
                                 const std::vector<Index>& channels, Index from, Index to,
                                 const MethodSettings& settings) {
  const DenseMatrix truth = generate_synthetic(spec);
  if (from < 1 || from > to || to > truth.rows())
    throw ParameterError("trace window must satisfy 1 <= from <= to <= rows");
  for (Index c : channels)
    if (c < 1 || c > truth.cols())
      throw ParameterError("trace channel " + std::to_string(c) + " out of range");

  const ObservedMatrix observed = apply_burst_mask(truth, burst);
  const DenseMatrix admm = complete(observed, Method::kAdmm, settings).result.xhat;
  const DenseMatrix als = complete(observed, Method::kAls, settings).result.xhat;
  const DenseMatrix persistent = complete(observed, Method::kPersistent, settings).result.xhat;

  MethodComparison out;
  if (!observed.mask().all_observed()) {
    out.admm_mae = mae_missing(admm, truth, observed.mask());
    out.als_mae = mae_missing(als, truth, observed.mask());
    out.persistent_mae = mae_missing(persistent, truth, observed.mask());
  }
  for (Index c : channels) {
    ChannelTrace trace;
    trace.channel = c;
    for (Index t = from; t <= to; ++t) {
      trace.instants.push_back(t);
      trace.truth.push_back(truth(t - 1, c - 1));
      trace.admm.push_back(admm(t - 1, c - 1));
      trace.als.push_back(als(t - 1, c - 1));
      trace.persistent.push_back(persistent(t - 1, c - 1));
    }
    out.traces.push_back(std::move(trace));
  }
  return out;
}

}  // namespace pmu
