// pmucomplete: matrix completion for PMU-style measurement matrices.
//
//   pmucomplete complete   --input M.csv [--mask I.csv] --output X.csv ...
//   pmucomplete simulate   --output X.csv [scenario flags]
//   pmucomplete mask       --input X.csv --regime random|rows|burst --output M.csv
//   pmucomplete svdrank    --input X.csv [--beta 0.995]
//   pmucomplete benchmark  --output results.csv [grid flags]
//   pmucomplete compare    --output traces.csv [burst flags]
//
// Exit codes: 0 ok, 2 parameter error, 3 degenerate input, 4 solver
// divergence, 5 I/O or file-format error.

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pmu/ccrm.hpp"
#include "pmu/config.hpp"
#include "pmu/csv.hpp"
#include "pmu/error.hpp"
#include "pmu/harness.hpp"
#include "pmu/kernels.hpp"
#include "pmu/linalg.hpp"
#include "pmu/report.hpp"

namespace {

using namespace pmu;

constexpr int kExitParameter = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitDivergence = 4;
constexpr int kExitIo = 5;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParameter:
    case ErrorKind::kShape:
      return kExitParameter;
    case ErrorKind::kDegenerateInput:
    case ErrorKind::kUndefinedMetric:
      return kExitDegenerate;
    case ErrorKind::kDivergence:
      return kExitDivergence;
    case ErrorKind::kIo:
    case ErrorKind::kFormat:
      return kExitIo;
  }
  return kExitParameter;
}

// String options that land in a KeyValues map when given on the command line.
class Overrides {
 public:
  explicit Overrides(CLI::App* app) : app_(app) {}

  void option(const std::string& flag, const std::string& key, const std::string& help) {
    auto slot = std::make_unique<std::string>();
    CLI::Option* opt = app_->add_option(flag, *slot, help);
    entries_.push_back({key, std::move(slot), opt, {}});
  }

  void flag(const std::string& flag, const std::string& key, const std::string& value,
            const std::string& help) {
    CLI::Option* opt = app_->add_flag(flag, help);
    entries_.push_back({key, nullptr, opt, value});
  }

  void apply(KeyValues& kv) const {
    for (const auto& e : entries_)
      if (e.opt->count() > 0) kv[e.key] = e.storage ? *e.storage : e.fixed;
  }

 private:
  struct Entry {
    std::string key;
    std::unique_ptr<std::string> storage;
    CLI::Option* opt;
    std::string fixed;
  };
  CLI::App* app_;
  std::vector<Entry> entries_;
};

void add_solver_options(Overrides& o) {
  o.option("--rho", "rho", "ADMM penalty weight (default 0.00075)");
  o.option("--step", "step", "ADMM gradient step in (0,1] (default 0.5; 1 = undamped)");
  o.option("--eps", "eps", "ADMM stop threshold or 'auto' (default 1e-4*max(1,||M||_F))");
  o.option("--kmax", "k_max", "ADMM iteration cap (default 5000)");
  o.option("--init-seed", "init_seed", "Solver initialization seed (default 1)");
  o.option("--init-scale", "init_scale", "ADMM initial factor scale (default 1)");
  o.flag("--clamp", "clamp", "on", "Copy observed entries of M into the output");
  o.option("--rank", "als_rank", "ALS rank r (default 20)");
  o.option("--lambda", "als_lambda", "ALS ridge weight (default 1.5)");
  o.option("--als-iters", "als_max_iters", "ALS iteration cap (default 500)");
  o.option("--als-tol", "als_tol", "ALS relative objective tolerance (default 0.001)");
  o.option("--reshape", "reshape", "CCRM: auto | off | n=<k> (default auto)");
}

void add_scenario_options(Overrides& o) {
  o.option("--rows", "rows", "Sampling instants n1 (default 1800)");
  o.option("--cols", "cols", "Channels n2 (default 86)");
  o.option("--signal-rank", "signal_rank", "Signal rank (default 1)");
  o.option("--noise-var", "noise_var", "Gaussian noise variance (default 0.001)");
  o.option("--seed", "seed", "Generator seed (default 0)");
  o.flag("--no-event", "event", "off", "Omit the damped transient");
  o.option("--event-onset", "event_onset", "Transient onset instant, 1-based (default 4)");
  o.option("--event-damping", "event_damping", "Transient damping per sample (default 0.02)");
  o.option("--event-frequency", "event_frequency", "Transient cycles per sample (default 0.02)");
  o.option("--event-amplitude", "event_amplitude", "Transient amplitude (default 0.05)");
}

std::vector<std::pair<std::string, std::string>> echo_settings(Method method,
                                                              const MethodSettings& s) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("reshape", s.reshape.str());
  if (method == Method::kAdmm) {
    out.emplace_back("rho", format_number(s.admm.rho));
    out.emplace_back("step", format_number(s.admm.step));
    out.emplace_back("eps", s.admm.eps ? format_number(*s.admm.eps) : "auto");
    out.emplace_back("k_max", std::to_string(s.admm.k_max));
    out.emplace_back("init_seed", std::to_string(s.admm.init_seed));
    out.emplace_back("init_scale", format_number(s.admm.init_scale));
    out.emplace_back("clamp", s.admm.clamp_observed ? "on" : "off");
  } else if (method == Method::kAls) {
    out.emplace_back("als_rank", std::to_string(s.als.rank));
    out.emplace_back("als_lambda", format_number(s.als.lambda));
    out.emplace_back("als_max_iters", std::to_string(s.als.max_iters));
    out.emplace_back("als_tol", format_number(s.als.tol));
    out.emplace_back("init_seed", std::to_string(s.als.init_seed));
    out.emplace_back("clamp", s.als.clamp_observed ? "on" : "off");
  }
  return out;
}

// Observed matrix as CSV with blank fields at missing entries.
std::string format_observed(const ObservedMatrix& m) {
  std::string out;
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      if (m.mask().observed(r, c)) out += format_number(m.values()(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string format_stats(const std::vector<MaeStats>& stats, MaskRegime regime) {
  std::string out =
      "method,scenario,regime,observed_probability,trials,succeeded,failed,undefined,"
      "mean_mae,min_mae,max_mae\n";
  for (const auto& s : stats) {
    out += s.method + "," + s.scenario + "," + std::string(to_string(regime)) + "," +
           format_number(s.observed_probability) + "," + std::to_string(s.trials) + "," +
           std::to_string(s.per_trial.size()) + "," + std::to_string(s.failed) + "," +
           std::to_string(s.undefined) + "," + format_number(s.mean) + "," +
           format_number(s.min) + "," + format_number(s.max) + "\n";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-rank completion of PMU measurement matrices"};
  app.require_subcommand(1);
  std::string kernels_choice;
  app.add_option("--kernels", kernels_choice, "Force a kernel backend: scalar | avx2 | neon");

  // complete
  auto* complete_cmd = app.add_subcommand("complete", "Recover missing entries of a matrix");
  std::string input, mask_path, truth_path, output, report_path, method_name = "admm",
                                                                 missing = "empty-or-nan";
  complete_cmd->add_option("--input", input, "Observed values CSV")->required();
  complete_cmd->add_option("--mask", mask_path, "Sidecar 0/1 mask CSV (authoritative)");
  complete_cmd->add_option("--missing", missing, "Missing-value policy: empty-or-nan | none")
      ->capture_default_str();
  complete_cmd->add_option("--method", method_name, "admm | als | persistent")
      ->capture_default_str();
  complete_cmd->add_option("--truth", truth_path, "Ground-truth CSV; adds MAE to the report");
  complete_cmd->add_option("--output", output, "Recovered matrix CSV")->required();
  complete_cmd->add_option("--report", report_path, "Run report (key=value)");
  std::string complete_config;
  complete_cmd->add_option("--config", complete_config, "Solver key=value file; flags override it");
  Overrides complete_opts(complete_cmd);
  add_solver_options(complete_opts);

  // simulate
  auto* simulate_cmd = app.add_subcommand("simulate", "Generate a synthetic ground-truth matrix");
  std::string sim_config, sim_output;
  simulate_cmd->add_option("--config", sim_config, "Scenario key=value file");
  simulate_cmd->add_option("--output", sim_output, "Output CSV")->required();
  Overrides simulate_opts(simulate_cmd);
  add_scenario_options(simulate_opts);

  // mask
  auto* mask_cmd = app.add_subcommand("mask", "Remove entries from a complete matrix");
  std::string mask_input, mask_output, mask_sidecar, regime_name = "random", p_text = "0.9",
                                                     mask_seed = "0", channels = "1-9";
  long long t_start = 90, t_end = 200;
  mask_cmd->add_option("--input", mask_input, "Complete matrix CSV")->required();
  mask_cmd->add_option("--regime", regime_name, "random | rows | burst")->capture_default_str();
  mask_cmd->add_option("--p", p_text, "Observed probability (entry or row)")->capture_default_str();
  mask_cmd->add_option("--seed", mask_seed, "Mask seed")->capture_default_str();
  mask_cmd->add_option("--channels", channels, "Burst channels, 1-based (e.g. 1-9)")
      ->capture_default_str();
  mask_cmd->add_option("--t-start", t_start, "Burst first instant, 1-based")->capture_default_str();
  mask_cmd->add_option("--t-end", t_end, "Burst last instant, 1-based")->capture_default_str();
  mask_cmd->add_option("--output", mask_output, "Values CSV, blank where missing")->required();
  mask_cmd->add_option("--mask-output", mask_sidecar, "Sidecar 0/1 mask CSV");

  // svdrank
  auto* svd_cmd = app.add_subcommand("svdrank", "Singular values and approximate rank");
  std::string svd_input;
  double beta = 0.995;
  int top = 10;
  svd_cmd->add_option("--input", svd_input, "Matrix CSV")->required();
  svd_cmd->add_option("--beta", beta, "Frobenius-norm proportion in (0,1]")->capture_default_str();
  svd_cmd->add_option("--top", top, "Number of singular values to print (0 = all)")
      ->capture_default_str();

  // benchmark
  auto* bench_cmd = app.add_subcommand("benchmark", "Monte Carlo MAE study");
  std::string bench_config, bench_output;
  unsigned threads = 1;
  bench_cmd->add_option("--config", bench_config, "Grid key=value file");
  bench_cmd->add_option("--output", bench_output, "Results CSV")->required();
  bench_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  Overrides bench_opts(bench_cmd);
  add_scenario_options(bench_opts);
  add_solver_options(bench_opts);
  bench_opts.option("--regime", "regime", "random | rows | burst (default random)");
  bench_opts.option("--probabilities", "probabilities",
                    "Comma list (default 0.5,0.55,...,0.95)");
  bench_opts.option("--methods", "methods", "Comma list of admm,als,persistent (default admm,als)");
  bench_opts.option("--trials", "trials", "Trials per cell (default 50)");
  bench_opts.option("--base-seed", "base_seed", "Base seed (default 2024)");
  bench_opts.option("--label", "scenario_label", "Scenario label (default synthetic)");
  bench_opts.option("--burst-channels", "burst_channels", "Burst channels (default 1-9)");
  bench_opts.option("--burst-start", "burst_start", "Burst first instant (default 90)");
  bench_opts.option("--burst-end", "burst_end", "Burst last instant (default 200)");

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "ADMM vs ALS vs persistent model on a burst");
  std::string cmp_config, cmp_output, trace_channels = "1";
  long long from = 1, to = 300;
  cmp_cmd->add_option("--config", cmp_config, "Scenario/solver key=value file");
  cmp_cmd->add_option("--trace-channels", trace_channels, "Channels to trace, 1-based")
      ->capture_default_str();
  cmp_cmd->add_option("--from", from, "First traced instant")->capture_default_str();
  cmp_cmd->add_option("--to", to, "Last traced instant")->capture_default_str();
  cmp_cmd->add_option("--output", cmp_output, "Trace CSV")->required();
  Overrides cmp_opts(cmp_cmd);
  add_scenario_options(cmp_opts);
  add_solver_options(cmp_opts);
  cmp_opts.option("--burst-channels", "burst_channels", "Burst channels (default 1-9)");
  cmp_opts.option("--burst-start", "burst_start", "Burst first instant (default 90)");
  cmp_opts.option("--burst-end", "burst_end", "Burst last instant (default 200)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParameter;
  }

  try {
    if (!kernels_choice.empty()) kernels::set_backend(kernels::parse_backend(kernels_choice));

    if (*complete_cmd) {
      KeyValues kv = complete_config.empty() ? KeyValues{} : read_key_values(complete_config);
      complete_opts.apply(kv);
      require_known_keys(kv);
      MethodSettings settings = settings_from(kv);
      MissingPolicy policy;
      if (missing == "empty-or-nan")
        policy = MissingPolicy::kEmptyOrNaN;
      else if (missing == "none")
        policy = MissingPolicy::kNone;
      else
        throw ParameterError("--missing must be empty-or-nan or none");
      const Method method = parse_method(method_name);

      const ObservedMatrix observed = read_observed_csv(
          input, policy,
          mask_path.empty() ? std::nullopt : std::optional<std::filesystem::path>(mask_path));
      std::optional<DenseMatrix> truth;
      if (!truth_path.empty()) {
        truth = read_dense_csv(truth_path);
        require_same_shape(*truth, observed.values(), "truth vs input");
      }

      const Completion c = complete(observed, method, settings);
      write_matrix_csv(c.result.xhat, output);

      RunReport report;
      report.method = std::string(to_string(method));
      report.config = echo_settings(method, settings);
      report.config.insert(report.config.begin(), {"input", input});
      if (!mask_path.empty()) report.config.insert(report.config.begin() + 1, {"mask", mask_path});
      report.config.emplace_back("missing", missing);
      report.converged = c.result.converged;
      report.iterations = c.result.iterations;
      report.final_residual = c.result.final_residual();
      report.elapsed_ms = c.result.elapsed_ms();
      report.plan = c.plan;
      if (truth) report.mae = mae_missing(c.result.xhat, *truth, observed.mask());
      if (!report_path.empty()) write_report(report, report_path);
      std::cout << format_report(report);
      return 0;
    }

    if (*simulate_cmd) {
      KeyValues kv = sim_config.empty() ? KeyValues{} : read_key_values(sim_config);
      simulate_opts.apply(kv);
      require_known_keys(kv);
      const ScenarioSpec spec = scenario_from(kv);
      const DenseMatrix x = generate_synthetic(spec);
      write_matrix_csv(x, sim_output);
      std::cout << "wrote " << x.rows() << "x" << x.cols() << " matrix to " << sim_output << "\n";
      return 0;
    }

    if (*mask_cmd) {
      const DenseMatrix x = read_dense_csv(mask_input);
      const MaskRegime regime = parse_regime(regime_name);
      ObservedMatrix observed;
      if (regime == MaskRegime::kBurst) {
        BurstSpec burst;
        burst.channels = parse_index_list(channels, "channels");
        burst.t_start = t_start;
        burst.t_end = t_end;
        observed = apply_burst_mask(x, burst);
      } else {
        const double p = parse_real(p_text, "p");
        const auto seed = parse_seed(mask_seed, "seed");
        observed = regime == MaskRegime::kRandom ? apply_random_mask(x, p, seed)
                                                 : apply_row_mask(x, p, seed);
      }
      write_text_file(mask_output, format_observed(observed));
      if (!mask_sidecar.empty()) write_mask_csv(observed.mask(), mask_sidecar);
      std::cout << "missing " << observed.mask().missing_count() << " of "
                << observed.mask().size() << " entries\n";
      return 0;
    }

    if (*svd_cmd) {
      const DenseMatrix x = read_dense_csv(svd_input);
      const SingularSpectrum s = singular_values(x);
      const int r = approximate_rank(s, beta);
      const std::size_t shown =
          top <= 0 ? s.size() : std::min<std::size_t>(s.size(), static_cast<std::size_t>(top));
      std::cout << "shape=" << x.rows() << "x" << x.cols() << "\n";
      std::cout << "beta=" << format_number(beta) << "\n";
      std::cout << "approximate_rank=" << r << "\n";
      std::cout << "numerical_rank=" << s.numerical_rank() << "\n";
      for (std::size_t i = 0; i < shown; ++i)
        std::cout << "sigma_" << (i + 1) << "=" << format_number(s.values[i]) << "\n";
      return 0;
    }

    if (*bench_cmd) {
      KeyValues kv = bench_config.empty() ? KeyValues{} : read_key_values(bench_config);
      bench_opts.apply(kv);
      if (auto it = kv.find("threads"); it != kv.end()) {
        if (bench_cmd->count("--threads") == 0)
          threads = static_cast<unsigned>(parse_integer(it->second, "threads"));
        kv.erase(it);
      }
      const BenchmarkGrid grid = grid_from(kv);
      const auto stats = run_monte_carlo(grid, threads);
      const std::string table = format_stats(stats, grid.regime);
      write_text_file(bench_output, table);
      std::cout << table;
      return 0;
    }

    if (*cmp_cmd) {
      KeyValues kv = cmp_config.empty() ? KeyValues{} : read_key_values(cmp_config);
      cmp_opts.apply(kv);
      require_known_keys(kv);
      const ScenarioSpec spec = scenario_from(kv);
      const MethodSettings settings = settings_from(kv);
      BurstSpec burst = default_burst();
      if (kv.contains("burst_channels"))
        burst.channels = parse_index_list(kv.at("burst_channels"), "burst_channels");
      if (kv.contains("burst_start")) burst.t_start = parse_integer(kv.at("burst_start"), "burst_start");
      if (kv.contains("burst_end")) burst.t_end = parse_integer(kv.at("burst_end"), "burst_end");
      const auto traced = parse_index_list(trace_channels, "trace-channels");

      const MethodComparison cmp = compare_methods(spec, burst, traced, from, to, settings);
      std::string csv = "channel,instant,truth,admm,als,persistent\n";
      for (const auto& tr : cmp.traces)
        for (std::size_t i = 0; i < tr.instants.size(); ++i)
          csv += std::to_string(tr.channel) + "," + std::to_string(tr.instants[i]) + "," +
                 format_number(tr.truth[i]) + "," + format_number(tr.admm[i]) + "," +
                 format_number(tr.als[i]) + "," + format_number(tr.persistent[i]) + "\n";
      write_text_file(cmp_output, csv);
      auto show = [](const std::optional<double>& v) {
        return v ? format_number(*v) : std::string("undefined");
      };
      std::cout << "admm_mae=" << show(cmp.admm_mae) << "\n"
                << "als_mae=" << show(cmp.als_mae) << "\n"
                << "persistent_mae=" << show(cmp.persistent_mae) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return 0;
}
