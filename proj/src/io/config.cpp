#include "pmu/config.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include "pmu/csv.hpp"
#include "pmu/error.hpp"

namespace pmu {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expected) {
  throw ParameterError("key '" + std::string(key) + "': expected " + expected + ", got '" +
                       std::string(value) + "'");
}

bool parse_switch(std::string_view s, std::string_view key) {
  if (s == "on" || s == "true" || s == "1" || s == "yes") return true;
  if (s == "off" || s == "false" || s == "0" || s == "no") return false;
  bad_value(key, s, "on or off");
}

const std::set<std::string, std::less<>>& known_keys() {
  static const std::set<std::string, std::less<>> keys = {
      "rows",          "cols",        "signal_rank",   "noise_var",       "seed",
      "event",         "event_onset", "event_damping", "event_frequency", "event_amplitude",
      "regime",        "probabilities", "methods",     "trials",          "base_seed",
      "reshape",       "scenario_label", "burst_channels", "burst_start", "burst_end",
      "threads",       "rho",         "step",          "eps",             "k_max",
      "init_scale",    "clamp",       "als_rank",      "als_lambda",      "als_max_iters",
      "als_tol",       "init_seed"};
  return keys;
}

template <typename F>
void with(const KeyValues& kv, std::string_view key, F&& apply) {
  if (auto it = kv.find(std::string(key)); it != kv.end()) apply(it->second);
}

}  // namespace

KeyValues parse_key_values(std::string_view text, std::string_view source) {
  KeyValues kv;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos || trim(line.substr(0, eq)).empty())
      throw ParameterError(std::string(source) + ":" + std::to_string(line_no) +
                           ": expected key=value");
    kv[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
  }
  return kv;
}

KeyValues read_key_values(const std::filesystem::path& path) {
  return parse_key_values(read_text_file(path), path.string());
}

void require_known_keys(const KeyValues& kv) {
  for (const auto& [k, v] : kv)
    if (!known_keys().contains(k)) throw ParameterError("unknown configuration key '" + k + "'");
}

double parse_real(std::string_view s, std::string_view key) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    bad_value(key, s, "a finite real number");
  return v;
}

long long parse_integer(std::string_view s, std::string_view key) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) bad_value(key, s, "an integer");
  return v;
}

std::uint64_t parse_seed(std::string_view s, std::string_view key) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) bad_value(key, s, "an unsigned 64-bit seed");
  return v;
}

std::vector<double> parse_real_list(std::string_view s, std::string_view key) {
  std::vector<double> out;
  for (auto part : split(s, ',')) out.push_back(parse_real(part, key));
  return out;
}

std::vector<Index> parse_index_list(std::string_view s, std::string_view key) {
  std::vector<Index> out;
  if (trim(s).empty()) return out;
  for (auto part : split(s, ',')) {
    const auto dash = part.find('-');
    if (dash == std::string_view::npos) {
      out.push_back(parse_integer(part, key));
      continue;
    }
    const auto lo = parse_integer(trim(part.substr(0, dash)), key);
    const auto hi = parse_integer(trim(part.substr(dash + 1)), key);
    if (lo > hi) bad_value(key, part, "an ascending range lo-hi");
    for (auto i = lo; i <= hi; ++i) out.push_back(i);
  }
  return out;
}

ScenarioSpec scenario_from(const KeyValues& kv, ScenarioSpec spec) {
  with(kv, "rows", [&](const std::string& v) { spec.rows = parse_integer(v, "rows"); });
  with(kv, "cols", [&](const std::string& v) { spec.cols = parse_integer(v, "cols"); });
  with(kv, "signal_rank",
       [&](const std::string& v) { spec.signal_rank = static_cast<int>(parse_integer(v, "signal_rank")); });
  with(kv, "noise_var", [&](const std::string& v) { spec.noise_var = parse_real(v, "noise_var"); });
  with(kv, "seed", [&](const std::string& v) { spec.seed = parse_seed(v, "seed"); });
  with(kv, "event", [&](const std::string& v) {
    if (!parse_switch(v, "event"))
      spec.event.reset();
    else if (!spec.event)
      spec.event = EventSpec{};
  });
  auto event_field = [&](const char* key, auto&& set) {
    with(kv, key, [&](const std::string& v) {
      if (!spec.event) spec.event = EventSpec{};
      set(*spec.event, v);
    });
  };
  if (!kv.contains("event") || spec.event) {
    event_field("event_onset", [](EventSpec& e, const std::string& v) { e.onset = parse_integer(v, "event_onset"); });
    event_field("event_damping", [](EventSpec& e, const std::string& v) { e.damping = parse_real(v, "event_damping"); });
    event_field("event_frequency", [](EventSpec& e, const std::string& v) { e.frequency = parse_real(v, "event_frequency"); });
    event_field("event_amplitude", [](EventSpec& e, const std::string& v) { e.amplitude = parse_real(v, "event_amplitude"); });
  }
  spec.validate();
  return spec;
}

MethodSettings settings_from(const KeyValues& kv, MethodSettings s) {
  with(kv, "rho", [&](const std::string& v) { s.admm.rho = parse_real(v, "rho"); });
  with(kv, "step", [&](const std::string& v) { s.admm.step = parse_real(v, "step"); });
  with(kv, "eps", [&](const std::string& v) {
    if (v == "auto")
      s.admm.eps.reset();
    else
      s.admm.eps = parse_real(v, "eps");
  });
  with(kv, "k_max", [&](const std::string& v) { s.admm.k_max = static_cast<int>(parse_integer(v, "k_max")); });
  with(kv, "init_seed", [&](const std::string& v) {
    s.admm.init_seed = s.als.init_seed = parse_seed(v, "init_seed");
  });
  with(kv, "init_scale", [&](const std::string& v) { s.admm.init_scale = parse_real(v, "init_scale"); });
  with(kv, "clamp", [&](const std::string& v) {
    s.admm.clamp_observed = s.als.clamp_observed = parse_switch(v, "clamp");
  });
  with(kv, "als_rank", [&](const std::string& v) { s.als.rank = static_cast<int>(parse_integer(v, "als_rank")); });
  with(kv, "als_lambda", [&](const std::string& v) { s.als.lambda = parse_real(v, "als_lambda"); });
  with(kv, "als_max_iters", [&](const std::string& v) { s.als.max_iters = static_cast<int>(parse_integer(v, "als_max_iters")); });
  with(kv, "als_tol", [&](const std::string& v) { s.als.tol = parse_real(v, "als_tol"); });
  with(kv, "reshape", [&](const std::string& v) { s.reshape = ReshapeMode::parse(v); });
  s.admm.validate();
  s.als.validate();
  return s;
}

BenchmarkGrid grid_from(const KeyValues& kv, BenchmarkGrid g) {
  require_known_keys(kv);
  g.scenario = scenario_from(kv, g.scenario);
  g.settings = settings_from(kv, g.settings);
  with(kv, "scenario_label", [&](const std::string& v) { g.scenario_label = v; });
  with(kv, "regime", [&](const std::string& v) { g.regime = parse_regime(v); });
  with(kv, "probabilities", [&](const std::string& v) { g.probabilities = parse_real_list(v, "probabilities"); });
  with(kv, "methods", [&](const std::string& v) {
    g.methods.clear();
    for (auto part : split(v, ',')) g.methods.push_back(parse_method(part));
  });
  with(kv, "trials", [&](const std::string& v) { g.trials = static_cast<int>(parse_integer(v, "trials")); });
  with(kv, "base_seed", [&](const std::string& v) { g.base_seed = parse_seed(v, "base_seed"); });
  with(kv, "burst_channels", [&](const std::string& v) { g.burst.channels = parse_index_list(v, "burst_channels"); });
  with(kv, "burst_start", [&](const std::string& v) { g.burst.t_start = parse_integer(v, "burst_start"); });
  with(kv, "burst_end", [&](const std::string& v) { g.burst.t_end = parse_integer(v, "burst_end"); });
  g.validate();
  return g;
}

KeyValues to_key_values(const ScenarioSpec& spec) {
  KeyValues kv;
  kv["rows"] = std::to_string(spec.rows);
  kv["cols"] = std::to_string(spec.cols);
  kv["signal_rank"] = std::to_string(spec.signal_rank);
  kv["noise_var"] = format_number(spec.noise_var);
  kv["seed"] = std::to_string(spec.seed);
  kv["event"] = spec.event ? "on" : "off";
  if (spec.event) {
    kv["event_onset"] = std::to_string(spec.event->onset);
    kv["event_damping"] = format_number(spec.event->damping);
    kv["event_frequency"] = format_number(spec.event->frequency);
    kv["event_amplitude"] = format_number(spec.event->amplitude);
  }
  return kv;
}

}  // namespace pmu
