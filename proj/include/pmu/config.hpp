#pragma once

// Flat key=value text: one pair per line, '#' starts a comment, blank
// lines ignored, surrounding whitespace trimmed. Later keys override
// earlier ones.
//
// Scenario keys:  rows cols signal_rank noise_var seed event(on|off)
//                 event_onset event_damping event_frequency event_amplitude
// Grid keys:      regime probabilities methods trials base_seed reshape
//                 scenario_label burst_channels burst_start burst_end threads
// Solver keys:    rho step eps k_max init_scale clamp als_rank als_lambda
//                 als_max_iters als_tol

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pmu/harness.hpp"

namespace pmu {

using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::string_view text, std::string_view source = "<string>");
KeyValues read_key_values(const std::filesystem::path& path);

/// Keys not recognised by any of the readers below raise ParameterError.
void require_known_keys(const KeyValues& kv);

ScenarioSpec scenario_from(const KeyValues& kv, ScenarioSpec base = {});
MethodSettings settings_from(const KeyValues& kv, MethodSettings base = {});
BenchmarkGrid grid_from(const KeyValues& kv, BenchmarkGrid base = {});

/// Round-trips through scenario_from.
KeyValues to_key_values(const ScenarioSpec& spec);

double parse_real(std::string_view s, std::string_view key);
long long parse_integer(std::string_view s, std::string_view key);
std::uint64_t parse_seed(std::string_view s, std::string_view key);
std::vector<double> parse_real_list(std::string_view s, std::string_view key);
/// "1-9", "1,3,5" or a mix such as "1-3,7".
std::vector<Index> parse_index_list(std::string_view s, std::string_view key);

}  // namespace pmu
