// SPDX-License-Identifier: MIT
//
// CLI settings for the three subcommands. Every tunable is addressed by a
// snake_case key; the same apply_*() path serves the key=value config file
// and the command-line flags, so precedence is plain layering:
//   defaults -> preset -> config file -> flags.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mrt/ida.hpp"
#include "mrt/simulate.hpp"

namespace mrtcli {

// One key=value assignment (from a config file line or a flag).
struct KeyValue {
  std::string key;
  std::string value;
};

// Parse a flat key=value file: one assignment per line, '#' comments and
// blank lines skipped. Throws mrt::parse_error with the line number on
// malformed lines and io-mapped errors if the file cannot be read.
std::vector<KeyValue> read_config_file(const std::string& path);

// ---------------------------------------------------------------- simulate

struct SimulateSettings {
  std::string model = "on-off";
  std::uint64_t users = 1;
  int bins_log2 = 14;
  std::uint64_t seed = 1;
  double bin_width = 1.0;

  double load_p = 1.4;
  double load_scale = 1.0;
  std::string off_family = "exponential";
  double off_mean = 8.0;
  double off_spread = 0.0;
  std::string rtt_family = "exponential";
  double rtt_mean = 4.0;
  double rtt_spread = 0.0;
  bool rtt_spikes = true;
  std::uint64_t slow_start_max = 32;
  // Pipe-separated level list "on:off:family[:spread]", coarsest first.
  std::string levels;
  std::uint64_t rtt_level_count = 0;
  double burn_in_cycles = 10.0;
  std::string height_family = "exponential";
  double height_mean = 1.0;
  double height_spread = 0.0;
  double spike_gap_mean = 100.0;
  double spike_height_mean = 0.5;
  bool spike_heavy = false;
  double iid_mean = 1.0;
};

// Set one key. Throws std::invalid_argument naming the key on unknown keys
// or unparsable values.
void apply_simulate_key(SimulateSettings& s, const std::string& key,
                        const std::string& value);

// Named parameter bundles (models with their customary knobs). Throws
// std::invalid_argument on unknown names. Names: 0-1, rh, rh-ht, arr,
// arrrh, exp-iid, ht-iid, 8, 8s, 12, 7/12/17.
void apply_preset(SimulateSettings& s, const std::string& name);

// Build the library config (validates via the same key-named errors).
mrt::SimConfig materialize(const SimulateSettings& s);

// Full resolved configuration, every default materialized.
nlohmann::json resolved_json(const SimulateSettings& s);

// ----------------------------------------------------------------- analyze

struct AnalyzeSettings {
  std::string analyses = "averaging,energy,autocorr,kolmogorov";
  int definition = 2;  // 1 = disjoint blocks, 2 = circular blocks
  double p = 2.0;
  std::uint64_t window = 512;
  double bin_width = 1.0;
  std::uint64_t max_lag = 256;
  double epsilon = 0.01;     // tool1 curvature floor
  double threshold = -0.1;   // tool2 flatness threshold
  int k = 0;                 // tool3/4 scale count; 0 = per-tool default
  int s = 9;                 // tool4 window exponent
  bool force = false;        // override tool3/4 guard rails
};

void apply_analyze_key(AnalyzeSettings& s, const std::string& key,
                       const std::string& value);

// The analysis list, validated and deduplicated, in canonical run order.
std::vector<std::string> analysis_list(const AnalyzeSettings& s);

nlohmann::json resolved_json(const AnalyzeSettings& s);

// --------------------------------------------------------------------- ida

struct IdaSettings {
  double base = 2.0;
  double gamma = 0.1;
  double c1 = 3.0;
  double c2 = 0.3;
  double epsilon = 1e-12;  // contrast floor
  bool global_stage = false;
  double bin_width = 1.0;
  std::string connection;  // "src:sport->dst:dport" within a connection file
  bool aggregate = false;
};

void apply_ida_key(IdaSettings& s, const std::string& key,
                   const std::string& value);

mrt::IdaConfig materialize(const IdaSettings& s);

nlohmann::json resolved_json(const IdaSettings& s);

// ----------------------------------------------------------------- helpers

// Parse the pipe-separated level list. Throws std::invalid_argument with
// the offending entry on any violation.
std::vector<mrt::LevelSpec> parse_levels(const std::string& text);

// Strict scalar parsers (whole token must parse); used by the apply_*
// functions and handy for tests.
double parse_double_value(const std::string& key, const std::string& value);
std::uint64_t parse_u64_value(const std::string& key,
                              const std::string& value);
int parse_int_value(const std::string& key, const std::string& value);
bool parse_bool_value(const std::string& key, const std::string& value);

}  // namespace mrtcli
