// SPDX-License-Identifier: MIT
//
// mrt — batch front end for the multiresolution traffic library.
//
//   mrt simulate ...   generate a synthetic binned trace
//   mrt analyze  ...   multiresolution / gaussianity analyses of a trace
//   mrt ida      ...   interval-structure image of a 0/1 session
//
// Every tunable can come from a key=value config file (--config) or a flag;
// precedence is defaults -> preset -> config file -> flags. Each run writes
// its outputs plus a manifest.json (written last: its presence marks a
// completed run).
//
// Exit codes: 0 ok; 2 bad usage/arguments; 3 malformed or empty input;
// 4 degenerate data; 5 not enough data; 6 I/O failure; 1 unexpected.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mrt/errors.hpp"
#include "mrt/gaussianity.hpp"
#include "mrt/ida.hpp"
#include "mrt/ingest.hpp"
#include "mrt/level_tools.hpp"
#include "mrt/multires.hpp"
#include "mrt/simulate.hpp"
#include "mrt/trace.hpp"
#include "mrtcli/io.hpp"
#include "mrtcli/settings.hpp"

#ifndef MRT_VERSION
#define MRT_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using mrtcli::KeyValue;

namespace {

// ------------------------------------------------------------ flag tables

struct OptSpec {
  const char* flag;
  const char* key;
  const char* help;
};

struct FlagSpec {
  const char* flag;   // may carry a !--no-… alias
  const char* probe;  // name to query with count()
  const char* key;
  const char* help;
};

const std::vector<OptSpec> kSimulateOpts = {
    {"--model", "model", "traffic model"},
    {"--users", "users", "number of superposed users"},
    {"--bins-log2", "bins_log2", "trace length as log2(bins)"},
    {"--seed", "seed", "RNG seed"},
    {"--bin-width", "bin_width", "seconds per bin"},
    {"--load-p", "load_p", "heavy-tail index of the per-burst load"},
    {"--load-scale", "load_scale", "scale of the per-burst load"},
    {"--off-family", "off_family", "OFF-period family"},
    {"--off-mean", "off_mean", "OFF-period mean (bins)"},
    {"--off-spread", "off_spread", "OFF-period spread (family specific)"},
    {"--rtt-family", "rtt_family", "RTT gap family"},
    {"--rtt-mean", "rtt_mean", "RTT gap mean (bins)"},
    {"--rtt-spread", "rtt_spread", "RTT gap spread (family specific)"},
    {"--slow-start-max", "slow_start_max", "doubling cap M (packets/burst)"},
    {"--levels", "levels", "session levels 'on:off:family[:spread]|…'"},
    {"--rtt-level-count", "rtt_level_count",
     "finest levels that packetize with RTT gaps"},
    {"--burn-in-cycles", "burn_in_cycles", "warm-up before the recorded span"},
    {"--height-family", "height_family", "per-bin height family"},
    {"--height-mean", "height_mean", "per-bin height mean"},
    {"--height-spread", "height_spread", "per-bin height spread"},
    {"--spike-gap-mean", "spike_gap_mean", "spike layer mean gap (bins)"},
    {"--spike-height-mean", "spike_height_mean", "spike layer mean height"},
    {"--iid-mean", "iid_mean", "mean of the iid baselines"},
};

const std::vector<FlagSpec> kSimulateFlags = {
    {"--rtt-spikes,!--no-rtt-spikes", "--rtt-spikes", "rtt_spikes",
     "keep (or drop) the RTT spike layer"},
    {"--spike-heavy,!--no-spike-heavy", "--spike-heavy", "spike_heavy",
     "heavy-tailed spike heights"},
};

const std::vector<OptSpec> kAnalyzeOpts = {
    {"--analyses", "analyses",
     "comma list: averaging,energy,autocorr,kolmogorov,tool1..tool4,all"},
    {"--definition", "definition",
     "block scheme: 1 = disjoint dyadic, 2 = circular overlapping"},
    {"--p", "p", "averaging exponent"},
    {"--window", "window", "Kolmogorov window size (bins)"},
    {"--bin-width", "bin_width", "seconds per bin when binning packet logs"},
    {"--max-lag", "max_lag", "autocorrelation maximum lag"},
    {"--epsilon", "epsilon", "tool1 curvature floor"},
    {"--threshold", "threshold", "tool2 flatness threshold (log2 slope)"},
    {"--k", "k", "tool3/tool4 aggregation scales (0 = auto)"},
    {"--s", "s", "tool4 window exponent (windows of 2^s bins)"},
};

const std::vector<FlagSpec> kAnalyzeFlags = {
    {"--force", "--force", "force", "override tool3/tool4 guard rails"},
};

const std::vector<OptSpec> kIdaOpts = {
    {"--base", "base", "interval class base b (> 1)"},
    {"--gamma", "gamma", "stage-pick drop threshold in (0,1)"},
    {"--c1", "c1", "contrast constant c1 (> c2)"},
    {"--c2", "c2", "contrast constant c2 (> 0)"},
    {"--epsilon", "epsilon", "contrast floor"},
    {"--bin-width", "bin_width", "seconds per bin when binning packet logs"},
    {"--connection", "connection",
     "pick one connection 'src:sport->dst:dport' from a connection log"},
};

const std::vector<FlagSpec> kIdaFlags = {
    {"--global-stage", "--global-stage", "global_stage",
     "normalize every class by the dominant row's stage pick"},
    {"--aggregate", "--aggregate", "aggregate",
     "superpose all sessions (directory input or per-connection log)"},
};

// Registers the table options on a subcommand; storage lives in the maps.
void register_options(CLI::App* sub, const std::vector<OptSpec>& opts,
                      const std::vector<FlagSpec>& flags,
                      std::map<std::string, std::string>& text,
                      std::map<std::string, bool>& toggles) {
  for (const OptSpec& o : opts) sub->add_option(o.flag, text[o.key], o.help);
  for (const FlagSpec& f : flags)
    sub->add_flag(f.flag, toggles[f.key], f.help);
}

// Collects the flags that were actually given, as key=value assignments.
std::vector<KeyValue> given_assignments(
    CLI::App* sub, const std::vector<OptSpec>& opts,
    const std::vector<FlagSpec>& flags,
    const std::map<std::string, std::string>& text,
    const std::map<std::string, bool>& toggles) {
  std::vector<KeyValue> out;
  for (const OptSpec& o : opts)
    if (sub->count(o.flag) > 0) out.push_back({o.key, text.at(o.key)});
  for (const FlagSpec& f : flags)
    if (sub->count(f.probe) > 0)
      out.push_back({f.key, toggles.at(f.key) ? "true" : "false"});
  return out;
}

// Splits a config file into its preset assignment (last one wins) and the
// remaining keys, preserving order.
void read_layered_config(const std::string& path, std::string& preset,
                         std::vector<KeyValue>& keys) {
  for (KeyValue& kv : mrtcli::read_config_file(path)) {
    if (kv.key == "preset")
      preset = kv.value;
    else
      keys.push_back(std::move(kv));
  }
}

// --------------------------------------------------------------- ingestion

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw mrtcli::io_error("cannot open input: " + path.string());
  return in;
}

std::size_t probe_tokens(const fs::path& path) {
  std::ifstream in = open_input(path);
  return mrt::first_line_token_count(in);
}

// Loads any accepted text format as a binned trace. Format by first line:
// 1 column = pre-binned values, 2 = timestamp/size packet log, 6 = packet
// log with connection ids (all connections merged).
mrt::BinnedTrace load_binned(const fs::path& path, double bin_width) {
  const std::size_t tokens = probe_tokens(path);
  if (tokens == 0)
    throw mrt::empty_input_error("input has no data lines: " + path.string());
  std::ifstream in = open_input(path);
  if (tokens == 1) return mrt::parse_prebinned(in, bin_width);
  if (tokens == 2) return mrt::bin(mrt::parse_timestamp_size(in), bin_width);
  if (tokens == 6) return mrt::bin(mrt::parse_all_connections(in), bin_width);
  throw mrt::parse_error("unrecognized input format (expected 1, 2 or 6 "
                         "columns, got " + std::to_string(tokens) + ")", 1);
}

mrt::SessionBitmap bitmap_of(const mrt::BinnedTrace& trace) {
  mrt::SessionBitmap b;
  b.bin_width = trace.bin_width;
  b.bits.reserve(trace.values.size());
  for (double v : trace.values) b.bits.push_back(v != 0.0 ? 1 : 0);
  return b;
}

// Loads one single-session file (formats 1 and 2 only) as a 0/1 bitmap.
mrt::SessionBitmap load_session_bitmap(const fs::path& path,
                                       double bin_width) {
  const std::size_t tokens = probe_tokens(path);
  if (tokens == 0)
    throw mrt::empty_input_error("input has no data lines: " + path.string());
  std::ifstream in = open_input(path);
  if (tokens == 1) return bitmap_of(mrt::parse_prebinned(in, bin_width));
  if (tokens == 2)
    return mrt::to_bitmap(mrt::parse_timestamp_size(in), bin_width);
  if (tokens == 6)
    throw std::invalid_argument(
        "session files must hold a single session (1 or 2 columns); '" +
        path.string() + "' looks like a connection log");
  throw mrt::parse_error("unrecognized input format (expected 1 or 2 "
                         "columns, got " + std::to_string(tokens) + ")", 1);
}

// ------------------------------------------------------------- subcommands

int run_simulate(const mrtcli::SimulateSettings& s, const fs::path& dir) {
  const mrt::SimConfig cfg = mrtcli::materialize(s);
  const mrt::BinnedTrace trace = mrt::simulate(cfg);

  fs::create_directories(dir);
  mrtcli::Manifest manifest("simulate", mrtcli::resolved_json(s));
  manifest.set_seed(s.seed);

  const fs::path trace_path = dir / "trace.txt";
  mrtcli::write_text_file(trace_path, mrtcli::trace_text(trace));
  manifest.add_output("trace.txt", trace_path);
  manifest.write(dir / "manifest.json");
  std::cout << "wrote " << (dir / "manifest.json").string() << " ("
            << trace.values.size() << " bins)\n";
  return 0;
}

int run_analyze(const mrtcli::AnalyzeSettings& s, const fs::path& input,
                const fs::path& dir) {
  const std::vector<std::string> analyses = mrtcli::analysis_list(s);
  if (s.definition != 1 && s.definition != 2)
    throw std::invalid_argument("key 'definition': must be 1 or 2");
  const bool disjoint = s.definition == 1;

  const mrt::BinnedTrace trace = load_binned(input, s.bin_width);
  const mrt::DyadicView x = mrt::truncate_to_power_of_two(trace);
  if (x.values.size() != trace.values.size())
    std::cerr << "note: dyadic analyses use the first " << x.values.size()
              << " of " << trace.values.size() << " bins (2^" << x.m << ")\n";

  // The averaging profile is shared by tool1/tool2; compute it only once.
  std::optional<mrt::MultiresProfile> averaging;
  const auto need_averaging = [&]() -> const mrt::MultiresProfile& {
    if (!averaging)
      averaging = disjoint ? mrt::averaging_disjoint(x, s.p)
                           : mrt::averaging_circular(x, s.p);
    return *averaging;
  };

  fs::create_directories(dir);
  mrtcli::Manifest manifest("analyze", mrtcli::resolved_json(s));
  manifest.add_input(input);

  std::optional<double> tool3_d;
  std::optional<double> tool4_o;
  std::vector<std::pair<std::string, std::string>> outputs;

  for (const std::string& analysis : analyses) {
    if (analysis == "averaging") {
      outputs.emplace_back("averaging.csv",
                           mrtcli::profile_csv(need_averaging()));
    } else if (analysis == "energy") {
      const mrt::MultiresProfile energy =
          disjoint ? mrt::energy_disjoint(x) : mrt::energy_circular(x);
      outputs.emplace_back("energy.csv", mrtcli::profile_csv(energy));
    } else if (analysis == "autocorr") {
      std::size_t max_lag = s.max_lag;
      const std::size_t n = trace.values.size();
      if (n >= 2 && max_lag >= n) {
        max_lag = n - 1;
        std::cerr << "note: max_lag clamped to " << max_lag
                  << " (trace has " << n << " bins)\n";
      }
      const mrt::AutocorrSeries series =
          mrt::autocorrelation(trace.values, max_lag);
      outputs.emplace_back("autocorr.csv", mrtcli::autocorr_csv(series));
    } else if (analysis == "kolmogorov") {
      const mrt::KolmogorovSeries series =
          mrt::windowed_kolmogorov(trace, s.window);
      outputs.emplace_back("kolmogorov.csv", mrtcli::kolmogorov_csv(series));
    } else if (analysis == "tool1") {
      const mrt::SlopeSeries r =
          mrt::tool1_level_detector(need_averaging(), s.epsilon);
      outputs.emplace_back("tool1.json", mrtcli::tool1_json(r).dump(2) + "\n");
    } else if (analysis == "tool2") {
      const mrt::FlatRegions r =
          mrt::tool2_flat_regions(need_averaging(), s.threshold);
      outputs.emplace_back("tool2.json", mrtcli::tool2_json(r).dump(2) + "\n");
    } else if (analysis == "tool3") {
      int k = s.k;
      if (k <= 0) {
        k = x.m - 10;
        if (k < 1)
          throw std::invalid_argument(
              "key 'k': trace too short to pick tool3 scales automatically "
              "(2^" + std::to_string(x.m) + " bins, need 2^11); pass --k "
              "with --force to override");
      }
      const mrt::BurstinessReport r =
          mrt::tool3_gaussian_deviation(x, k, s.force);
      tool3_d = r.D;
      outputs.emplace_back("tool3.json", mrtcli::tool3_json(r).dump(2) + "\n");
    } else if (analysis == "tool4") {
      int k = s.k;
      if (k <= 0) {
        k = x.m - s.s - 7;
        if (k < 1)
          throw std::invalid_argument(
              "key 'k': trace too short to pick tool4 scales automatically "
              "(2^" + std::to_string(x.m) + " bins, s = " +
              std::to_string(s.s) + " needs 2^" + std::to_string(s.s + 8) +
              "); pass --k with --force to override");
      }
      const mrt::BurstinessReport r = mrt::tool4_burstiness(x, k, s.s, s.force);
      tool4_o = r.O;
      outputs.emplace_back("tool4.json", mrtcli::tool4_json(r).dump(2) + "\n");
    }
  }

  if (tool3_d || tool4_o)
    outputs.emplace_back(
        "burstiness.csv",
        mrtcli::burstiness_csv(input.filename().string(), tool3_d, tool4_o));

  for (const auto& [name, content] : outputs) {
    const fs::path path = dir / name;
    mrtcli::write_text_file(path, content);
    manifest.add_output(name, path);
  }
  manifest.write(dir / "manifest.json");
  std::cout << "wrote " << (dir / "manifest.json").string() << " ("
            << outputs.size() << " output file(s))\n";
  return 0;
}

int run_ida(const mrtcli::IdaSettings& s, const fs::path& input,
            const fs::path& dir) {
  const mrt::IdaConfig cfg = mrtcli::materialize(s);
  if (s.aggregate && !s.connection.empty())
    throw std::invalid_argument(
        "--aggregate and --connection are mutually exclusive");

  fs::create_directories(dir);
  mrtcli::Manifest manifest("ida", mrtcli::resolved_json(s));
  mrt::IdaResult result;

  if (fs::is_directory(input)) {
    if (!s.aggregate)
      throw std::invalid_argument(
          "input is a directory; pass --aggregate to superpose its sessions");
    std::vector<fs::path> files;
    for (const fs::directory_entry& e : fs::directory_iterator(input))
      if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty())
      throw mrt::empty_input_error("no session files in directory: " +
                                   input.string());
    std::vector<mrt::IdaResult> parts;
    for (const fs::path& f : files) {
      const mrt::SessionBitmap bitmap = load_session_bitmap(f, s.bin_width);
      manifest.add_input(f);
      try {
        parts.push_back(mrt::run_ida(bitmap, cfg));
      } catch (const mrt::degenerate_data_error& e) {
        std::cerr << "warning: skipping " << f.string() << ": " << e.what()
                  << "\n";
      } catch (const mrt::insufficient_data_error& e) {
        std::cerr << "warning: skipping " << f.string() << ": " << e.what()
                  << "\n";
      }
    }
    if (parts.empty())
      throw mrt::degenerate_data_error(
          "every session in the directory was degenerate or too short");
    result = mrt::aggregate_ida(parts);
  } else {
    const std::size_t tokens = probe_tokens(input);
    manifest.add_input(input);
    if (tokens == 6) {
      std::ifstream in = open_input(input);
      const std::map<mrt::ConnectionKey, mrt::PacketTrace> connections =
          mrt::parse_connections(in);
      if (!s.connection.empty()) {
        const mrt::PacketTrace* picked = nullptr;
        for (const auto& [key, pt] : connections)
          if (mrt::to_string(key) == s.connection) {
            picked = &pt;
            break;
          }
        if (!picked)
          throw std::invalid_argument(
              "connection '" + s.connection + "' not found (log holds " +
              std::to_string(connections.size()) + " connection(s))");
        result = mrt::run_ida(mrt::to_bitmap(*picked, s.bin_width), cfg);
      } else if (s.aggregate) {
        std::vector<mrt::IdaResult> parts;
        for (const auto& [key, pt] : connections) {
          try {
            parts.push_back(
                mrt::run_ida(mrt::to_bitmap(pt, s.bin_width), cfg));
          } catch (const mrt::degenerate_data_error& e) {
            std::cerr << "warning: skipping " << mrt::to_string(key) << ": "
                      << e.what() << "\n";
          } catch (const mrt::insufficient_data_error& e) {
            std::cerr << "warning: skipping " << mrt::to_string(key) << ": "
                      << e.what() << "\n";
          }
        }
        if (parts.empty())
          throw mrt::degenerate_data_error(
              "every connection in the log was degenerate or too short");
        result = mrt::aggregate_ida(parts);
      } else if (connections.size() == 1) {
        result = mrt::run_ida(
            mrt::to_bitmap(connections.begin()->second, s.bin_width), cfg);
      } else {
        throw std::invalid_argument(
            "log holds " + std::to_string(connections.size()) +
            " connections; pass --connection to pick one or --aggregate to "
            "superpose them");
      }
    } else {
      result = mrt::run_ida(load_session_bitmap(input, s.bin_width), cfg);
    }
  }

  const fs::path csv_path = dir / "ida.csv";
  const fs::path json_path = dir / "ida.json";
  const fs::path pgm_path = dir / "ida.pgm";
  mrtcli::write_text_file(csv_path, mrtcli::ida_csv(result));
  manifest.add_output("ida.csv", csv_path);
  mrtcli::write_text_file(json_path, mrtcli::ida_json(result).dump(2) + "\n");
  manifest.add_output("ida.json", json_path);
  mrtcli::write_text_file(pgm_path, mrtcli::ida_pgm(result));
  manifest.add_output("ida.pgm", pgm_path);
  manifest.write(dir / "manifest.json");
  std::cout << "wrote " << (dir / "manifest.json").string() << " ("
            << result.classes() << " classes x " << result.stages()
            << " stages)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiresolution traffic-trace toolkit"};
  app.set_version_flag("--version,-V", std::string(MRT_VERSION));
  app.require_subcommand(1);

  std::map<std::string, std::string> sim_text, ana_text, ida_text;
  std::map<std::string, bool> sim_toggles, ana_toggles, ida_toggles;
  std::string sim_preset, sim_config, sim_out = ".";
  std::string ana_config, ana_out = ".", ana_input;
  std::string ida_config, ida_out = ".", ida_input;

  CLI::App* sim =
      app.add_subcommand("simulate", "generate a synthetic binned trace");
  register_options(sim, kSimulateOpts, kSimulateFlags, sim_text, sim_toggles);
  sim->add_option("--preset", sim_preset, "named parameter bundle");
  sim->add_option("--config", sim_config, "key=value config file");
  sim->add_option("--out-dir", sim_out, "output directory");

  CLI::App* ana = app.add_subcommand(
      "analyze", "multiresolution / gaussianity analyses of a trace");
  ana->add_option("input", ana_input, "trace file (1, 2 or 6 columns)")
      ->required();
  register_options(ana, kAnalyzeOpts, kAnalyzeFlags, ana_text, ana_toggles);
  ana->add_option("--config", ana_config, "key=value config file");
  ana->add_option("--out-dir", ana_out, "output directory");

  CLI::App* ida = app.add_subcommand(
      "ida", "interval-structure image of a 0/1 session");
  ida->add_option("input", ida_input,
                  "session file, connection log, or session directory")
      ->required();
  register_options(ida, kIdaOpts, kIdaFlags, ida_text, ida_toggles);
  ida->add_option("--config", ida_config, "key=value config file");
  ida->add_option("--out-dir", ida_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) {
      mrtcli::SimulateSettings s;
      std::string preset;
      std::vector<KeyValue> file_keys;
      if (sim->count("--config") > 0)
        read_layered_config(sim_config, preset, file_keys);
      if (sim->count("--preset") > 0) preset = sim_preset;
      if (!preset.empty()) mrtcli::apply_preset(s, preset);
      for (const KeyValue& kv : file_keys)
        mrtcli::apply_simulate_key(s, kv.key, kv.value);
      for (const KeyValue& kv : given_assignments(sim, kSimulateOpts,
                                                  kSimulateFlags, sim_text,
                                                  sim_toggles))
        mrtcli::apply_simulate_key(s, kv.key, kv.value);
      return run_simulate(s, fs::path(sim_out));
    }
    if (ana->parsed()) {
      mrtcli::AnalyzeSettings s;
      std::string preset;
      std::vector<KeyValue> file_keys;
      if (ana->count("--config") > 0)
        read_layered_config(ana_config, preset, file_keys);
      if (!preset.empty())
        throw std::invalid_argument("key 'preset': only simulate has presets");
      for (const KeyValue& kv : file_keys)
        mrtcli::apply_analyze_key(s, kv.key, kv.value);
      for (const KeyValue& kv : given_assignments(ana, kAnalyzeOpts,
                                                  kAnalyzeFlags, ana_text,
                                                  ana_toggles))
        mrtcli::apply_analyze_key(s, kv.key, kv.value);
      return run_analyze(s, fs::path(ana_input), fs::path(ana_out));
    }
    mrtcli::IdaSettings s;
    std::string preset;
    std::vector<KeyValue> file_keys;
    if (ida->count("--config") > 0)
      read_layered_config(ida_config, preset, file_keys);
    if (!preset.empty())
      throw std::invalid_argument("key 'preset': only simulate has presets");
    for (const KeyValue& kv : file_keys)
      mrtcli::apply_ida_key(s, kv.key, kv.value);
    for (const KeyValue& kv : given_assignments(ida, kIdaOpts, kIdaFlags,
                                                ida_text, ida_toggles))
      mrtcli::apply_ida_key(s, kv.key, kv.value);
    return run_ida(s, fs::path(ida_input), fs::path(ida_out));
  } catch (const mrt::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const mrt::empty_input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const mrt::degenerate_data_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const mrt::insufficient_data_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const mrtcli::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 6;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 6;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
