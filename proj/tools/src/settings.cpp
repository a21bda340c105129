// SPDX-License-Identifier: MIT
#include "mrtcli/settings.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mrt/errors.hpp"
#include "mrtcli/io.hpp"

namespace mrtcli {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const char* expected) {
  throw std::invalid_argument("key '" + key + "': expected " + expected +
                              ", got '" + value + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

mrt::LightTailFamily family_from_name(const std::string& key,
                                      const std::string& name) {
  const std::string n = lower(trim(name));
  if (n == "exponential" || n == "exp")
    return mrt::LightTailFamily::Exponential;
  if (n == "uniform") return mrt::LightTailFamily::UniformAroundMean;
  if (n == "gaussian") return mrt::LightTailFamily::GaussianTruncated;
  if (n == "constant") return mrt::LightTailFamily::Constant;
  bad_value(key, name, "one of exponential|uniform|gaussian|constant");
}

mrt::Model model_from_name(const std::string& name) {
  std::string n = lower(trim(name));
  std::replace(n.begin(), n.end(), '_', '-');
  if (n == "on-off") return mrt::Model::OnOff;
  if (n == "packetized") return mrt::Model::Packetized;
  if (n == "slow-start") return mrt::Model::SlowStart;
  if (n == "session-levels") return mrt::Model::SessionLevels;
  if (n == "combined") return mrt::Model::Combined;
  if (n == "combined-rtt-levels") return mrt::Model::CombinedRttLevels;
  if (n == "random-heights") return mrt::Model::RandomHeights;
  if (n == "random-heights-tail") return mrt::Model::RandomHeightsTail;
  if (n == "packetized-heights") return mrt::Model::PacketizedHeights;
  if (n == "exp-iid") return mrt::Model::ExpIid;
  if (n == "heavy-tail-iid") return mrt::Model::HeavyTailIid;
  bad_value("model", name,
            "one of on-off|packetized|slow-start|session-levels|combined|"
            "combined-rtt-levels|random-heights|random-heights-tail|"
            "packetized-heights|exp-iid|heavy-tail-iid");
}

mrt::LightTailSpec light_spec(const std::string& key_prefix,
                              const std::string& family, double mean,
                              double spread) {
  mrt::LightTailSpec spec;
  spec.family = family_from_name(key_prefix + "_family", family);
  spec.mean = mean;
  spec.spread = spread;
  return spec;
}

}  // namespace

double parse_double_value(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  double out{};
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty())
    bad_value(key, value, "a number");
  return out;
}

std::uint64_t parse_u64_value(const std::string& key,
                              const std::string& value) {
  const std::string v = trim(value);
  std::uint64_t out{};
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty())
    bad_value(key, value, "an unsigned integer");
  return out;
}

int parse_int_value(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  int out{};
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty())
    bad_value(key, value, "an integer");
  return out;
}

bool parse_bool_value(const std::string& key, const std::string& value) {
  const std::string v = lower(trim(value));
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  bad_value(key, value, "a boolean (true/false)");
}

std::vector<KeyValue> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file: " + path);
  std::vector<KeyValue> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos || eq == 0)
      throw mrt::parse_error("expected 'key = value'", line_no);
    out.push_back({trim(t.substr(0, eq)), trim(t.substr(eq + 1))});
  }
  if (in.bad()) throw io_error("read failure: " + path);
  return out;
}

std::vector<mrt::LevelSpec> parse_levels(const std::string& text) {
  std::vector<mrt::LevelSpec> out;
  const std::string t = trim(text);
  if (t.empty()) return out;
  for (const std::string& entry : split(t, '|')) {
    const std::vector<std::string> parts = split(entry, ':');
    if (parts.size() < 3 || parts.size() > 4)
      throw std::invalid_argument(
          "level entry '" + entry + "': expected on:off:family[:spread]");
    const double on = parse_double_value("levels(on)", parts[0]);
    const double off = parse_double_value("levels(off)", parts[1]);
    const std::string family = lower(trim(parts[2]));
    const bool has_spread = parts.size() == 4;
    const double spread =
        has_spread ? parse_double_value("levels(spread)", parts[3]) : 0.0;
    if (family == "exponential" || family == "exp") {
      if (has_spread)
        throw std::invalid_argument("level entry '" + entry +
                                    "': exponential takes no spread");
      out.push_back(mrt::LevelSpec::exponential(on, off));
    } else if (family == "sharp") {
      if (has_spread)
        throw std::invalid_argument("level entry '" + entry +
                                    "': sharp takes no spread (fixed 10%)");
      out.push_back(mrt::LevelSpec::sharp(on, off));
    } else if (family == "uniform") {
      if (!has_spread)
        throw std::invalid_argument(
            "level entry '" + entry +
            "': uniform requires a spread ratio (on:off:uniform:ratio)");
      out.push_back(mrt::LevelSpec::uniform(on, off, spread));
    } else if (family == "gaussian") {
      if (has_spread)
        throw std::invalid_argument("level entry '" + entry +
                                    "': gaussian takes no spread");
      out.push_back(mrt::LevelSpec::gaussian(on, off));
    } else if (family == "constant") {
      if (has_spread)
        throw std::invalid_argument("level entry '" + entry +
                                    "': constant takes no spread");
      mrt::LevelSpec lv;
      lv.on_mean = on;
      lv.off_mean = off;
      lv.on_dist = {mrt::LightTailFamily::Constant, on, 0.0};
      lv.off_dist = {mrt::LightTailFamily::Constant, off, 0.0};
      out.push_back(lv);
    } else {
      throw std::invalid_argument(
          "level entry '" + entry +
          "': family must be exponential|sharp|uniform|gaussian|constant");
    }
  }
  return out;
}

void apply_simulate_key(SimulateSettings& s, const std::string& key,
                        const std::string& value) {
  if (key == "model")
    s.model = value;
  else if (key == "users")
    s.users = parse_u64_value(key, value);
  else if (key == "bins_log2")
    s.bins_log2 = parse_int_value(key, value);
  else if (key == "seed")
    s.seed = parse_u64_value(key, value);
  else if (key == "bin_width")
    s.bin_width = parse_double_value(key, value);
  else if (key == "load_p")
    s.load_p = parse_double_value(key, value);
  else if (key == "load_scale")
    s.load_scale = parse_double_value(key, value);
  else if (key == "off_family")
    s.off_family = value;
  else if (key == "off_mean")
    s.off_mean = parse_double_value(key, value);
  else if (key == "off_spread")
    s.off_spread = parse_double_value(key, value);
  else if (key == "rtt_family")
    s.rtt_family = value;
  else if (key == "rtt_mean")
    s.rtt_mean = parse_double_value(key, value);
  else if (key == "rtt_spread")
    s.rtt_spread = parse_double_value(key, value);
  else if (key == "rtt_spikes")
    s.rtt_spikes = parse_bool_value(key, value);
  else if (key == "slow_start_max")
    s.slow_start_max = parse_u64_value(key, value);
  else if (key == "levels")
    s.levels = value;
  else if (key == "rtt_level_count")
    s.rtt_level_count = parse_u64_value(key, value);
  else if (key == "burn_in_cycles")
    s.burn_in_cycles = parse_double_value(key, value);
  else if (key == "height_family")
    s.height_family = value;
  else if (key == "height_mean")
    s.height_mean = parse_double_value(key, value);
  else if (key == "height_spread")
    s.height_spread = parse_double_value(key, value);
  else if (key == "spike_gap_mean")
    s.spike_gap_mean = parse_double_value(key, value);
  else if (key == "spike_height_mean")
    s.spike_height_mean = parse_double_value(key, value);
  else if (key == "spike_heavy")
    s.spike_heavy = parse_bool_value(key, value);
  else if (key == "iid_mean")
    s.iid_mean = parse_double_value(key, value);
  else
    throw std::invalid_argument("unknown simulate config key '" + key + "'");
}

void apply_preset(SimulateSettings& s, const std::string& name) {
  std::string n = lower(trim(name));
  std::replace(n.begin(), n.end(), '_', '-');
  if (n == "0-1") {
    s.model = "on-off";
  } else if (n == "rh") {
    s.model = "random-heights";
  } else if (n == "rh-ht") {
    s.model = "random-heights-tail";
  } else if (n == "arr") {
    s.model = "packetized";
  } else if (n == "arrrh") {
    s.model = "packetized-heights";
  } else if (n == "exp-iid") {
    s.model = "exp-iid";
  } else if (n == "ht-iid") {
    s.model = "heavy-tail-iid";
  } else if (n == "8") {
    s.model = "session-levels";
    s.levels = "256:256:exponential";
  } else if (n == "8s") {
    s.model = "session-levels";
    s.levels = "256:256:sharp";
  } else if (n == "12") {
    s.model = "session-levels";
    s.levels = "4096:4096:exponential";
    s.bins_log2 = 16;
  } else if (n == "7/12/17") {
    s.model = "session-levels";
    s.levels =
        "131072:131072:exponential|4096:4096:exponential|128:128:exponential";
    s.bins_log2 = 19;
  } else {
    throw std::invalid_argument(
        "unknown preset '" + name +
        "' (known: 0-1, rh, rh-ht, arr, arrrh, exp-iid, ht-iid, 8, 8s, 12, "
        "7/12/17)");
  }
}

mrt::SimConfig materialize(const SimulateSettings& s) {
  mrt::SimConfig cfg;
  cfg.model = model_from_name(s.model);
  cfg.users = s.users;
  cfg.bins_log2 = s.bins_log2;
  if (!(s.bin_width > 0.0))
    throw std::invalid_argument("key 'bin_width': must be > 0");
  cfg.bin_width = s.bin_width;
  cfg.seed = s.seed;
  cfg.load.p = s.load_p;
  cfg.load.scale = s.load_scale;
  cfg.off = light_spec("off", s.off_family, s.off_mean, s.off_spread);
  cfg.rtt = light_spec("rtt", s.rtt_family, s.rtt_mean, s.rtt_spread);
  cfg.rtt_spikes = s.rtt_spikes;
  cfg.slow_start_max = s.slow_start_max;
  cfg.levels = parse_levels(s.levels);
  cfg.rtt_level_count = static_cast<std::size_t>(s.rtt_level_count);
  cfg.burn_in_cycles = s.burn_in_cycles;
  cfg.height =
      light_spec("height", s.height_family, s.height_mean, s.height_spread);
  cfg.spike_gap_mean = s.spike_gap_mean;
  cfg.spike_height_mean = s.spike_height_mean;
  cfg.spike_heavy = s.spike_heavy;
  cfg.iid_mean = s.iid_mean;
  mrt::validate_config(cfg);
  return cfg;
}

nlohmann::json resolved_json(const SimulateSettings& s) {
  nlohmann::json j;
  j["model"] = lower(trim(s.model));
  j["users"] = s.users;
  j["bins_log2"] = s.bins_log2;
  j["seed"] = s.seed;
  j["bin_width"] = s.bin_width;
  j["load_p"] = s.load_p;
  j["load_scale"] = s.load_scale;
  j["off_family"] = lower(trim(s.off_family));
  j["off_mean"] = s.off_mean;
  j["off_spread"] = s.off_spread;
  j["rtt_family"] = lower(trim(s.rtt_family));
  j["rtt_mean"] = s.rtt_mean;
  j["rtt_spread"] = s.rtt_spread;
  j["rtt_spikes"] = s.rtt_spikes;
  j["slow_start_max"] = s.slow_start_max;
  j["levels"] = s.levels;
  j["rtt_level_count"] = s.rtt_level_count;
  j["burn_in_cycles"] = s.burn_in_cycles;
  j["height_family"] = lower(trim(s.height_family));
  j["height_mean"] = s.height_mean;
  j["height_spread"] = s.height_spread;
  j["spike_gap_mean"] = s.spike_gap_mean;
  j["spike_height_mean"] = s.spike_height_mean;
  j["spike_heavy"] = s.spike_heavy;
  j["iid_mean"] = s.iid_mean;
  return j;
}

void apply_analyze_key(AnalyzeSettings& s, const std::string& key,
                       const std::string& value) {
  if (key == "analyses")
    s.analyses = value;
  else if (key == "definition")
    s.definition = parse_int_value(key, value);
  else if (key == "p")
    s.p = parse_double_value(key, value);
  else if (key == "window")
    s.window = parse_u64_value(key, value);
  else if (key == "bin_width")
    s.bin_width = parse_double_value(key, value);
  else if (key == "max_lag")
    s.max_lag = parse_u64_value(key, value);
  else if (key == "epsilon")
    s.epsilon = parse_double_value(key, value);
  else if (key == "threshold")
    s.threshold = parse_double_value(key, value);
  else if (key == "k")
    s.k = parse_int_value(key, value);
  else if (key == "s")
    s.s = parse_int_value(key, value);
  else if (key == "force")
    s.force = parse_bool_value(key, value);
  else
    throw std::invalid_argument("unknown analyze config key '" + key + "'");
}

std::vector<std::string> analysis_list(const AnalyzeSettings& s) {
  static const std::vector<std::string> kOrder = {
      "averaging", "energy", "autocorr", "kolmogorov",
      "tool1",     "tool2",  "tool3",    "tool4"};
  std::set<std::string> wanted;
  for (const std::string& raw : split(s.analyses, ',')) {
    const std::string name = lower(trim(raw));
    if (name.empty()) continue;
    if (name == "all") {
      wanted.insert(kOrder.begin(), kOrder.end());
      continue;
    }
    if (std::find(kOrder.begin(), kOrder.end(), name) == kOrder.end())
      throw std::invalid_argument(
          "key 'analyses': unknown analysis '" + name +
          "' (known: averaging, energy, autocorr, kolmogorov, tool1, tool2, "
          "tool3, tool4, all)");
    wanted.insert(name);
  }
  if (wanted.empty())
    throw std::invalid_argument("key 'analyses': no analyses requested");
  std::vector<std::string> out;
  for (const std::string& name : kOrder)
    if (wanted.count(name)) out.push_back(name);
  return out;
}

nlohmann::json resolved_json(const AnalyzeSettings& s) {
  nlohmann::json j;
  nlohmann::json list = nlohmann::json::array();
  for (const std::string& a : analysis_list(s)) list.push_back(a);
  j["analyses"] = list;
  j["definition"] = s.definition;
  j["p"] = s.p;
  j["window"] = s.window;
  j["bin_width"] = s.bin_width;
  j["max_lag"] = s.max_lag;
  j["epsilon"] = s.epsilon;
  j["threshold"] = s.threshold;
  j["k"] = s.k;
  j["s"] = s.s;
  j["force"] = s.force;
  return j;
}

void apply_ida_key(IdaSettings& s, const std::string& key,
                   const std::string& value) {
  if (key == "base")
    s.base = parse_double_value(key, value);
  else if (key == "gamma")
    s.gamma = parse_double_value(key, value);
  else if (key == "c1")
    s.c1 = parse_double_value(key, value);
  else if (key == "c2")
    s.c2 = parse_double_value(key, value);
  else if (key == "epsilon")
    s.epsilon = parse_double_value(key, value);
  else if (key == "global_stage")
    s.global_stage = parse_bool_value(key, value);
  else if (key == "bin_width")
    s.bin_width = parse_double_value(key, value);
  else if (key == "connection")
    s.connection = value;
  else if (key == "aggregate")
    s.aggregate = parse_bool_value(key, value);
  else
    throw std::invalid_argument("unknown ida config key '" + key + "'");
}

mrt::IdaConfig materialize(const IdaSettings& s) {
  mrt::IdaConfig cfg;
  cfg.base = s.base;
  cfg.gamma = s.gamma;
  cfg.c1 = s.c1;
  cfg.c2 = s.c2;
  cfg.epsilon = s.epsilon;
  cfg.global_stage = s.global_stage;
  return cfg;
}

nlohmann::json resolved_json(const IdaSettings& s) {
  nlohmann::json j;
  j["base"] = s.base;
  j["gamma"] = s.gamma;
  j["c1"] = s.c1;
  j["c2"] = s.c2;
  j["epsilon"] = s.epsilon;
  j["global_stage"] = s.global_stage;
  j["bin_width"] = s.bin_width;
  j["connection"] = s.connection;
  j["aggregate"] = s.aggregate;
  return j;
}

}  // namespace mrtcli
