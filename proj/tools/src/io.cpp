// SPDX-License-Identifier: MIT
#include "mrtcli/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#ifndef MRT_VERSION
#define MRT_VERSION "0.0.0"
#endif

namespace mrtcli {

namespace {

nlohmann::json opt_array(const std::vector<std::optional<double>>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : v) {
    if (e)
      out.push_back(*e);
    else
      out.push_back(nullptr);
  }
  return out;
}

}  // namespace

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open for hashing: " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw io_error("sha256: EVP context allocation failed");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    const std::streamsize got = in.gcount();
    if (got <= 0) break;
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(got));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  if (in.bad()) throw io_error("read failure while hashing: " + path.string());

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open for writing: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw io_error("write failure: " + path.string());
}

std::string trace_text(const mrt::BinnedTrace& trace) {
  std::string out;
  out.reserve(trace.values.size() * 8);
  for (double v : trace.values) {
    out += g17(v);
    out += '\n';
  }
  return out;
}

std::string profile_csv(const mrt::MultiresProfile& profile) {
  std::string out = "j,value,log2_value\n";
  for (std::size_t i = 0; i < profile.scale_values.size(); ++i) {
    out += std::to_string(profile.scale_of(i));
    out += ',';
    out += g17(profile.scale_values[i]);
    out += ',';
    if (auto l = profile.log2_value(i)) out += g17(*l);
    out += '\n';
  }
  return out;
}

std::string autocorr_csv(const mrt::AutocorrSeries& series) {
  std::string out = "lag,corr\n";
  for (std::size_t k = 0; k < series.values.size(); ++k) {
    out += std::to_string(k);
    out += ',';
    out += g17(series.values[k]);
    out += '\n';
  }
  return out;
}

std::string kolmogorov_csv(const mrt::KolmogorovSeries& series) {
  std::string out = "window_index,d_k,traffic\n";
  for (std::size_t i = 0; i < series.distances.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    if (series.distances[i]) out += g17(*series.distances[i]);
    out += ',';
    out += g17(series.window_traffic[i]);
    out += '\n';
  }
  return out;
}

std::string ida_csv(const mrt::IdaResult& r) {
  const std::size_t stages = r.stages();
  std::string out = "class";
  for (std::size_t i = 0; i < stages; ++i)
    out += ",stage_" + std::to_string(i);
  out += ",separator,gaps\n";
  for (std::size_t j = 0; j < r.im.size(); ++j) {
    out += std::to_string(j);
    for (double v : r.im[j]) {
      out += ',';
      out += g17(v);
    }
    out += '\n';
  }
  return out;
}

std::string ida_pgm(const mrt::IdaResult& r) {
  const std::size_t height = r.im.size();
  const std::size_t width = height == 0 ? 0 : r.im.front().size();
  std::string out = "P2\n" + std::to_string(width) + " " +
                    std::to_string(height) + "\n255\n";
  for (const auto& row : r.im) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const double v = std::clamp(row[i], 0.0, 1.0);
      out += std::to_string(
          static_cast<int>(std::lround(255.0 * (1.0 - v))));
      out += i + 1 < row.size() ? ' ' : '\n';
    }
  }
  return out;
}

nlohmann::json ida_json(const mrt::IdaResult& r) {
  nlohmann::json j;
  j["base"] = r.config.base;
  j["gamma"] = r.config.gamma;
  j["c1"] = r.config.c1;
  j["c2"] = r.config.c2;
  j["epsilon"] = r.config.epsilon;
  j["global_stage"] = r.config.global_stage;
  j["session_length"] = r.session_length;
  j["artifact_class"] = r.artifact_class;
  j["gap_histogram"] = r.gap_histogram;
  j["stage_array"] = r.stage_array;
  j["fill_weights"] = r.fill_weights;
  j["picked_stage"] = r.picked_stage;
  j["im"] = r.im;
  j["v1"] = r.v1;
  j["v0"] = r.v0;
  return j;
}

nlohmann::json tool1_json(const mrt::SlopeSeries& r) {
  nlohmann::json j;
  j["epsilon"] = r.epsilon;
  j["first_scale"] = r.first_scale;
  j["S"] = opt_array(r.S);
  j["Sc"] = opt_array(r.Sc);
  nlohmann::json levels = nlohmann::json::array();
  for (std::size_t i = 0; i < r.level_scales.size(); ++i)
    levels.push_back({{"scale", r.level_scales[i]},
                      {"strength", r.level_strengths[i]}});
  j["levels"] = levels;
  return j;
}

nlohmann::json tool2_json(const mrt::FlatRegions& r) {
  nlohmann::json j;
  j["threshold"] = r.threshold;
  j["first_scale"] = r.first_scale;
  j["S"] = opt_array(r.S);
  nlohmann::json regions = nlohmann::json::array();
  for (const auto& [a, b] : r.regions)
    regions.push_back({{"first", a}, {"last", b}});
  j["regions"] = regions;
  return j;
}

nlohmann::json tool3_json(const mrt::BurstinessReport& r) {
  nlohmann::json j;
  j["k"] = r.k;
  j["D"] = r.D;
  j["per_scale_D"] = opt_array(r.per_scale_D);
  return j;
}

nlohmann::json tool4_json(const mrt::BurstinessReport& r) {
  nlohmann::json j;
  j["k"] = r.k;
  j["s"] = r.s;
  j["O"] = r.O;
  j["per_scale_C"] = opt_array(r.per_scale_C);
  j["per_scale_Dbar"] = opt_array(r.per_scale_Dbar);
  return j;
}

std::string burstiness_csv(const std::string& trace_name,
                           std::optional<double> d, std::optional<double> o) {
  std::string out = "trace,D,O\n" + trace_name + ",";
  if (d) out += g17(*d);
  out += ',';
  if (o) out += g17(*o);
  out += '\n';
  return out;
}

Manifest::Manifest(std::string command, nlohmann::json config) {
  doc_["command"] = std::move(command);
  doc_["version"] = MRT_VERSION;
  doc_["config"] = std::move(config);
  doc_["inputs"] = nlohmann::json::object();
  doc_["outputs"] = nlohmann::json::array();
}

void Manifest::set_seed(std::uint64_t seed) { doc_["seed"] = seed; }

void Manifest::add_input(const std::filesystem::path& path) {
  doc_["inputs"][path.generic_string()] = sha256_file(path);
}

void Manifest::add_output(const std::string& name,
                          const std::filesystem::path& path) {
  doc_["outputs"].push_back({{"file", name}, {"sha256", sha256_file(path)}});
}

void Manifest::write(const std::filesystem::path& path) const {
  write_text_file(path, doc_.dump(2) + "\n");
}

}  // namespace mrtcli
