// SPDX-License-Identifier: MIT
//
// Serialization for the CLI: frozen CSV schemas, JSON reports, PGM images,
// SHA-256 digests, and the per-run manifest. All writers build the complete
// file content as a string first (unit-testable), then write_text_file puts
// it on disk.
#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "mrt/ida.hpp"
#include "mrt/level_tools.hpp"
#include "mrt/multires.hpp"
#include "mrt/gaussianity.hpp"
#include "mrt/trace.hpp"

namespace mrtcli {

// Filesystem failures (open/read/write); mapped to its own exit code.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Round-trippable decimal rendering ("%.17g").
std::string g17(double v);

// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

// Trace in one-value-per-line form.
std::string trace_text(const mrt::BinnedTrace& trace);

// CSV "j,value,log2_value"; j is the absolute scale; log2_value is empty
// for zero-valued scales.
std::string profile_csv(const mrt::MultiresProfile& profile);

// CSV "lag,corr" for lag = 0..max_lag.
std::string autocorr_csv(const mrt::AutocorrSeries& series);

// CSV "window_index,d_k,traffic"; d_k empty for zero-variance windows.
std::string kolmogorov_csv(const mrt::KolmogorovSeries& series);

// CSV of the greyscale matrix, row-major: header
// "class,stage_0..stage_{S-1},separator,gaps", one row per length class.
std::string ida_csv(const mrt::IdaResult& r);

// PGM (P2) of the greyscale matrix: value 1 -> black (0), 0 -> white (255).
std::string ida_pgm(const mrt::IdaResult& r);

// Every IdaResult field, by name.
nlohmann::json ida_json(const mrt::IdaResult& r);

nlohmann::json tool1_json(const mrt::SlopeSeries& r);
nlohmann::json tool2_json(const mrt::FlatRegions& r);
nlohmann::json tool3_json(const mrt::BurstinessReport& r);
nlohmann::json tool4_json(const mrt::BurstinessReport& r);

// One-line summary CSV "trace,D,O" (missing entries stay empty).
std::string burstiness_csv(const std::string& trace_name,
                           std::optional<double> d, std::optional<double> o);

// Run manifest: command, tool version, resolved config, input digests,
// output digests. Written last, so its presence marks a completed run;
// re-running the recorded command reproduces the recorded digests.
class Manifest {
 public:
  Manifest(std::string command, nlohmann::json config);

  void set_seed(std::uint64_t seed);
  void add_input(const std::filesystem::path& path);  // digested immediately
  void add_output(const std::string& name,
                  const std::filesystem::path& path);  // digested immediately
  void write(const std::filesystem::path& path) const;
  const nlohmann::json& doc() const noexcept { return doc_; }

 private:
  nlohmann::json doc_;
};

}  // namespace mrtcli
