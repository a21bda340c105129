// SPDX-License-Identifier: MIT
//
// Error taxonomy shared by the whole library. Each family maps onto a
// distinct process exit code in the command-line front end, so analysis
// scripts can tell "your file is malformed" from "this trace is constant"
// without parsing stderr.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mrt {

// Input collection was empty where at least one element is required.
class empty_input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input; carries the 1-based line number of the offender.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

// Data is structurally valid but the requested statistic is undefined on it
// (zero variance, all-zero or all-one bitmap, ...).
class degenerate_data_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Not enough samples/scales/windows for the requested analysis.
class insufficient_data_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mrt
