// SPDX-License-Identifier: MIT
//
// Text-format readers. Three line-oriented formats are supported:
//   A  "timestamp size"                       -> one PacketTrace
//   B  "timestamp size src dst sport dport"   -> PacketTrace per connection
//   C  "value"  (one pre-binned value/line)   -> BinnedTrace
// Blank lines and lines starting with '#' are skipped everywhere. Any
// malformed line raises parse_error with its 1-based line number.
#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "mrt/trace.hpp"

namespace mrt {

// Identifies one connection in format B. All four tokens must be nonempty.
struct ConnectionKey {
  std::string src;
  std::string dst;
  std::string sport;
  std::string dport;

  friend bool operator==(const ConnectionKey&, const ConnectionKey&) = default;
  friend auto operator<=>(const ConnectionKey&, const ConnectionKey&) = default;
};

std::string to_string(const ConnectionKey& key);

// Format A. Throws empty_input_error if no data lines survive.
PacketTrace parse_timestamp_size(std::istream& in);

// Format B, split per connection. Each trace keeps only its own packets;
// the union of all traces is exactly the file's packet multiset.
std::map<ConnectionKey, PacketTrace> parse_connections(std::istream& in);

// Format B, all connections merged into one trace.
PacketTrace parse_all_connections(std::istream& in);

// Format C. bin_width is metadata supplied by the caller.
BinnedTrace parse_prebinned(std::istream& in, double bin_width = 1.0);

// Number of whitespace-separated tokens on the first non-blank, non-comment
// line; 0 if there is none. Used by the CLI to auto-detect the format.
std::size_t first_line_token_count(std::istream& in);

}  // namespace mrt
