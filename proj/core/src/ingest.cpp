// SPDX-License-Identifier: MIT
#include "mrt/ingest.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "mrt/errors.hpp"

namespace mrt {

namespace {

// Split on arbitrary whitespace. Keeps no empty tokens.
std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(std::move(tok));
  return out;
}

bool is_skippable(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;  // blank
}

double parse_double(const std::string& tok, std::size_t line_no,
                    const char* what) {
  double value = 0.0;
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw parse_error(std::string("bad ") + what + " '" + tok + "'", line_no);
  return value;
}

// Drives a per-line callback over data lines; returns line count seen.
template <typename Fn>
void for_each_data_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    fn(tokenize(line), line_no);
  }
}

PacketEvent parse_event(const std::vector<std::string>& tokens,
                        std::size_t line_no) {
  PacketEvent ev;
  ev.timestamp = parse_double(tokens[0], line_no, "timestamp");
  ev.size = parse_double(tokens[1], line_no, "size");
  if (ev.timestamp < 0.0)
    throw parse_error("timestamp must be >= 0", line_no);
  if (ev.size < 0.0) throw parse_error("size must be >= 0", line_no);
  return ev;
}

}  // namespace

std::string to_string(const ConnectionKey& key) {
  return key.src + ":" + key.sport + "->" + key.dst + ":" + key.dport;
}

PacketTrace parse_timestamp_size(std::istream& in) {
  std::vector<PacketEvent> events;
  for_each_data_line(in, [&](const std::vector<std::string>& tokens,
                             std::size_t line_no) {
    if (tokens.size() != 2)
      throw parse_error("expected 'timestamp size'", line_no);
    events.push_back(parse_event(tokens, line_no));
  });
  if (events.empty()) throw empty_input_error("no packet lines in input");
  return PacketTrace(std::move(events));
}

std::map<ConnectionKey, PacketTrace> parse_connections(std::istream& in) {
  std::map<ConnectionKey, std::vector<PacketEvent>> grouped;
  for_each_data_line(in, [&](const std::vector<std::string>& tokens,
                             std::size_t line_no) {
    if (tokens.size() != 6)
      throw parse_error("expected 'timestamp size src dst sport dport'",
                        line_no);
    PacketEvent ev = parse_event(tokens, line_no);
    ConnectionKey key{tokens[2], tokens[3], tokens[4], tokens[5]};
    grouped[std::move(key)].push_back(ev);
  });
  if (grouped.empty()) throw empty_input_error("no packet lines in input");
  std::map<ConnectionKey, PacketTrace> out;
  for (auto& [key, events] : grouped)
    out.emplace(key, PacketTrace(std::move(events)));
  return out;
}

PacketTrace parse_all_connections(std::istream& in) {
  std::vector<PacketEvent> events;
  for_each_data_line(in, [&](const std::vector<std::string>& tokens,
                             std::size_t line_no) {
    if (tokens.size() != 6)
      throw parse_error("expected 'timestamp size src dst sport dport'",
                        line_no);
    events.push_back(parse_event(tokens, line_no));
  });
  if (events.empty()) throw empty_input_error("no packet lines in input");
  return PacketTrace(std::move(events));
}

BinnedTrace parse_prebinned(std::istream& in, double bin_width) {
  if (!(bin_width > 0.0))
    throw std::invalid_argument("bin width must be > 0");
  BinnedTrace out;
  out.bin_width = bin_width;
  for_each_data_line(in, [&](const std::vector<std::string>& tokens,
                             std::size_t line_no) {
    if (tokens.size() != 1)
      throw parse_error("expected one value per line", line_no);
    double v = parse_double(tokens[0], line_no, "value");
    if (v < 0.0) throw parse_error("bin value must be >= 0", line_no);
    out.values.push_back(v);
  });
  if (out.values.empty()) throw empty_input_error("no values in input");
  return out;
}

std::size_t first_line_token_count(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (is_skippable(line)) continue;
    return tokenize(line).size();
  }
  return 0;
}

}  // namespace mrt
