// SPDX-License-Identifier: MIT
#include "mrt/trace.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "mrt/errors.hpp"

namespace mrt {

PacketTrace::PacketTrace(std::vector<PacketEvent> events)
    : events_(std::move(events)) {
  for (const auto& ev : events_) {
    if (!(ev.timestamp >= 0.0) || !std::isfinite(ev.timestamp))
      throw std::invalid_argument("packet timestamp must be finite and >= 0");
    if (!(ev.size >= 0.0) || !std::isfinite(ev.size))
      throw std::invalid_argument("packet size must be finite and >= 0");
    total_ += ev.size;
  }
  std::stable_sort(events_.begin(), events_.end(),
                   [](const PacketEvent& a, const PacketEvent& b) {
                     return a.timestamp < b.timestamp;
                   });
}

namespace {

std::size_t bin_index(double timestamp, double bin_width) {
  return static_cast<std::size_t>(timestamp / bin_width);
}

void check_bin_width(double bin_width) {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width))
    throw std::invalid_argument("bin width must be finite and > 0");
}

}  // namespace

BinnedTrace bin(const PacketTrace& trace, double bin_width) {
  check_bin_width(bin_width);
  if (trace.empty()) throw empty_input_error("cannot bin an empty trace");
  BinnedTrace out;
  out.bin_width = bin_width;
  out.values.assign(bin_index(trace.duration(), bin_width) + 1, 0.0);
  for (const auto& ev : trace.events())
    out.values[bin_index(ev.timestamp, bin_width)] += ev.size;
  return out;
}

SessionBitmap to_bitmap(const PacketTrace& trace, double bin_width) {
  check_bin_width(bin_width);
  if (trace.empty()) throw empty_input_error("cannot bin an empty trace");
  SessionBitmap out;
  out.bin_width = bin_width;
  out.bits.assign(bin_index(trace.duration(), bin_width) + 1, 0);
  for (const auto& ev : trace.events())
    out.bits[bin_index(ev.timestamp, bin_width)] = 1;
  return out;
}

DyadicView truncate_to_power_of_two(std::vector<double> values) {
  if (values.empty())
    throw empty_input_error("cannot truncate an empty series");
  const std::size_t pow2 = std::bit_floor(values.size());
  values.resize(pow2);
  DyadicView out;
  out.values = std::move(values);
  out.m = std::bit_width(pow2) - 1;
  return out;
}

DyadicView truncate_to_power_of_two(const BinnedTrace& binned) {
  return truncate_to_power_of_two(binned.values);
}

DyadicView make_dyadic(std::vector<double> values) {
  if (values.empty()) throw empty_input_error("empty series");
  if (!std::has_single_bit(values.size()))
    throw std::invalid_argument("series length must be a power of two");
  DyadicView out;
  out.m = std::bit_width(values.size()) - 1;
  out.values = std::move(values);
  return out;
}

}  // namespace mrt
