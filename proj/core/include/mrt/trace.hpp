// SPDX-License-Identifier: MIT
//
// Trace containers: packet-level arrivals, fixed-width binned traffic, 0/1
// session activity bitmaps, and the power-of-two view the multiresolution
// estimators operate on.
#pragma once

#include <cstdint>
#include <vector>

namespace mrt {

struct PacketEvent {
  double timestamp = 0.0;  // seconds from trace start, >= 0
  double size = 0.0;       // bytes (or any nonnegative mass)
};

// Ordered packet arrivals. The constructor validates nonnegativity and
// stably sorts by timestamp, so downstream code can rely on order.
class PacketTrace {
 public:
  PacketTrace() = default;
  explicit PacketTrace(std::vector<PacketEvent> events);

  const std::vector<PacketEvent>& events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }
  // Timestamp of the last arrival (0 for an empty trace).
  double duration() const noexcept {
    return events_.empty() ? 0.0 : events_.back().timestamp;
  }
  double total_size() const noexcept { return total_; }

 private:
  std::vector<PacketEvent> events_;
  double total_ = 0.0;
};

// Per-bin traffic: values[i] = sum of packet sizes with
// timestamp in [i * bin_width, (i+1) * bin_width).
struct BinnedTrace {
  double bin_width = 1.0;
  std::vector<double> values;
};

// Per-bin activity indicator (values strictly 0/1).
struct SessionBitmap {
  double bin_width = 1.0;
  std::vector<std::uint8_t> bits;
};

// A series whose length is exactly 2^m, the shape all dyadic-block
// estimators require.
struct DyadicView {
  std::vector<double> values;
  int m = 0;
};

// Bin a packet trace at the given width (> 0). The last bin is the one
// containing the final arrival. Throws empty_input_error on empty traces.
BinnedTrace bin(const PacketTrace& trace, double bin_width);

// Same grid as bin(), but records only whether each bin saw any arrival.
SessionBitmap to_bitmap(const PacketTrace& trace, double bin_width);

// Keep the longest power-of-two prefix (throws empty_input_error if empty).
DyadicView truncate_to_power_of_two(const BinnedTrace& binned);
DyadicView truncate_to_power_of_two(std::vector<double> values);

// Wrap a series that is already exactly 2^m long; throws
// std::invalid_argument otherwise.
DyadicView make_dyadic(std::vector<double> values);

}  // namespace mrt
