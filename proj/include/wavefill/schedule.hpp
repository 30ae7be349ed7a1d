#pragma once

#include <vector>

namespace wavefill {

/// Half-open time interval [start, end).
struct Interval {
  double start = 0.0;
  double end = 0.0;

  double length() const { return end - start; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Control of one channel: `level` on the listed intervals, 0 elsewhere.
/// For water-filling output `level` is the channel's u_max.
struct ChannelSchedule {
  double level = 0.0;
  std::vector<Interval> on;

  double on_time() const;
  double control_at(double t) const;

  friend bool operator==(const ChannelSchedule&, const ChannelSchedule&) = default;
};

struct BangBangSchedule {
  std::vector<ChannelSchedule> channels;

  friend bool operator==(const BangBangSchedule&, const BangBangSchedule&) = default;
};

/// On/off transitions strictly inside (0, T): interval endpoints that are
/// not the horizon boundaries.
int switch_count(const ChannelSchedule& ch, double horizon);

/// Intervals sorted, disjoint, non-empty and within [0, T].
bool well_formed(const ChannelSchedule& ch, double horizon);

/// Sorts, drops empty intervals and merges touching ones.
std::vector<Interval> normalize_intervals(std::vector<Interval> intervals);

/// Every distinct interval endpoint of every channel, sorted.
std::vector<double> switch_times(const BangBangSchedule& s);

}  // namespace wavefill
