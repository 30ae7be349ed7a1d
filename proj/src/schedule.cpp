#include "wavefill/schedule.hpp"

#include <algorithm>

namespace wavefill {

double ChannelSchedule::on_time() const {
  double total = 0.0;
  for (const Interval& iv : on) total += iv.length();
  return total;
}

double ChannelSchedule::control_at(double t) const {
  for (const Interval& iv : on)
    if (t >= iv.start && t < iv.end) return level;
  return 0.0;
}

int switch_count(const ChannelSchedule& ch, double horizon) {
  int count = 0;
  for (const Interval& iv : ch.on) {
    if (iv.start > 0.0) ++count;
    if (iv.end < horizon) ++count;
  }
  return count;
}

bool well_formed(const ChannelSchedule& ch, double horizon) {
  double prev_end = 0.0;
  for (std::size_t k = 0; k < ch.on.size(); ++k) {
    const Interval& iv = ch.on[k];
    if (!(iv.start < iv.end) || iv.start < 0.0 || iv.end > horizon) return false;
    if (k > 0 && !(iv.start > prev_end)) return false;
    prev_end = iv.end;
  }
  return true;
}

std::vector<Interval> normalize_intervals(std::vector<Interval> intervals) {
  std::erase_if(intervals, [](const Interval& iv) { return !(iv.end > iv.start); });
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.start < b.start; });
  std::vector<Interval> out;
  for (const Interval& iv : intervals) {
    if (!out.empty() && iv.start <= out.back().end) {
      out.back().end = std::max(out.back().end, iv.end);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

std::vector<double> switch_times(const BangBangSchedule& s) {
  std::vector<double> times;
  for (const auto& ch : s.channels) {
    for (const Interval& iv : ch.on) {
      times.push_back(iv.start);
      times.push_back(iv.end);
    }
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

}  // namespace wavefill
