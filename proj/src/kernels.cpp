#include "wavefill/kernels.hpp"

namespace wavefill::kernels {

namespace {

double grid_time(double horizon, int k, int intervals) {
  return k == intervals ? horizon : horizon * static_cast<double>(k) / intervals;
}

}  // namespace

std::vector<double> serial::sample_signal(const ChannelProfile& profile, double scale,
                                          int intervals) {
  std::vector<double> out(static_cast<std::size_t>(intervals) + 1);
  for (int k = 0; k <= intervals; ++k)
    out[k] = scale * eval_h(profile, grid_time(profile.horizon, k, intervals));
  return out;
}

std::vector<double> omp::sample_signal(const ChannelProfile& profile, double scale,
                                       int intervals) {
  std::vector<double> out(static_cast<std::size_t>(intervals) + 1);
#pragma omp parallel for schedule(static)
  for (int k = 0; k <= intervals; ++k)
    out[k] = scale * eval_h(profile, grid_time(profile.horizon, k, intervals));
  return out;
}

}  // namespace wavefill::kernels
