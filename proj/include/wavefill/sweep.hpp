#pragma once

#include <cstdint>
#include <vector>

namespace wavefill {

/// Switch-bound sweep over random geometric graphs with b = e_1 and
/// p ~ U(0, 1)^n.
struct SweepOptions {
  std::vector<int> sizes;
  int instances = 50;
  std::uint64_t seed = 1;
  /// Radius = radius_scale * sqrt(log n / (pi n)), a multiple of the
  /// connectivity threshold.
  double radius_scale = 1.5;
};

struct SweepRow {
  int n = 0;
  int instance = 0;
  std::uint64_t seed = 0;        // per-instance seed requested
  std::uint64_t graph_seed = 0;  // seed that produced the connected graph
  double radius = 0.0;
  int edges = 0;
  int bound_general = 0;
  int bound_linear_unshifted = 0;
  int bound_linear_sup = 0;
  double algebraic_connectivity = 0.0;
};

struct SweepAggregate {
  int n = 0;
  int count = 0;
  double mean_general = 0.0, std_general = 0.0;
  double mean_unshifted = 0.0, std_unshifted = 0.0;
  double mean_sup = 0.0, std_sup = 0.0;
};

double sweep_radius(int n, double radius_scale);

/// Deterministic seed of instance `k` at size `n`; independent of how the
/// sweep is split across workers.
std::uint64_t instance_seed(std::uint64_t base, int n, int k);

SweepRow sweep_instance(int n, int k, const SweepOptions& opts);

/// Rows ordered by (size as listed, instance). `parallel` picks the OpenMP
/// or the serial kernel; the output is identical.
std::vector<SweepRow> run_sweep(const SweepOptions& opts, bool parallel = true);

/// Mean and sample standard deviation per n, in order of first appearance.
std::vector<SweepAggregate> aggregate(const std::vector<SweepRow>& rows);

}  // namespace wavefill
