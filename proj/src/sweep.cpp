#include "wavefill/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wavefill/bounds.hpp"
#include "wavefill/costate.hpp"
#include "wavefill/errors.hpp"
#include "wavefill/graph.hpp"
#include "wavefill/kernels.hpp"
#include "wavefill/random.hpp"

namespace wavefill {

double sweep_radius(int n, double radius_scale) {
  return radius_scale * std::sqrt(std::log(static_cast<double>(n)) / (std::numbers::pi * n));
}

std::uint64_t instance_seed(std::uint64_t base, int n, int k) {
  // splitmix64 finaliser over the packed triple
  std::uint64_t z = base * 0x9E3779B97F4A7C15ULL + (static_cast<std::uint64_t>(n) << 32) +
                    static_cast<std::uint64_t>(k);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return (z ^ (z >> 31)) >> 1;  // headroom for the generator's seed + retries
}

SweepRow sweep_instance(int n, int k, const SweepOptions& opts) {
  SweepRow row;
  row.n = n;
  row.instance = k;
  row.seed = instance_seed(opts.seed, n, k);
  row.radius = sweep_radius(n, opts.radius_scale);
  const GeometricGraph geo = random_geometric_graph(n, row.radius, row.seed);
  row.graph_seed = geo.seed;
  row.edges = static_cast<int>(geo.graph.edges.size());

  const Spectrum spectrum = analyze(geo.graph);
  const auto& sd = spectrum.decomposition;
  Rng rng(row.seed ^ 0xA5A5A5A5A5A5A5A5ULL);
  Eigen::VectorXd p(n);
  for (int j = 0; j < n; ++j) p[j] = rng.uniform();
  const Eigen::VectorXd b = Eigen::VectorXd::Unit(n, 0);

  row.bound_general = bound_general(sd, b);
  const ChannelProfile profile = channel_profile(sd, {p}, b, 1.0);
  row.bound_linear_unshifted = bound_linear_at(profile, 0.0);
  row.bound_linear_sup = bound_linear_sup(profile);
  row.algebraic_connectivity = sd.values[1];
  return row;
}

std::vector<SweepRow> run_sweep(const SweepOptions& opts, bool parallel) {
  if (opts.instances < 1) throw ValidationError("sweep: instances must be at least 1");
  for (int n : opts.sizes)
    if (n < 2) throw ValidationError("sweep: sizes must be at least 2");
  const std::size_t per = static_cast<std::size_t>(opts.instances);
  const std::size_t total = opts.sizes.size() * per;
  auto one = [&](std::size_t idx) {
    return sweep_instance(opts.sizes[idx / per], static_cast<int>(idx % per), opts);
  };
  return parallel ? kernels::omp::map_indexed(total, one) : kernels::serial::map_indexed(total, one);
}

std::vector<SweepAggregate> aggregate(const std::vector<SweepRow>& rows) {
  std::vector<SweepAggregate> out;
  auto stats = [](const std::vector<double>& xs, double& mean, double& sd) {
    mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    sd = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
  };
  std::vector<int> order;
  for (const auto& r : rows)
    if (std::find(order.begin(), order.end(), r.n) == order.end()) order.push_back(r.n);
  for (int n : order) {
    std::vector<double> g, u, s;
    for (const auto& r : rows) {
      if (r.n != n) continue;
      g.push_back(r.bound_general);
      u.push_back(r.bound_linear_unshifted);
      s.push_back(r.bound_linear_sup);
    }
    SweepAggregate a;
    a.n = n;
    a.count = static_cast<int>(g.size());
    stats(g, a.mean_general, a.std_general);
    stats(u, a.mean_unshifted, a.std_unshifted);
    stats(s, a.mean_sup, a.std_sup);
    out.push_back(a);
  }
  return out;
}

}  // namespace wavefill
