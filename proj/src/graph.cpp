#include "wavefill/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "wavefill/errors.hpp"
#include "wavefill/random.hpp"

namespace wavefill {

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

bool in_range(const WeightedGraph& g, const Edge& e) {
  return e.i >= 0 && e.i < g.n && e.j >= 0 && e.j < g.n;
}

std::string format_component(const std::vector<int>& comp) {
  std::ostringstream os;
  os << "{";
  const std::size_t shown = std::min<std::size_t>(comp.size(), 10);
  for (std::size_t k = 0; k < shown; ++k) os << (k ? ", " : "") << comp[k] + 1;
  if (comp.size() > shown) os << ", ...";
  os << "}";
  return os.str();
}

}  // namespace

std::vector<std::vector<int>> connected_components(const WeightedGraph& g) {
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(std::max(g.n, 0)));
  for (const Edge& e : g.edges) {
    if (!in_range(g, e) || e.weight <= 0.0) continue;
    adjacency[e.i].push_back(e.j);
    adjacency[e.j].push_back(e.i);
  }
  std::vector<int> label(adjacency.size(), -1);
  std::vector<std::vector<int>> components;
  for (int start = 0; start < g.n; ++start) {
    if (label[start] >= 0) continue;
    const int id = static_cast<int>(components.size());
    std::vector<int> comp;
    std::vector<int> stack{start};
    label[start] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int w : adjacency[v]) {
        if (label[w] < 0) {
          label[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

std::vector<std::string> graph_findings(const WeightedGraph& g) {
  std::vector<std::string> out;
  if (g.n < 1) {
    out.push_back("graph must have at least one agent");
    return out;
  }
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : g.edges) {
    std::ostringstream where;
    where << "edge (" << e.i + 1 << ", " << e.j + 1 << ")";
    if (!in_range(g, e)) {
      out.push_back(where.str() + " references an agent outside 1.." + std::to_string(g.n));
      continue;
    }
    if (e.i == e.j) out.push_back(where.str() + " is a self-loop");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      out.push_back(where.str() + " has non-positive or non-finite weight");
    const auto key = std::minmax(e.i, e.j);
    if (!seen.insert({key.first, key.second}).second)
      out.push_back(where.str() + " repeats an unordered pair");
  }
  const auto comps = connected_components(g);
  if (comps.size() > 1) {
    out.push_back("graph is disconnected (" + std::to_string(comps.size()) +
                  " components); agents " + format_component(comps[1]) +
                  " are separated from agent 1");
  }
  return out;
}

Laplacian build_laplacian(const WeightedGraph& g) {
  const auto findings = graph_findings(g);
  if (!findings.empty()) {
    std::string msg = "invalid graph: " + findings.front();
    for (std::size_t k = 1; k < findings.size(); ++k) msg += "; " + findings[k];
    throw ValidationError(msg);
  }
  Laplacian L{Eigen::MatrixXd::Zero(g.n, g.n)};
  for (const Edge& e : g.edges) {
    L.matrix(e.i, e.j) = -e.weight;
    L.matrix(e.j, e.i) = -e.weight;
  }
  for (int i = 0; i < g.n; ++i) {
    double degree = 0.0;
    for (int j = 0; j < g.n; ++j)
      if (j != i) degree -= L.matrix(i, j);
    L.matrix(i, i) = degree;
  }
  return L;
}

double SpectralDecomposition::projection_norm2(std::size_t g, const Eigen::VectorXd& v) const {
  double sum = 0.0;
  for (int j : groups[g].indices) {
    const double c = vectors.col(j).dot(v);
    sum += c * c;
  }
  return sum;
}

double SpectralDecomposition::projected_product(std::size_t g, const Eigen::VectorXd& u,
                                                const Eigen::VectorXd& v) const {
  double sum = 0.0;
  for (int j : groups[g].indices) sum += vectors.col(j).dot(u) * vectors.col(j).dot(v);
  return sum;
}

SpectralDecomposition spectral_decompose(const Laplacian& L) {
  const int n = L.n();
  if (n < 1) throw ContractError("spectral_decompose: empty Laplacian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L.matrix);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");

  SpectralDecomposition sd;
  sd.values = solver.eigenvalues();
  sd.vectors = solver.eigenvectors();
  // Eigen already returns ascending order; sort anyway so the contract does
  // not depend on that detail.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return sd.values[a] < sd.values[b]; });
  {
    Eigen::VectorXd vals(n);
    Eigen::MatrixXd vecs(n, n);
    for (int k = 0; k < n; ++k) {
      vals[k] = sd.values[order[k]];
      vecs.col(k) = sd.vectors.col(order[k]);
    }
    sd.values = std::move(vals);
    sd.vectors = std::move(vecs);
  }

  for (int k = 0; k < n; ++k) {
    auto col = sd.vectors.col(k);
    const double scale = col.cwiseAbs().maxCoeff();
    for (int r = 0; r < n; ++r) {
      if (std::abs(col[r]) > 1e-8 * scale) {
        if (col[r] < 0.0) col = -col;
        break;
      }
    }
  }

  const double top = std::max(1.0, sd.values[n - 1]);
  sd.zero_tol = 1e-9 * top;
  sd.group_tol = 1e-8 * top;
  if (std::abs(sd.values[0]) > sd.zero_tol)
    throw NumericalError("smallest Laplacian eigenvalue is not zero within tolerance");
  if (n > 1 && sd.values[1] <= sd.zero_tol) throw NumericalError("graph numerically disconnected");

  for (int k = 0; k < n; ++k) {
    if (!sd.groups.empty() &&
        sd.values[k] - sd.values[sd.groups.back().indices.front()] <= sd.group_tol) {
      sd.groups.back().indices.push_back(k);
      continue;
    }
    sd.groups.push_back({sd.values[k], {k}});
  }
  for (auto& grp : sd.groups) {
    double mean = 0.0;
    for (int k : grp.indices) mean += sd.values[k];
    grp.rate = mean / static_cast<double>(grp.indices.size());
  }
  sd.groups.front().rate = 0.0;
  return sd;
}

GeometricGraph random_geometric_graph(int n, double radius, std::uint64_t seed) {
  if (n < 2) throw ContractError("random_geometric_graph: n must be at least 2");
  if (!(radius > 0.0)) throw ContractError("random_geometric_graph: radius must be positive");
  const double r2 = radius * radius;
  for (int attempt = 0; attempt < kGeometricRetryCap; ++attempt) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(attempt);
    Rng rng(s);
    GeometricGraph out;
    out.seed = s;
    out.positions.resize(n, 2);
    for (int i = 0; i < n; ++i) {
      out.positions(i, 0) = rng.uniform();
      out.positions(i, 1) = rng.uniform();
    }
    out.graph.n = n;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double dx = out.positions(i, 0) - out.positions(j, 0);
        const double dy = out.positions(i, 1) - out.positions(j, 1);
        if (dx * dx + dy * dy <= r2) out.graph.edges.push_back({i, j, 1.0});
      }
    }
    if (connected_components(out.graph).size() == 1) return out;
  }
  throw ValidationError("random_geometric_graph: no connected graph after " +
                        std::to_string(kGeometricRetryCap) + " draws (n=" + std::to_string(n) +
                        ", radius=" + std::to_string(radius) + "); try a larger radius");
}

}  // namespace wavefill

namespace wavefill {

Spectrum analyze(const WeightedGraph& g) {
  Laplacian L = build_laplacian(g);
  SpectralDecomposition sd = spectral_decompose(L);
  return {std::move(L), std::move(sd)};
}

}  // namespace wavefill
