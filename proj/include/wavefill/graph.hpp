#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wavefill {

/// Undirected edge between agents `i` and `j` (0-based) with trust weight.
struct Edge {
  int i = 0;
  int j = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Endogenous influence network. Indices are 0-based in memory; the JSON
/// file format is 1-based and converted at the I/O boundary.
struct WeightedGraph {
  int n = 0;
  std::vector<Edge> edges;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;
};

/// Connected components as sorted lists of agent indices, ordered by their
/// smallest member.
std::vector<std::vector<int>> connected_components(const WeightedGraph& g);

/// Every violated graph invariant as a human-readable message. Empty iff
/// the graph is a valid connected weighted graph.
std::vector<std::string> graph_findings(const WeightedGraph& g);

struct Laplacian {
  Eigen::MatrixXd matrix;

  int n() const { return static_cast<int>(matrix.rows()); }
};

/// l_ij = -a_ij, l_ii = sum of incident weights. Throws ValidationError when
/// the graph is disconnected, has a non-positive weight, a self-loop or a
/// repeated pair.
Laplacian build_laplacian(const WeightedGraph& g);

/// A cluster of (numerically) equal eigenvalues.
struct EigenGroup {
  double rate = 0.0;          // representative eigenvalue; exactly 0 for the kernel group
  std::vector<int> indices;   // columns of `vectors` spanning the eigenspace
};

struct SpectralDecomposition {
  Eigen::VectorXd values;     // ascending
  Eigen::MatrixXd vectors;    // orthonormal columns, first nonzero entry positive
  double zero_tol = 0.0;
  double group_tol = 0.0;
  std::vector<EigenGroup> groups;

  int n() const { return static_cast<int>(values.size()); }

  /// Squared norm of the projection of `v` onto eigenspace `g`.
  double projection_norm2(std::size_t g, const Eigen::VectorXd& v) const;
  /// <P_g u, v> for the orthogonal projector onto eigenspace `g`.
  double projected_product(std::size_t g, const Eigen::VectorXd& u,
                           const Eigen::VectorXd& v) const;
};

/// Dense symmetric eigendecomposition with deterministic signs and
/// distinct-eigenvalue grouping. Throws NumericalError when the second
/// eigenvalue does not clear zero_tol ("graph numerically disconnected").
SpectralDecomposition spectral_decompose(const Laplacian& L);

struct GeometricGraph {
  WeightedGraph graph;
  std::uint64_t seed = 0;  // seed that produced the (connected) graph
  Eigen::MatrixX2d positions;
};

inline constexpr int kGeometricRetryCap = 1000;

/// Unit-weight random geometric graph on the unit square. Disconnected draws
/// are retried with seed + 1, seed + 2, ... up to kGeometricRetryCap times.
GeometricGraph random_geometric_graph(int n, double radius, std::uint64_t seed);

}  // namespace wavefill

namespace wavefill {

/// Laplacian together with its decomposition; what every solver needs.
struct Spectrum {
  Laplacian laplacian;
  SpectralDecomposition decomposition;
};

Spectrum analyze(const WeightedGraph& g);

}  // namespace wavefill
