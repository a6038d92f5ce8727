#pragma once

#include <utility>
#include <vector>

#include "signet/types.hpp"

namespace signet {

enum class Metric { euclidean, haversine_km };

/// Node locations in the plane (euclidean) or as lon/lat degrees
/// (haversine_km, great-circle distance on a 6371.0 km sphere).
struct PointSet {
  Matrix coords;  // N x 2; haversine columns are (lon, lat) in degrees
  Metric metric = Metric::euclidean;

  long size() const { return coords.rows(); }
  void validate() const;
};

/// Undirected graph connecting all pairs within the build radius. Edges are
/// stored once as (i, j) with i < j, sorted.
struct ProximityGraph {
  long node_count = 0;
  double radius = 0.0;
  std::vector<std::pair<int, int>> edges;
};

using ShiftOperator = Matrix;

/// Full symmetric distance matrix under the point set's metric.
Matrix pairwise_distance(const PointSet& points);

/// Threshold the distance matrix at radius (inclusive; ties are edges).
ProximityGraph build_proximity_graph(const PointSet& points, double radius);

/// Symmetric renormalized adjacency D~^{-1/2} (A + I) D~^{-1/2}. An edgeless
/// graph yields the identity, which collapses the GCNN into an MLP.
ShiftOperator gcn_shift(const ProximityGraph& graph);

/// One application of the shift to a node-feature matrix: S * X.
Matrix apply_shift(const ShiftOperator& shift, const Matrix& features);

}  // namespace signet
