#include "signet/proximity_graph.hpp"

#include <cmath>
#include <string>

#include "signet/errors.hpp"

namespace signet {

namespace {

constexpr double kEarthRadiusKm = 6371.0;

double haversine_km(double lon1, double lat1, double lon2, double lat2) {
  const double rad = M_PI / 180.0;
  const double dlat = (lat2 - lat1) * rad;
  const double dlon = (lon2 - lon1) * rad;
  const double s1 = std::sin(0.5 * dlat);
  const double s2 = std::sin(0.5 * dlon);
  const double h =
      s1 * s1 + std::cos(lat1 * rad) * std::cos(lat2 * rad) * s2 * s2;
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

}  // namespace

void PointSet::validate() const {
  if (coords.cols() != 2) throw ShapeError("point set: coords must be N x 2");
  if (!coords.allFinite()) throw DomainError("point set: non-finite coordinate");
  if (metric == Metric::haversine_km) {
    for (long i = 0; i < coords.rows(); ++i) {
      const double lon = coords(i, 0);
      const double lat = coords(i, 1);
      if (lon < -180.0 || lon > 180.0 || lat < -90.0 || lat > 90.0)
        throw DomainError("point set: lon/lat out of range at row " +
                          std::to_string(i));
    }
  }
}

Matrix pairwise_distance(const PointSet& points) {
  points.validate();
  const long n = points.size();
  Matrix dist = Matrix::Zero(n, n);
  for (long i = 0; i < n; ++i) {
    for (long j = i + 1; j < n; ++j) {
      double d;
      if (points.metric == Metric::euclidean) {
        d = (points.coords.row(i) - points.coords.row(j)).norm();
      } else {
        d = haversine_km(points.coords(i, 0), points.coords(i, 1),
                         points.coords(j, 0), points.coords(j, 1));
      }
      dist(i, j) = d;
      dist(j, i) = d;
    }
  }
  return dist;
}

ProximityGraph build_proximity_graph(const PointSet& points, double radius) {
  if (radius < 0.0 || !std::isfinite(radius))
    throw DomainError("proximity graph: radius must be >= 0");
  const Matrix dist = pairwise_distance(points);

  ProximityGraph graph;
  graph.node_count = points.size();
  graph.radius = radius;
  for (long i = 0; i < graph.node_count; ++i)
    for (long j = i + 1; j < graph.node_count; ++j)
      if (dist(i, j) <= radius)
        graph.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return graph;
}

ShiftOperator gcn_shift(const ProximityGraph& graph) {
  const long n = graph.node_count;
  Vector deg = Vector::Ones(n);  // self-loop from A + I
  for (const auto& [i, j] : graph.edges) {
    deg[i] += 1.0;
    deg[j] += 1.0;
  }
  const Vector inv_sqrt = deg.cwiseSqrt().cwiseInverse();

  Matrix shift = Matrix::Zero(n, n);
  for (long i = 0; i < n; ++i) shift(i, i) = inv_sqrt[i] * inv_sqrt[i];
  for (const auto& [i, j] : graph.edges) {
    const double w = inv_sqrt[i] * inv_sqrt[j];
    shift(i, j) = w;
    shift(j, i) = w;
  }
  return shift;
}

Matrix apply_shift(const ShiftOperator& shift, const Matrix& features) {
  if (shift.cols() != features.rows())
    throw ShapeError("apply_shift: S is " + std::to_string(shift.rows()) + "x" +
                     std::to_string(shift.cols()) + " but X has " +
                     std::to_string(features.rows()) + " rows");
  return shift * features;
}

}  // namespace signet
