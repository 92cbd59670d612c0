#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gglab/dyadic.hpp"
#include "gglab/metric/metric_graph.hpp"

namespace gglab {

/// All vertices lying on some geodesic between u and v.
struct GeodesicSet {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
  HalfUnits length = 0;
  std::vector<VertexId> interval;  // sorted
};

GeodesicSet geodesic_interval(const MetricGraph& g, VertexId u, VertexId v);

/// Points of B closest to x (sorted).
std::vector<VertexId> nearest_point_projection(const MetricGraph& g, std::span<const VertexId> B, VertexId x);

/// Distances from every vertex to the set B.
std::vector<HalfUnits> distance_to_set(const MetricGraph& g, std::span<const VertexId> B,
                                       HalfUnits cutoff = kInfiniteHalves);

using VertexPair = std::pair<VertexId, VertexId>;

/// All unordered pairs {x, y} with x < y drawn from `points`.
std::vector<VertexPair> all_pairs(std::span<const VertexId> points);

struct QuasiconvexityResult {
  Dyadic constant;
  /// Pair (x, y) and interval vertex w realizing the constant.
  VertexId x = kNoVertex;
  VertexId y = kNoVertex;
  VertexId w = kNoVertex;
  std::size_t pairs_scanned = 0;
};

/// max over pairs of max over interval(x, y) of d(w, Q).
QuasiconvexityResult quasiconvexity_constant(const MetricGraph& g, std::span<const VertexId> Q,
                                             std::span<const VertexPair> pair_domain);

/// Metric on a subset Y (matrix indexed by positions in `points`).
struct SubsetMetric {
  std::vector<VertexId> points;
  std::vector<HalfUnits> dist;  // row-major |points| x |points|
  HalfUnits at(std::size_t i, std::size_t j) const { return dist[i * points.size() + j]; }
};

/// Induced (restricted) metric of g on Y.
SubsetMetric restricted_metric(const MetricGraph& g, std::span<const VertexId> Y);

/// Path metric of the graph on Y joining y, y' when d(y, y') <= D, weighted by d.
SubsetMetric coarse_path_metric(const MetricGraph& g, std::span<const VertexId> Y, Dyadic D);

struct UndistortionResult {
  bool ok = false;
  /// Smallest lambda on the 1/4 grid, infinite when the coarse metric is disconnected.
  Dyadic lambda_hat;
  VertexPair witness{kNoVertex, kNoVertex};
  std::string failure;
};

/// Smallest lambda with d/lambda - lambda <= d_Y <= lambda*d + lambda on Y x Y.
UndistortionResult undistortion_check(const MetricGraph& g, std::span<const VertexId> Y, Dyadic D,
                                      Dyadic lambda_max);

/// Smallest quarter-grid lambda >= 1 with d/lambda - lambda <= e and
/// e <= lambda*d + lambda for a single pair of distances (given in half units).
Dyadic quarter_grid_lambda(HalfUnits d, HalfUnits e);

}  // namespace gglab
