#pragma once

#include <string>
#include <vector>

#include "gglab/electrics/coned_space.hpp"
#include "gglab/group/cayley_ball.hpp"

namespace gglab {

/// Ambient data for geometric intersections: a metric whose first
/// `point_count()` vertices are group elements, the safe region, and the coset traces.
struct GeometricSetting {
  const MetricGraph* metric = nullptr;
  std::vector<bool> safe;  // per point
  Family pieces;
  Dyadic delta;  // four-point constant of the ambient metric
  int safe_radius = 0;
};

GeometricSetting make_geometric_setting(const CayleyBall& ball, const MetricGraph& metric, Family pieces,
                                        Dyadic delta);

struct GeometricIntersection {
  int level = 0;
  std::vector<std::size_t> tuple;  // piece indices, increasing
  int Delta = 0;
  std::vector<VertexId> J;  // sorted, inside the safe region
  Dyadic diameter;
  bool diameter_exact = true;
};

struct GeometricOptions {
  std::vector<int> delta_grid{1};
  Dyadic bound{2};
  int max_level = 16;
  std::size_t candidate_budget = 1'000'000;
  /// Sets larger than this get a two-sweep lower bound for their diameter.
  std::size_t exact_diameter_limit = 2'000;
  /// Metrics with at most this many points get a precomputed point distance matrix.
  std::size_t matrix_point_limit = 4'000;
};

/// {1, 2, 4, ..., max(1, floor(safe_radius / 10))}.
std::vector<int> default_delta_grid(int safe_radius);

/// Intersections J = (cap_j piece_j^{+Delta}) within the safe region passing
/// the three clauses: distinct pieces, diameter >= 10 Delta, and J not inside
/// the rho-neighborhood of cap_j piece_j^{+(Delta - slack)} (rho = 20 delta and
/// slack = 2 delta, or 20 and 1 steps when delta < 1/2).
std::vector<GeometricIntersection> enumerate_geometric_intersections(const GeometricSetting& s, int level,
                                                                     const GeometricOptions& options);

struct GeometricHeightReport {
  int height = 0;
  Dyadic bound;
  /// min(B, 2 * safe_radius - 1): a set spanning the safe ball counts as unbounded.
  Dyadic effective_bound;
  std::vector<int> delta_grid;
  /// levels[i] holds accepted (i+2)-fold intersections.
  std::vector<std::vector<GeometricIntersection>> levels;
  /// Some piece has diameter above the bound.
  bool unbounded_pieces = false;
  bool level_cap_hit = false;
  bool budget_hit = false;
  std::string note;
};

/// Largest i such that some accepted i-fold intersection (pieces for i = 1)
/// has diameter above the bound; a lower bound for the true geometric height.
GeometricHeightReport geometric_height(const GeometricSetting& s, const GeometricOptions& options);

struct ConcentrationResult {
  bool found = false;
  VertexId x = kNoVertex;
  /// max over the cosets of d(x, coset).
  Dyadic radius;
  Dyadic allowed;
  std::string note;
};

/// Looks for x on a geodesic between two far points of J with every coset
/// within 2C + 10 delta of x.
ConcentrationResult ball_concentration_check(const MetricGraph& metric, const Family& cosets,
                                             const std::vector<VertexId>& J, Dyadic delta, Dyadic C);

struct QiLevelReport {
  int level = 0;
  std::size_t pieces = 0;
  /// Smallest mesh making every piece coarsely path connected.
  Dyadic connectivity;
  Dyadic lambda{1};
  /// Smallest C with each ordered pair's projection of diameter <= C or within C of the other piece.
  Dyadic projection;
  std::size_t containment_pairs = 0;
  std::size_t pieces_examined = 0;
  /// Pieces above the undistortion point limit (not checked for lambda).
  std::size_t undistortion_skipped = 0;
  bool passes = false;
};

struct QiOptions {
  Dyadic bound{20};
  Dyadic lambda_max{4};
  std::size_t undistortion_point_limit = 400;
  int max_mesh = 64;
  /// Only the first this many pieces of a level are examined (and projected onto).
  std::size_t piece_limit = 64;
};

/// Uniform qi-intersection clauses per level (level 1 = pieces themselves).
std::vector<QiLevelReport> qi_intersection_check(const GeometricSetting& s,
                                                 const std::vector<std::vector<Piece>>& levels,
                                                 const QiOptions& options = {});

/// Smallest integer mesh D <= max_mesh such that the points are D-coarsely
/// connected in the metric; infinite if none.
Dyadic coarse_connectivity(const MetricGraph& metric, const std::vector<VertexId>& points, int max_mesh);

/// Diameter of a point set: exact below the limit, two-sweep lower bound above.
Dyadic set_diameter(const MetricGraph& metric, const std::vector<VertexId>& points, std::size_t exact_limit,
                    bool* exact = nullptr);

}  // namespace gglab
