#pragma once

#include <vector>

#include "gglab/electrics/coned_space.hpp"

namespace gglab {

/// Base graph with a combinatorial horoball glued along each piece.
struct Horoballification {
  MetricGraph graph;
  int depth = 1;
  /// columns[i][(k-1)*|piece_i| + j] is the vertex (y_j, k); level 1 is y_j itself.
  std::vector<std::vector<VertexId>> columns;
  /// All vertices of each horoball (levels 1..K).
  Family horoballs;

  VertexId at(std::size_t piece, std::size_t point_index, int level) const;
};

/// Horizontal unit edges join (y, k) and (y', k) when 0 < d_Y(y, y') <= 2^k,
/// where d_Y is the base metric restricted to the piece; vertical unit edges
/// join consecutive levels.
Horoballification horoballify(const MetricGraph& base, const Family& family, int depth,
                              std::size_t pair_budget = 20'000'000);

struct DoubleElectrificationOptions {
  int depth = 4;
  std::size_t pairs = 200;
  std::size_t isometry_pairs = 50;
  std::uint64_t seed = 1;
};

struct DoubleElectrificationReport {
  /// Smallest quarter-grid lambda with d'/lambda - lambda <= d(e p, e q) <= lambda d' + lambda.
  Dyadic lambda_hat{1};
  /// Largest |d(e p, e q) - d'(p, q)|.
  Dyadic max_additive;
  std::size_t pairs_checked = 0;
  std::size_t isometry_pairs_checked = 0;
  bool isometry_ok = true;
  std::pair<VertexId, VertexId> witness{kNoVertex, kNoVertex};
  /// Depth <= 2 leaves no vertex deeper than 2, so the map never uses cones.
  bool degenerate_depth = false;
};

/// Compares X_el with the electrified horoballification (X_h)_el through the
/// map sending horoball vertices of depth > 2 to the cone point and those of
/// depth <= 2 to the underlying point of the piece.
DoubleElectrificationReport double_electrification_check(const MetricGraph& base, const Family& family,
                                                         const DoubleElectrificationOptions& options = {});

}  // namespace gglab
