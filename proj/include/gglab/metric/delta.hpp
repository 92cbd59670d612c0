#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "gglab/dyadic.hpp"
#include "gglab/metric/metric_graph.hpp"

namespace gglab {

enum class DeltaMode {
  Exact,
  Sampled,
  /// Exact when it fits the budget, sampled otherwise.
  Auto,
};

struct DeltaOptions {
  DeltaMode mode = DeltaMode::Exact;
  /// Maximum number of quadruple evaluations in exact mode.
  std::uint64_t quadruple_budget = 4'000'000'000ULL;
  /// Largest biconnected block scanned exactly (the scan stores its distance matrix).
  std::size_t block_vertex_budget = 6'000;
  std::size_t sample_vertices = 48;
  std::uint64_t seed = 1;
};

struct DeltaReport {
  Dyadic delta4;
  bool exact = true;
  std::size_t sample_vertices = 0;
  std::uint64_t seed = 0;
  std::array<VertexId, 4> witness{kNoVertex, kNoVertex, kNoVertex, kNoVertex};
  std::uint64_t quadruples_evaluated = 0;
  std::size_t blocks_scanned = 0;
  std::string note;
};

/// Gromov product (x|y)_w.
Dyadic gromov_product(const MetricGraph& g, VertexId x, VertexId y, VertexId w);

/// (L1 - L2)/2 for the three pairwise sums of the quadruple.
Dyadic four_point_value(const MetricGraph& g, const std::array<VertexId, 4>& q);

/// Four-point hyperbolicity constant. Exact mode splits the graph into
/// biconnected blocks (delta of a graph is the max over its blocks) and scans
/// each block with pair-sorted pruning. Sampled mode scans all quadruples of a
/// seeded vertex sample and reports a lower bound.
DeltaReport delta_hyperbolicity(const MetricGraph& g, const DeltaOptions& options = {});

/// Exact scan restricted to a vertex subset (distances measured in g).
DeltaReport delta_on_subset(const MetricGraph& g, const std::vector<VertexId>& subset,
                            std::uint64_t quadruple_budget);

}  // namespace gglab
