#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gglab/dyadic.hpp"
#include "gglab/metric/metric_graph.hpp"

namespace gglab {

struct MeetingParams {
  Dyadic Delta{10};
  double eps = 0.01;
  /// Four-point constant of the ambient space.
  Dyadic delta;
};

struct MeetingReport {
  MeetingParams params;
  /// Separation radius max(20 delta, 1) and the slack standing in for 2 delta.
  Dyadic rho;
  Dyadic slack;
  std::vector<std::pair<VertexId, VertexId>> pairs;  // x1 < x2, dominance-maximal
  std::size_t raw_pairs = 0;
  std::size_t candidates = 0;
  std::map<std::string, std::string> meta;
};

/// Pairs x1, x2 (drawn from `domain`, or all vertices when empty) with
/// d(x1, x2) >= Delta, both within eps*Delta of H and of Y, and passing the
/// separation clause: it is not the case that both x1 and x2 have a point at
/// distance rho within eps*Delta - slack of both H and Y.
MeetingReport detect_meetings(const MetricGraph& g, std::span<const VertexId> H, std::span<const VertexId> Y,
                              const MeetingParams& params, std::span<const VertexId> domain = {});

/// Parses "0.01" or "1/100".
double parse_ratio(const std::string& text);

}  // namespace gglab
