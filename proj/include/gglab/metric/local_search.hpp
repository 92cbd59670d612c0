#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "gglab/metric/metric_graph.hpp"

namespace gglab {

/// Reusable bounded Dijkstra whose cost is proportional to the explored
/// region rather than to the graph size.
class LocalSearch {
 public:
  explicit LocalSearch(const MetricGraph& g);

  /// Settles vertices within `cutoff` of the sources in nondecreasing distance
  /// order. `visit` may return false to stop early. Returns the settled
  /// vertices with their distances.
  const std::vector<std::pair<VertexId, HalfUnits>>& run(
      std::span<const VertexId> sources, HalfUnits cutoff,
      const std::function<bool(VertexId, HalfUnits)>& visit = {});

  /// Distance found by the last run, or infinity if the vertex was not settled.
  HalfUnits distance(VertexId v) const;

 private:
  void reset();

  const MetricGraph* g_;
  std::vector<HalfUnits> dist_;
  std::vector<bool> settled_;
  std::vector<VertexId> touched_;
  std::vector<std::pair<VertexId, HalfUnits>> out_;
};

}  // namespace gglab
