#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gglab/dyadic.hpp"

namespace gglab {

using VertexId = std::int32_t;
inline constexpr VertexId kNoVertex = -1;

struct Edge {
  VertexId u;
  VertexId v;
  HalfUnits length;
};

struct Arc {
  VertexId to;
  HalfUnits length;
};

/// Options for a single shortest-path search.
struct SearchOptions {
  /// Vertex treated as deleted (used for angular metrics).
  VertexId blocked = kNoVertex;
  /// Vertices farther than this are reported as infinite.
  HalfUnits cutoff = kInfiniteHalves;
};

using DistanceRow = std::shared_ptr<const std::vector<HalfUnits>>;

/// Undirected weighted graph with dyadic edge lengths (stored in half units)
/// and a lazily cached shortest-path oracle.
///
/// The first `point_count()` vertices are points of the modelled space (group
/// elements); vertices after them are auxiliary (cone or horoball vertices).
class MetricGraph {
 public:
  MetricGraph();
  explicit MetricGraph(std::size_t vertex_count);
  MetricGraph(const MetricGraph& other);
  MetricGraph& operator=(const MetricGraph& other);
  MetricGraph(MetricGraph&&) noexcept;
  MetricGraph& operator=(MetricGraph&&) noexcept;
  ~MetricGraph();

  VertexId add_vertex(std::string name = {});
  void add_edge(VertexId u, VertexId v, HalfUnits length);

  std::size_t size() const { return names_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& name(VertexId v) const { return names_.at(static_cast<std::size_t>(v)); }
  void set_name(VertexId v, std::string name) { names_.at(static_cast<std::size_t>(v)) = std::move(name); }
  const std::vector<std::string>& names() const { return names_; }

  std::size_t point_count() const { return point_count_; }
  void set_point_count(std::size_t n);

  std::span<const Arc> neighbors(VertexId v) const;
  std::size_t degree(VertexId v) const { return neighbors(v).size(); }

  /// Fresh single- or multi-source search; not cached.
  std::vector<HalfUnits> distances_from(VertexId source, const SearchOptions& options = {}) const;
  std::vector<HalfUnits> distances_from(std::span<const VertexId> sources,
                                        const SearchOptions& options = {}) const;

  /// Cached full distance row from `source`.
  DistanceRow row(VertexId source) const;
  HalfUnits distance(VertexId u, VertexId v) const;

  /// Component label per vertex (labels are 0.. in order of first vertex).
  std::vector<VertexId> components() const;
  bool connected() const;

  /// Byte budget for the row cache; oldest rows are evicted first.
  void set_cache_budget(std::size_t bytes);

  /// Free-form annotations carried into serialized artifacts.
  std::map<std::string, std::string> meta;

 private:
  struct Cache;
  void ensure_adjacency() const;
  void invalidate();
  void check_vertex(VertexId v) const;

  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::size_t point_count_ = 0;
  bool point_count_set_ = false;

  mutable bool adjacency_ready_ = false;
  mutable std::vector<std::size_t> offsets_;
  mutable std::vector<Arc> arcs_;
  mutable HalfUnits max_length_ = 0;
  mutable bool uniform_ = true;
  std::unique_ptr<Cache> cache_;
};

/// Length of a path given by vertex sequence; throws DomainError if two
/// consecutive vertices are not adjacent.
HalfUnits path_length(const MetricGraph& g, std::span<const VertexId> path);

/// Shortest path with least-index tie-breaking: among all geodesics, the one
/// whose vertex sequence (from u) is lexicographically least.
std::vector<VertexId> least_geodesic(const MetricGraph& g, VertexId u, VertexId v,
                                     const SearchOptions& options = {});

}  // namespace gglab
