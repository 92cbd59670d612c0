#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gglab/dyadic.hpp"
#include "gglab/metric/metric_graph.hpp"

namespace gglab {

using Piece = std::vector<VertexId>;
using Family = std::vector<Piece>;

/// A base graph with one cone vertex per piece; cone edges have length 1/2.
class ConedSpace {
 public:
  ConedSpace(std::shared_ptr<const MetricGraph> base, Family family);

  const MetricGraph& base() const { return *base_; }
  std::shared_ptr<const MetricGraph> base_ptr() const { return base_; }
  const MetricGraph& graph() const { return graph_; }
  const Family& family() const { return family_; }
  std::size_t piece_count() const { return family_.size(); }
  VertexId cone(std::size_t i) const { return static_cast<VertexId>(base_->size() + i); }

  bool in_piece(std::size_t i, VertexId v) const;
  HalfUnits d_el(VertexId u, VertexId v) const { return graph_.distance(u, v); }
  HalfUnits d_base(VertexId u, VertexId v) const { return base_->distance(u, v); }

 private:
  std::shared_ptr<const MetricGraph> base_;
  Family family_;
  MetricGraph graph_;
};

/// Cone-off of `base` over the pieces (each sorted and deduplicated).
ConedSpace electrify(const MetricGraph& base, Family family);
ConedSpace electrify(std::shared_ptr<const MetricGraph> base, Family family);

/// Distance in the coned graph with the cone of piece i deleted.
HalfUnits angular_distance(const ConedSpace& cs, std::size_t piece, VertexId y1, VertexId y2);

struct PsiBucket {
  int r = 0;
  /// Infimum of angular distance over pairs with base distance in [r, r+1).
  Dyadic raw;
  /// min over r' >= r of raw(r').
  Dyadic envelope;
  std::size_t pairs = 0;
};

struct PsiOptions {
  /// Pieces to scan; empty means all.
  std::vector<std::size_t> pieces;
  /// At most this many source points per piece (seeded sample); 0 means all.
  std::size_t max_sources = 0;
  std::uint64_t seed = 1;
};

struct PsiTable {
  std::vector<PsiBucket> buckets;
  std::size_t pieces_scanned = 0;
  std::size_t sources_scanned = 0;
  bool sampled = false;
  /// Largest base diameter seen among scanned pieces.
  Dyadic max_piece_diameter;
};

PsiTable psi_table(const ConedSpace& cs, const PsiOptions& options = {});

}  // namespace gglab
