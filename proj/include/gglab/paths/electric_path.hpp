#pragma once

#include <vector>

#include "gglab/electrics/coned_space.hpp"

namespace gglab {

struct ConeVisit {
  std::size_t piece;
  VertexId entry;
  VertexId exit;
};

struct ElectricPath {
  std::vector<VertexId> vertices;  // in the coned graph
  std::vector<ConeVisit> cone_visits;
  /// Some piece is visited twice through its cone.
  bool backtracking = false;
};

struct ReplacedSegment {
  std::size_t piece;
  std::size_t begin;  // index of the entry vertex in the ambient path
  std::size_t end;    // index of the exit vertex
};

struct AmbientPath {
  std::vector<VertexId> vertices;  // in the base graph
  std::vector<ReplacedSegment> replaced;
};

/// Geodesic of the coned graph that is lexicographically least by vertex index.
ElectricPath electric_geodesic(const ConedSpace& cs, VertexId u, VertexId v);

/// Cone visits extracted from a vertex sequence in the coned graph.
ElectricPath as_electric_path(const ConedSpace& cs, std::vector<VertexId> vertices);

/// Replaces each cone visit by the least base geodesic between entry and exit.
AmbientPath deelectrify(const ElectricPath& path, const ConedSpace& cs);

struct QuasigeodesicConstants {
  /// max(1, max over i < j of arc(i, j) / max(d(p_i, p_j) + 2, 1)).
  double lambda = 1.0;
  Dyadic mu{2};
  std::size_t i = 0;
  std::size_t j = 0;
};

QuasigeodesicConstants quasigeodesic_constants(std::span<const VertexId> path, const MetricGraph& base);

struct PenetrationRecord {
  std::size_t piece;
  bool in_beta = false;
  bool in_gamma = false;
  VertexId beta_entry = kNoVertex, beta_exit = kNoVertex;
  VertexId gamma_entry = kNoVertex, gamma_exit = kNoVertex;
  /// Pieces met by one path only: base distance from entry to exit.
  Dyadic travel;
  /// Pieces met by both: entry and exit offsets.
  Dyadic entry_offset;
  Dyadic exit_offset;
};

struct PenetrationReport {
  std::vector<PenetrationRecord> pieces;
  Dyadic max_travel;
  Dyadic max_entry_offset;
  Dyadic max_exit_offset;
};

/// Compares how an electric path beta and a base geodesic gamma pass through
/// the eps-neighborhoods (base metric) of the pieces.
PenetrationReport penetration_diagnostics(const ElectricPath& beta, std::span<const VertexId> gamma,
                                          const ConedSpace& cs, Dyadic eps);

}  // namespace gglab
