#pragma once

#include <string>
#include <vector>

#include "gglab/electrics/coned_space.hpp"
#include "gglab/metric/delta.hpp"

namespace gglab {

struct ProjectionRecord {
  std::size_t onto = 0;
  std::size_t from = 0;
  Dyadic diameter;
  /// Projection lies in the containment radius of the projected piece.
  bool containment = false;
  bool violation = false;
};

struct CoboundednessOptions {
  /// Pieces projected onto; empty means all.
  std::vector<std::size_t> onto;
  /// Dichotomy thresholds; infinite diameter threshold disables the dichotomy.
  Dyadic diameter_threshold = Dyadic::infinity();
  Dyadic containment_radius;
  /// Keep every pair record, not only violations.
  bool keep_all = false;
  /// Targets above this size use bounded local searches instead of full rows.
  std::size_t row_limit = 512;
  /// Projections above this size get a two-sweep diameter lower bound.
  std::size_t exact_projection_limit = 2000;
  /// Large targets: source pieces are thinned to about this many points.
  std::size_t from_sample = 256;
};

struct CoboundednessReport {
  Dyadic max_diameter;
  std::size_t witness_onto = 0;
  std::size_t witness_from = 0;
  std::size_t pairs = 0;
  std::size_t containment_branch = 0;
  std::size_t violations = 0;
  /// Pairs whose projection diameter is a lower bound.
  std::size_t diameter_lower_bounds = 0;
  std::vector<ProjectionRecord> records;
};

/// Diameters of nearest-point projections of piece j onto piece i in `metric`,
/// for ordered pairs i != j, with the bounded-or-contained dichotomy per pair.
CoboundednessReport coboundedness(const MetricGraph& metric, const Family& family,
                                  const CoboundednessOptions& options = {});

struct EmbeddingOptions {
  DeltaOptions delta{DeltaMode::Auto};
  /// Pieces used for psi, coboundedness and quasiconvexity; empty means all.
  std::vector<std::size_t> scope;
  std::string scope_note = "all pieces";
  Dyadic proper_threshold{3};
  std::size_t max_psi_sources = 0;
  /// Pieces larger than this get a sampled pair domain for quasiconvexity.
  std::size_t qc_point_budget = 96;
  bool compute_cobounded = true;
  std::uint64_t seed = 1;
};

struct EmbeddingReport {
  DeltaReport delta_el;
  PsiTable psi_table;
  bool proper = false;
  std::string proper_note;
  Dyadic cobounded_max;
  CoboundednessReport cobounded;
  std::vector<Dyadic> piece_qc;
  Dyadic piece_qc_max;
  std::string scope;
  /// delta_el finite and proper.
  bool verdict = false;
};

/// Properness at finite scale: vacuous when every scanned piece has base
/// diameter at most the threshold; otherwise the raw psi values must strictly
/// increase over the observed buckets and end above the threshold.
bool psi_proper(const PsiTable& table, Dyadic threshold, std::string* note = nullptr);

EmbeddingReport coarse_embedding_report(const ConedSpace& cs, const EmbeddingOptions& options = {});
EmbeddingReport coarse_embedding_report(const MetricGraph& base, const Family& family,
                                        const EmbeddingOptions& options = {});

}  // namespace gglab
