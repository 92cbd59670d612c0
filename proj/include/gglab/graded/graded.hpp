#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gglab/electrics/embedding.hpp"
#include "gglab/group/cayley_ball.hpp"
#include "gglab/height/algebraic.hpp"
#include "gglab/height/geometric.hpp"

namespace gglab {

/// The space (G, d) on a ball: the Cayley ball, with the cosets of the
/// presentation's `electrify` subgroup coned off when one is given.
struct Ambient {
  std::shared_ptr<const CayleyBall> ball;
  /// Points are the ball vertices; cone vertices (if any) follow them.
  std::shared_ptr<const MetricGraph> metric;
  std::size_t electrified_cosets = 0;
  DeltaReport delta;
};

Ambient make_ambient(const Presentation& p, int radius, const BallOptions& ball_options = {},
                     const DeltaOptions& delta_options = {DeltaMode::Auto});

/// Traces of all cosets of the given subgroups with at least two points in the ball.
Family subgroup_pieces(const Presentation& p, const CayleyBall& ball, const std::vector<std::vector<Word>>& subgroups);

/// One witness per conjugacy class of intersection subgroups; within a class
/// the core graph with the shortlex-least signature is kept. Output is sorted
/// by that signature.
std::vector<CoreGraph> conjugacy_representatives(const std::vector<AlgebraicWitness>& witnesses);

/// Indices of one set per left-translation class, in input order. Sets are
/// compared through their translates x^-1 J for anchors x in J (all anchors
/// up to `anchor_limit` points, the first `anchor_limit` otherwise).
std::vector<std::size_t> translation_representatives(const CayleyBall& ball, const std::vector<Piece>& sets,
                                                     std::size_t anchor_limit = 256);

/// The ambient metric with the family coned off; the family may be empty.
ConedSpace build_level_metric(const Ambient& ambient, Family family);

enum class GradedMode { Algebraic, Geometric };
std::string to_string(GradedMode m);

struct GradedOptions {
  GradedMode mode = GradedMode::Geometric;
  int radius = 8;
  /// Coset representative length for algebraic mode.
  int L = 6;
  /// Boundedness threshold; default max(1, floor(safe_radius / 5)).
  std::optional<Dyadic> bound;
  /// Default {1, 2, 4, ..., max(1, floor(safe_radius / 10))}.
  std::vector<int> delta_grid;
  /// Largest acceptable coarse path connectivity constant D_i.
  Dyadic path_cap{8};
  Dyadic proper_threshold{3};
  /// Number of pieces near the identity used for psi, projections and quasiconvexity.
  std::size_t scope_pieces = 8;
  std::size_t psi_sources = 32;
  /// Pieces examined for coarse path connectivity.
  std::size_t connectivity_pieces = 200'000;
  /// Delta of each level space: exact on small blocks, sampled otherwise.
  DeltaOptions level_delta{DeltaMode::Auto, 200'000'000ULL, 1'000};
  /// Sources for the sampled comparison of d_i against d.
  std::size_t distortion_sources = 16;
  /// Compare the geometric height at radius R - 2 with the one at R.
  bool check_stabilization = true;
  std::uint64_t seed = 1;
  BallOptions ball;
};

struct GradedLevelReport {
  int level = 0;
  /// Pieces coned off in d_i.
  std::size_t pieces = 0;
  /// Names of conjugacy (or translation) class representatives of level i.
  std::vector<std::string> representatives;
  /// The level i-1 family inside (G, d_i).
  EmbeddingReport embedding;
  std::size_t embedded_pieces = 0;
  /// max D_i over the examined pieces of level i, in (G, d).
  Dyadic path_connected;
  std::size_t connectivity_examined = 0;
  /// Largest d - d_i on sampled pairs.
  Dyadic max_shortening;
  bool verdict = false;
};

struct GradedVerdict {
  GradedMode mode = GradedMode::Geometric;
  int radius = 0;
  int safe_radius = 0;
  int height = 0;
  Dyadic bound;
  bool finite_height = false;
  /// Heights at R - 2 and R in geometric mode (when checked).
  std::optional<int> height_previous;
  std::vector<GradedLevelReport> levels;
  bool overall = false;
  /// Truncation and heuristic notices.
  std::vector<std::string> truncated;
  std::optional<GeometricHeightReport> geometric;
  std::optional<AlgebraicHeightReport> algebraic;
};

GradedVerdict graded_verdict(const Presentation& p, const std::vector<std::vector<Word>>& subgroups,
                             const GradedOptions& options = {});

struct ProperRow {
  int D0 = 0;
  std::size_t max_orbit_points = 0;
};

struct RoundtripOptions {
  GradedOptions graded;
  Dyadic qc_threshold{4};
  std::vector<int> properness_radii{1, 2, 4};
  std::size_t properness_centers = 32;
  std::size_t qc_points = 96;
};

struct RoundtripRecord {
  Dyadic qc_constant;
  Dyadic qc_threshold;
  bool quasiconvex = false;
  GradedVerdict graded;
  std::vector<ProperRow> properness;
  bool agreement = false;
  std::string note;
};

/// Compares quasiconvexity of the subgroup orbit with the graded verdict.
RoundtripRecord roundtrip_theorem_check(const Presentation& p, const std::vector<Word>& subgroup,
                                        const RoundtripOptions& options = {});

}  // namespace gglab
