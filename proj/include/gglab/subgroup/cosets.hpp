#pragma once

#include <vector>

#include "gglab/subgroup/subgroup_model.hpp"

namespace gglab {

using Piece = std::vector<VertexId>;  // sorted vertex ids

/// Cosets g_i H meeting a ball, with their traces gH ∩ ball.
struct CosetFamily {
  std::vector<Word> representatives;
  std::vector<Piece> pieces;
};

/// Pieces for the given representatives; throws InputError if two lie in the
/// same coset.
CosetFamily coset_pieces(const SubgroupModel& H, const CayleyBall& ball, const std::vector<Word>& reps);

/// Every coset whose trace has at least `min_points` vertices, ordered by the
/// least vertex of the trace; the representative is that vertex.
CosetFamily coset_pieces_auto(const SubgroupModel& H, const CayleyBall& ball, std::size_t min_points = 2);

}  // namespace gglab
