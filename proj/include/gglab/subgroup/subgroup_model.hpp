#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gglab/group/cayley_ball.hpp"
#include "gglab/subgroup/core_graph.hpp"

namespace gglab {

enum class SubgroupKind {
  /// Subgroup of a free group, exact via its core graph.
  FreeCore,
  /// Subgroup generated by a subset of the generators of a partially
  /// commutative group, exact via minimal coset representatives.
  Special,
  /// Any other case: cosets approximated inside a ball by generator orbits.
  Orbit,
};

std::string to_string(SubgroupKind k);

/// A finitely generated subgroup together with the exactness available for it.
class SubgroupModel {
 public:
  static SubgroupModel make(const Presentation& p, std::vector<Word> generators);
  static SubgroupModel from_core(const Presentation& p, CoreGraph core);

  SubgroupKind kind() const { return kind_; }
  bool exact() const { return kind_ != SubgroupKind::Orbit; }
  const std::vector<Word>& generators() const { return generators_; }
  /// Throws UnsupportedError unless the kind is FreeCore.
  const CoreGraph& core() const;

  bool contains(const Word& w) const;
  /// Canonical key of the left coset wH (exact kinds only).
  std::string coset_key(const Word& w) const;

  /// Per ball vertex: the least vertex id of its coset within the ball.
  /// Orbit kind joins v and v*h whenever both lie in the ball.
  std::vector<VertexId> coset_labels(const CayleyBall& ball) const;

 private:
  Word special_reduce(const Word& w) const;

  SubgroupKind kind_ = SubgroupKind::Orbit;
  Presentation presentation_;
  std::vector<Word> generators_;
  std::optional<CoreGraph> core_;
  std::vector<bool> special_letters_;  // by generator index
  std::shared_ptr<const WordProblem> problem_;
};

}  // namespace gglab
