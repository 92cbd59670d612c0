#pragma once

#include <string>
#include <vector>

#include "gglab/group/presentation.hpp"
#include "gglab/subgroup/core_graph.hpp"

namespace gglab {

/// The left coset rep * H_subgroup.
struct CosetRef {
  std::size_t subgroup = 0;
  Word rep;  // shortlex-least element of the coset
};

struct AlgebraicWitness {
  std::vector<CosetRef> cosets;
  /// Core graph of the intersection of the conjugates rep H rep^-1.
  CoreGraph intersection;
  std::size_t rank = 0;
  /// Shortest nontrivial element of the intersection.
  Word element;
};

struct AlgebraicHeightOptions {
  int L = 6;
  int n_max = 8;
  std::size_t pullback_budget = 2'000'000;
};

struct AlgebraicHeightReport {
  std::vector<CoreGraph> subgroups;
  int L = 0;
  int height = 0;
  /// Level n_max still had infinite intersections: height is only a lower bound.
  bool at_bound = false;
  /// Every tuple of enumerated cosets one level above `height` was tested.
  bool exhaustive = false;
  /// witnesses[i] holds the (i+1)-fold tuples with infinite intersection.
  std::vector<std::vector<AlgebraicWitness>> witnesses;
  std::size_t cosets_enumerated = 0;
  std::size_t pullbacks = 0;
  std::string note;
};

/// Height certificates via pullbacks: enumerates cosets with representatives of
/// length <= L, forms tuples of distinct cosets containing an identity coset
/// and grows them level by level while the intersection of conjugates has rank >= 1.
AlgebraicHeightReport algebraic_height(const Presentation& p, const std::vector<std::vector<Word>>& subgroups,
                                       const AlgebraicHeightOptions& options = {});

/// All freely reduced words of length <= L in shortlex order.
std::vector<Word> reduced_words_up_to(const Alphabet& alphabet, int L);

}  // namespace gglab
