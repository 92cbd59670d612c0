#pragma once

#include <string>
#include <vector>

#include "gglab/group/alphabet.hpp"

namespace gglab {

/// How equality of words is decided.
enum class Strategy {
  FreeGroup,
  DehnSmallCancellation,
  /// Every relator is a commutator of two generators (right-angled Artin groups).
  PartiallyCommutative,
};

std::string to_string(Strategy s);

struct Presentation {
  Alphabet alphabet;
  std::vector<Word> relators;  // cyclically reduced
  Strategy strategy = Strategy::FreeGroup;
  /// Generators of a subgroup whose cosets are coned off in the ambient metric.
  std::vector<Word> electrify;
};

/// Cyclically reduces relators, picks the strategy automatically and validates it.
Presentation make_presentation(Alphabet alphabet, std::vector<Word> relators);
/// As above with an explicit strategy; throws ConfigurationError when its
/// preconditions fail.
Presentation make_presentation(Alphabet alphabet, std::vector<Word> relators, Strategy strategy);

/// All cyclic rotations of the relators and of their inverses, deduplicated.
std::vector<Word> symmetrized_relators(const Alphabet& alphabet, const std::vector<Word>& relators);

/// Every common prefix of two distinct symmetrized relators is shorter than a
/// sixth of the shorter one.
bool satisfies_c_prime_sixth(const Alphabet& alphabet, const std::vector<Word>& relators);

/// True if the relator has the form x y x^-1 y^-1 with x, y letters of distinct generators.
bool is_generator_commutator(const Alphabet& alphabet, const Word& relator);

}  // namespace gglab
