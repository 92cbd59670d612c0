#pragma once

#include <string>
#include <vector>

#include "gglab/group/alphabet.hpp"

namespace gglab {

using State = std::int32_t;
inline constexpr State kNoState = -1;

/// Folded, cored, basepointed labeled graph of a subgroup of a free group.
/// States are numbered in breadth-first order from the basepoint (state 0),
/// following letters in alphabet order, so equal subgroups give identical graphs.
class CoreGraph {
 public:
  /// Stallings folding of the bouquet of generator loops.
  static CoreGraph fold(const Alphabet& alphabet, const std::vector<Word>& generators);
  /// Intersection of the two subgroups (basepoint component of the product).
  static CoreGraph pullback(const CoreGraph& a, const CoreGraph& b);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return state_count_; }
  State basepoint() const { return 0; }
  State transition(State s, Letter l) const {
    return delta_[static_cast<std::size_t>(s) * alphabet_.size() + l];
  }
  /// Number of positively labeled edges.
  std::size_t edge_count() const;
  std::size_t rank() const;

  bool accepts(const Word& w) const;

  /// Longest readable prefix of w starting at `from`.
  struct Reading {
    State state;
    std::size_t consumed;
  };
  Reading read(State from, const Word& w) const;

  /// Core graph of g H g^-1.
  CoreGraph conjugate(const Word& g) const;

  /// Free basis read off a breadth-first spanning tree (one word per non-tree edge).
  std::vector<Word> basis() const;
  /// Shortest nontrivial reduced basepoint loop (shortlex-least among shortest);
  /// empty word if the subgroup is trivial.
  Word shortest_loop() const;
  /// Shortlex-least word labeling a path from the basepoint to `s`.
  Word path_to(State s) const;

  /// Canonical text form; equal iff the subgroups are equal.
  std::string signature() const;
  /// Canonical text form of the conjugacy class (basepoint forgotten).
  std::string conjugacy_signature() const;

  /// Key of the left coset wH: position of w^-1 in the Schreier graph.
  std::string left_coset_key(const Word& w) const;
  /// Shortlex-least element of the left coset wH.
  Word left_coset_representative(const Word& w) const;

  friend bool operator==(const CoreGraph& a, const CoreGraph& b) {
    return a.alphabet_ == b.alphabet_ && a.state_count_ == b.state_count_ && a.delta_ == b.delta_;
  }

 private:
  friend class CoreGraphBuilder;
  Alphabet alphabet_;
  std::size_t state_count_ = 1;
  std::vector<State> delta_;
};

/// Shortlex-least element of H g H.
Word double_coset_canonical(const CoreGraph& H, const Word& g);

}  // namespace gglab
