#pragma once

#include <vector>

#include "gglab/group/presentation.hpp"

namespace gglab {

/// Word-problem oracle for a presentation, dispatching on its strategy.
class WordProblem {
 public:
  explicit WordProblem(const Presentation& p);

  const Presentation& presentation() const { return p_; }
  const Alphabet& alphabet() const { return p_.alphabet; }

  /// Free: free reduction. Dehn: Dehn's algorithm. Partially commutative:
  /// shortlex normal form.
  Word reduce(const Word& w) const;
  bool is_identity(const Word& w) const { return reduce(w).empty(); }
  bool equal(const Word& u, const Word& v) const;

  /// True when `reduce` returns canonical shortlex normal forms.
  bool has_normal_forms() const { return p_.strategy != Strategy::DehnSmallCancellation; }

  /// Whether generators i and j commute (partially commutative strategy only).
  bool commute(std::size_t gi, std::size_t gj) const;

 private:
  Word dehn(const Word& w) const;
  Word trace_normal_form(const Word& w) const;

  Presentation p_;
  std::vector<std::vector<Word>> by_first_letter_;  // symmetrized relators
  std::vector<std::vector<bool>> commute_;
};

/// Dehn's algorithm; throws ConfigurationError unless the presentation uses the
/// Dehn strategy.
Word dehn_reduce(const Word& w, const Presentation& p);

}  // namespace gglab
