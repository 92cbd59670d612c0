#include "gglab/group/word_problem.hpp"

#include "gglab/errors.hpp"

namespace gglab {

WordProblem::WordProblem(const Presentation& p) : p_(p) {
  const std::size_t rank = p_.alphabet.rank();
  commute_.assign(rank, std::vector<bool>(rank, false));
  if (p_.strategy == Strategy::DehnSmallCancellation) {
    by_first_letter_.resize(p_.alphabet.size());
    for (Word& r : symmetrized_relators(p_.alphabet, p_.relators))
      by_first_letter_[r[0]].push_back(std::move(r));
  } else if (p_.strategy == Strategy::PartiallyCommutative) {
    for (const Word& r : p_.relators) {
      const std::size_t x = p_.alphabet.generator_of(r[0]);
      const std::size_t y = p_.alphabet.generator_of(r[1]);
      commute_[x][y] = commute_[y][x] = true;
    }
  }
}

bool WordProblem::commute(std::size_t gi, std::size_t gj) const { return commute_.at(gi).at(gj); }

Word WordProblem::reduce(const Word& w) const {
  switch (p_.strategy) {
    case Strategy::FreeGroup: return free_reduce(w, p_.alphabet);
    case Strategy::DehnSmallCancellation: return dehn(w);
    case Strategy::PartiallyCommutative: return trace_normal_form(w);
  }
  return w;
}

bool WordProblem::equal(const Word& u, const Word& v) const {
  return is_identity(multiply(inverse(u, p_.alphabet), v, p_.alphabet));
}

Word WordProblem::dehn(const Word& input) const {
  Word w = free_reduce(input, p_.alphabet);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < w.size() && !changed; ++i) {
      const Word* best = nullptr;
      std::size_t best_len = 0;
      for (const Word& r : by_first_letter_[w[i]]) {
        std::size_t m = 0;
        while (m < r.size() && i + m < w.size() && w[i + m] == r[m]) ++m;
        if (2 * m > r.size() && m > best_len) {
          best = &r;
          best_len = m;
        }
      }
      if (best == nullptr) continue;
      // u = w[i, i+m) equals the inverse of the complement r[m, n).
      Word replacement;
      for (std::size_t k = best->size(); k > best_len; --k)
        replacement.letters.push_back(p_.alphabet.inverse((*best)[k - 1]));
      Word next;
      next.letters.assign(w.letters.begin(), w.letters.begin() + static_cast<std::ptrdiff_t>(i));
      next.letters.insert(next.letters.end(), replacement.letters.begin(), replacement.letters.end());
      next.letters.insert(next.letters.end(), w.letters.begin() + static_cast<std::ptrdiff_t>(i + best_len),
                          w.letters.end());
      w = free_reduce(next, p_.alphabet);
      changed = true;
    }
  }
  return w;
}

Word WordProblem::trace_normal_form(const Word& input) const {
  const Alphabet& A = p_.alphabet;
  std::vector<Letter> w = free_reduce(input, A).letters;
  const auto letters_commute = [&](Letter x, Letter y) {
    return commute_[A.generator_of(x)][A.generator_of(y)];
  };
  // Cancel x ... x^-1 pairs separated only by letters commuting with x.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < w.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        if (w[j] == A.inverse(w[i])) {
          w.erase(w.begin() + static_cast<std::ptrdiff_t>(j));
          w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
        if (!letters_commute(w[i], w[j])) break;
      }
    }
  }
  // Lexicographic normal form: repeatedly extract the least letter that can be
  // shuffled to the front.
  Word out;
  out.letters.reserve(w.size());
  while (!w.empty()) {
    std::size_t pick = 0;
    for (std::size_t j = 1; j < w.size(); ++j) {
      bool movable = true;
      for (std::size_t k = 0; k < j && movable; ++k)
        movable = letters_commute(w[k], w[j]) || w[k] == w[j];
      if (movable && w[j] < w[pick]) pick = j;
    }
    out.letters.push_back(w[pick]);
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

Word dehn_reduce(const Word& w, const Presentation& p) {
  if (p.strategy != Strategy::DehnSmallCancellation)
    throw ConfigurationError("dehn_reduce requires a C'(1/6) presentation");
  return WordProblem(p).reduce(w);
}

}  // namespace gglab
