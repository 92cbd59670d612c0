#include "gglab/group/presentation.hpp"

#include <algorithm>
#include <set>

#include "gglab/errors.hpp"

namespace gglab {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::FreeGroup: return "free";
    case Strategy::DehnSmallCancellation: return "dehn";
    case Strategy::PartiallyCommutative: return "partially-commutative";
  }
  return "unknown";
}

std::vector<Word> symmetrized_relators(const Alphabet& alphabet, const std::vector<Word>& relators) {
  std::set<std::vector<Letter>> seen;
  std::vector<Word> out;
  for (const Word& r : relators) {
    for (const Word& base : {r, inverse(r, alphabet)}) {
      const std::size_t n = base.size();
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<Letter> rot(n);
        for (std::size_t i = 0; i < n; ++i) rot[i] = base[(k + i) % n];
        if (seen.insert(rot).second) out.emplace_back(std::move(rot));
      }
    }
  }
  return out;
}

bool satisfies_c_prime_sixth(const Alphabet& alphabet, const std::vector<Word>& relators) {
  // A proper power has two distinct rotations spelling the same word.
  for (const Word& r : relators)
    for (std::size_t k = 1; k < r.size(); ++k)
      if (r.size() % k == 0 && std::equal(r.letters.begin() + static_cast<std::ptrdiff_t>(k), r.letters.end(),
                                          r.letters.begin()))
        return false;
  const auto sym = symmetrized_relators(alphabet, relators);
  for (std::size_t i = 0; i < sym.size(); ++i) {
    for (std::size_t j = i + 1; j < sym.size(); ++j) {
      const std::size_t shorter = std::min(sym[i].size(), sym[j].size());
      std::size_t p = 0;
      while (p < shorter && sym[i][p] == sym[j][p]) ++p;
      if (6 * p >= shorter) return false;
    }
  }
  return true;
}

bool is_generator_commutator(const Alphabet& alphabet, const Word& r) {
  return r.size() == 4 && r[2] == alphabet.inverse(r[0]) && r[3] == alphabet.inverse(r[1]) &&
         alphabet.generator_of(r[0]) != alphabet.generator_of(r[1]);
}

namespace {

std::vector<Word> clean_relators(const Alphabet& alphabet, std::vector<Word> relators) {
  std::vector<Word> out;
  for (Word& r : relators) {
    Word c = cyclic_reduce(r, alphabet);
    if (!c.empty()) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

Presentation make_presentation(Alphabet alphabet, std::vector<Word> relators) {
  auto cleaned = clean_relators(alphabet, std::move(relators));
  Strategy s = Strategy::FreeGroup;
  if (!cleaned.empty()) {
    const bool commutators = std::all_of(cleaned.begin(), cleaned.end(), [&](const Word& r) {
      return is_generator_commutator(alphabet, r);
    });
    if (commutators) {
      s = Strategy::PartiallyCommutative;
    } else if (satisfies_c_prime_sixth(alphabet, cleaned)) {
      s = Strategy::DehnSmallCancellation;
    } else {
      throw ConfigurationError(
          "relators are neither generator commutators nor satisfy the C'(1/6) condition");
    }
  }
  return make_presentation(std::move(alphabet), std::move(cleaned), s);
}

Presentation make_presentation(Alphabet alphabet, std::vector<Word> relators, Strategy strategy) {
  Presentation p;
  p.relators = clean_relators(alphabet, std::move(relators));
  p.alphabet = std::move(alphabet);
  p.strategy = strategy;
  switch (strategy) {
    case Strategy::FreeGroup:
      if (!p.relators.empty()) throw ConfigurationError("free-group strategy requires no relators");
      break;
    case Strategy::DehnSmallCancellation:
      if (p.relators.empty()) throw ConfigurationError("Dehn strategy requires at least one relator");
      if (!satisfies_c_prime_sixth(p.alphabet, p.relators))
        throw ConfigurationError("presentation fails the C'(1/6) piece condition");
      break;
    case Strategy::PartiallyCommutative:
      for (const Word& r : p.relators)
        if (!is_generator_commutator(p.alphabet, r))
          throw ConfigurationError("relator " + p.alphabet.format(r) + " is not a generator commutator");
      break;
  }
  return p;
}

}  // namespace gglab
