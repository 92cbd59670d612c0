#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gglab {

/// Index into an alphabet: generators occupy [0, rank), their inverses
/// [rank, 2*rank) in the same order. This is also the shortlex letter order.
using Letter = std::uint8_t;

/// A finite sequence of letters. Reducedness is maintained by the operations
/// that produce words, not by the type.
struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> l) : letters(std::move(l)) {}

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  Letter operator[](std::size_t i) const { return letters[i]; }
  Letter back() const { return letters.back(); }

  friend bool operator==(const Word&, const Word&) = default;
};

/// Shortlex comparison: shorter first, then lexicographic by letter index.
std::strong_ordering shortlex_compare(const Word& a, const Word& b);
inline bool shortlex_less(const Word& a, const Word& b) { return shortlex_compare(a, b) < 0; }

/// Symmetric generating alphabet. Generators are single lowercase characters;
/// the inverse of `a` is written `A`.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::string_view generator_symbols);

  std::size_t rank() const { return generators_.size(); }
  std::size_t size() const { return 2 * generators_.size(); }

  Letter inverse(Letter l) const {
    return static_cast<Letter>(l < rank() ? l + rank() : l - rank());
  }
  /// Index of the generator underlying a letter.
  std::size_t generator_of(Letter l) const { return l < rank() ? l : l - rank(); }
  bool is_positive(Letter l) const { return l < rank(); }

  char symbol(Letter l) const;
  Letter letter(char c) const;  // throws InputError on unknown symbols
  bool contains(char c) const;
  const std::string& generators() const { return generators_; }

  /// Raw letter sequence; whitespace and the identity marker '1' are skipped.
  Word parse(std::string_view text) const;
  std::string format(const Word& w) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::string generators_;
};

Word free_reduce(const Word& w, const Alphabet& alphabet);
Word inverse(const Word& w, const Alphabet& alphabet);
/// Free reduction of the concatenation u*v.
Word multiply(const Word& u, const Word& v, const Alphabet& alphabet);
/// Cyclically reduced core of a freely reduced word.
Word cyclic_reduce(const Word& w, const Alphabet& alphabet);
bool is_freely_reduced(const Word& w, const Alphabet& alphabet);

}  // namespace gglab
