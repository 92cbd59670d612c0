#include "gglab/group/alphabet.hpp"

#include <algorithm>
#include <cctype>

#include "gglab/errors.hpp"

namespace gglab {

std::strong_ordering shortlex_compare(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  return std::lexicographical_compare_three_way(a.letters.begin(), a.letters.end(),
                                                b.letters.begin(), b.letters.end());
}

Alphabet::Alphabet(std::string_view generator_symbols) {
  for (char c : generator_symbols) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (!std::islower(static_cast<unsigned char>(c)))
      throw InputError(std::string("generator symbol '") + c + "' must be a lowercase letter");
    if (generators_.find(c) != std::string::npos)
      throw InputError(std::string("duplicate generator '") + c + "'");
    generators_.push_back(c);
  }
  if (generators_.empty()) throw InputError("alphabet needs at least one generator");
  if (generators_.size() > 26) throw InputError("at most 26 generators are supported");
}

char Alphabet::symbol(Letter l) const {
  const char g = generators_.at(generator_of(l));
  return is_positive(l) ? g : static_cast<char>(std::toupper(static_cast<unsigned char>(g)));
}

bool Alphabet::contains(char c) const {
  const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return std::isalpha(static_cast<unsigned char>(c)) && generators_.find(lower) != std::string::npos;
}

Letter Alphabet::letter(char c) const {
  if (!contains(c)) throw InputError(std::string("unknown symbol '") + c + "'");
  const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto g = static_cast<Letter>(generators_.find(lower));
  return std::islower(static_cast<unsigned char>(c)) ? g : static_cast<Letter>(g + rank());
}

Word Alphabet::parse(std::string_view text) const {
  Word w;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '1') continue;
    w.letters.push_back(letter(c));
  }
  return w;
}

std::string Alphabet::format(const Word& w) const {
  std::string s;
  s.reserve(w.size());
  for (Letter l : w.letters) s.push_back(symbol(l));
  return s;
}

Word free_reduce(const Word& w, const Alphabet& alphabet) {
  Word out;
  out.letters.reserve(w.size());
  for (Letter l : w.letters) {
    if (l >= alphabet.size()) throw InputError("letter index outside alphabet");
    if (!out.empty() && out.back() == alphabet.inverse(l)) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

Word inverse(const Word& w, const Alphabet& alphabet) {
  Word out;
  out.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.letters.push_back(alphabet.inverse(*it));
  return out;
}

Word multiply(const Word& u, const Word& v, const Alphabet& alphabet) {
  Word out = u;
  for (Letter l : v.letters) {
    if (!out.empty() && out.back() == alphabet.inverse(l)) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

Word cyclic_reduce(const Word& w, const Alphabet& alphabet) {
  Word r = free_reduce(w, alphabet);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && r[lo] == alphabet.inverse(r[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word({r.letters.begin() + static_cast<std::ptrdiff_t>(lo),
               r.letters.begin() + static_cast<std::ptrdiff_t>(hi)});
}

bool is_freely_reduced(const Word& w, const Alphabet& alphabet) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == alphabet.inverse(w[i - 1])) return false;
  return true;
}

}  // namespace gglab
