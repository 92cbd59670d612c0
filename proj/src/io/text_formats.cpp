#include "gglab/io/text_formats.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "gglab/errors.hpp"

namespace gglab {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

/// Calls f(line_number, content) for each non-empty line with comments removed.
template <class F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t number = 0;
  while (!text.empty()) {
    const auto end = text.find('\n');
    std::string_view line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    ++number;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) f(number, line);
  }
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw InputError(source + ":" + std::to_string(line) + ": " + what);
}

Word parse_word(const Alphabet& alphabet, std::string_view text, const std::string& source, std::size_t line) {
  try {
    return alphabet.parse(text);
  } catch (const InputError& e) {
    fail(source, line, e.what());
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Presentation parse_presentation(std::string_view text, const std::string& source) {
  std::optional<Alphabet> alphabet;
  std::vector<std::pair<std::size_t, std::string>> relators, electrify;
  std::optional<Strategy> strategy;
  for_each_line(text, [&](std::size_t line, std::string_view content) {
    const auto colon = content.find(':');
    if (colon == std::string_view::npos) fail(source, line, "expected 'field: value'");
    const std::string field(trim(content.substr(0, colon)));
    const std::string_view value = trim(content.substr(colon + 1));
    if (field == "gens") {
      if (alphabet) fail(source, line, "duplicate 'gens' declaration");
      std::string symbols;
      for (const auto& t : tokens(value)) {
        if (t.size() != 1) fail(source, line, "generator '" + t + "' must be a single lowercase letter");
        symbols += t;
      }
      try {
        alphabet.emplace(symbols);
      } catch (const InputError& e) {
        fail(source, line, e.what());
      }
    } else if (field == "rel") {
      for (const auto& t : tokens(value)) relators.emplace_back(line, t);
      if (tokens(value).empty()) fail(source, line, "empty relator");
    } else if (field == "electrify") {
      for (const auto& t : tokens(value)) electrify.emplace_back(line, t);
    } else if (field == "strategy") {
      const std::string s(value);
      if (s == "free") strategy = Strategy::FreeGroup;
      else if (s == "dehn") strategy = Strategy::DehnSmallCancellation;
      else if (s == "partially-commutative") strategy = Strategy::PartiallyCommutative;
      else fail(source, line, "unknown strategy '" + s + "'");
    } else {
      fail(source, line, "unknown field '" + field + "'");
    }
  });
  if (!alphabet) throw InputError(source + ": missing 'gens' declaration");
  std::vector<Word> rels;
  for (const auto& [line, t] : relators) {
    Word w = parse_word(*alphabet, t, source, line);
    if (w.empty()) fail(source, line, "relator is the empty word");
    rels.push_back(std::move(w));
  }
  Presentation p;
  try {
    p = strategy ? make_presentation(*alphabet, rels, *strategy) : make_presentation(*alphabet, rels);
  } catch (const ConfigurationError& e) {
    throw ConfigurationError(source + ": " + e.what());
  }
  for (const auto& [line, t] : electrify) p.electrify.push_back(parse_word(*alphabet, t, source, line));
  return p;
}

Presentation load_presentation(const std::string& path) { return parse_presentation(read_text_file(path), path); }

std::vector<Word> parse_subgroup(std::string_view text, const Alphabet& alphabet, const std::string& source) {
  std::vector<Word> gens;
  for_each_line(text, [&](std::size_t line, std::string_view content) {
    if (tokens(content).size() != 1) fail(source, line, "expected one word per line");
    gens.push_back(free_reduce(parse_word(alphabet, content, source, line), alphabet));
  });
  return gens;
}

std::vector<Word> load_subgroup(const std::string& path, const Alphabet& alphabet) {
  return parse_subgroup(read_text_file(path), alphabet, path);
}

}  // namespace gglab
