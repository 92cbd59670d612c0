#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gglab/group/presentation.hpp"

namespace gglab {

/// Reads a whole file; throws InputError if it cannot be opened.
std::string read_text_file(const std::string& path);

/// Presentation text: `gens: a b`, then any number of `rel: <word>` and an
/// optional `electrify: <word> ...` and `strategy: free|dehn|partially-commutative`.
/// `#` starts a comment. Errors name the source and line.
Presentation parse_presentation(std::string_view text, const std::string& source = "<input>");
Presentation load_presentation(const std::string& path);

/// One generator word per line; `#` comments; blank lines ignored.
std::vector<Word> parse_subgroup(std::string_view text, const Alphabet& alphabet,
                                 const std::string& source = "<input>");
std::vector<Word> load_subgroup(const std::string& path, const Alphabet& alphabet);

}  // namespace gglab
