#pragma once

// Readers/writers for the BMSC body, shared by the .bmsc and .hmsc formats.

#include <string>

#include "chanres/msc.hpp"
#include "lexer.hpp"

namespace chanres::detail {

/// Parses `{ msg ... ; rows ... }` including the braces.
PrefixMsc parse_bmsc_body(Lexer& lex);
/// Prints `{ ... }` with inner lines indented by `indent + 2` spaces.
std::string print_bmsc_body(const PrefixMsc& m, std::size_t indent);

}  // namespace chanres::detail
