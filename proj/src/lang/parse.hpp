#pragma once
#include <string_view>

#include "lang/ast.hpp"
#include "support/lex.hpp"

namespace fc {

// Parses a `.tdl` program. Top level may contain `record` field tables and
// function definitions in figure style (`name(args) { body }`), which fold into
// let-bindings around the main command. Static restrictions (par mods,
// let free-variable containment, unique function names) are enforced here.
CmdP parse_program(std::string_view text);

// Expression sub-parser, shared with the proof-script reader.
ExpP parse_exp(Lexer& lx);

}  // namespace fc
