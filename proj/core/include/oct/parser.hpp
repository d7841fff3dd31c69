#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "oct/ast.hpp"

namespace oct {

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& what, int line, int column)
        : std::runtime_error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
          line(line),
          column(column) {}
};

// Parses a source program and assigns location labels. Grammar sketch:
//
//   program  := "var" ident ("," ident)* ";" block
//   block    := stmt (";" stmt)*
//   stmt     := ident ":=" expr
//             | "if" guard "then" block ["else" block] "fi"
//             | "while" guard "do" block "done"
//             | "assert" guard
//   guard    := gand ("or" gand)* ; gand := gnot ("and" gnot)*
//   gnot     := "not" gnot | "(" guard ")" | "?" | expr cmp expr
//   cmp      := "<=" | "<" | ">=" | ">" | "=" | "!="
//   expr     := term (("+"|"-") term)* ; term := factor ("*" factor)*
//   factor   := number | ident | "rand" | "-" factor | "(" expr ")"
//   number   := digits ["/" digits]
//
// "#" starts a line comment, "(* ... *)" is a block comment (the pretty
// printer uses it for location labels). Throws ParseError with a position
// on malformed input or use of an undeclared variable.
Program parse(std::string_view source);

}  // namespace oct
