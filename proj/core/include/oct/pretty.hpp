#pragma once

#include <string>

#include "oct/ast.hpp"

namespace oct {

// Canonical source rendering with location labels as `(* l<k> *)` comments.
// parse(pretty(p)) is structurally equal to p.
std::string pretty(const Program& p);

std::string pretty(const Expr& e, const std::vector<std::string>& vars);
std::string pretty(const Guard& g, const std::vector<std::string>& vars);

}  // namespace oct
