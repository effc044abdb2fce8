// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FSOL_PRETTY_HPP
#define FSOL_PRETTY_HPP

#include <string>

#include "fsol/ast.hpp"

namespace fsol {

// Canonical layout: 4-space indent, one blank line between members and
// between contracts, minimal parentheses. Reparsing the output yields an
// AST equal to the input modulo spans.
std::string prettyPrint(const Program& p);

std::string printExpr(const Expr& e);
std::string printStmt(const Stmt& s, int indent = 0);

} // namespace fsol

#endif
