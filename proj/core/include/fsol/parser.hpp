// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FSOL_PARSER_HPP
#define FSOL_PARSER_HPP

#include <string>
#include <string_view>

#include "fsol/ast.hpp"
#include "fsol/diagnostics.hpp"

namespace fsol {

// The program holds whatever parsed; it is meaningful only when
// diagnostics carry no errors. The parser recovers at the next ';' or '}'
// so several syntax errors can be reported in one pass.
struct ParseResult {
    Program program;
    std::vector<Diagnostic> diagnostics;
};

ParseResult parse(std::string_view source, const std::string& fileName);

} // namespace fsol

#endif
