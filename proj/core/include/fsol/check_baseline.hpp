// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FSOL_CHECK_BASELINE_HPP
#define FSOL_CHECK_BASELINE_HPP

#include <vector>

#include "fsol/ast.hpp"
#include "fsol/contract_table.hpp"
#include "fsol/diagnostics.hpp"
#include "fsol/type_env.hpp"

namespace fsol {

// The Solidity 0.5 rules, including the unsound ones: msg.sender and
// address literals are address payable, contract casts are unchecked, the
// uint160 detour mints address payable from anything address-shaped, and
// external signatures erase address payable to address at call sites.
std::vector<Diagnostic> checkBaseline(const Program& p, const ContractTable& t);

ExprTyping baselineTypeOf(const ContractTable& t, TypeEnv& env, const Expr& e,
                          std::vector<Diagnostic>& sink);

} // namespace fsol

#endif
