// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FSOL_CHECK_REFINED_HPP
#define FSOL_CHECK_REFINED_HPP

#include <optional>
#include <string>
#include <vector>

#include "fsol/ast.hpp"
#include "fsol/contract_table.hpp"
#include "fsol/diagnostics.hpp"
#include "fsol/type_env.hpp"

namespace fsol {

// Gets told about every contract cast the refined checker accepts, so the
// upcast-only property can be asserted from outside.
struct CastObserver {
    virtual ~CastObserver() = default;
    virtual void onContractCast(const std::string& operandContract,
                                const std::string& targetContract, const SourceSpan& span) = 0;
};

// Legacy address flavors are read as bounded addresses: plain address
// promises nothing (Top), address payable promises a fallback (Top_fb).
TypeRepr elaborateLegacy(const TypeRepr& type);

// Inverse direction: rewrite bounded addresses back to the legacy flavor
// they guarantee, and drop caller annotations.
Program eraseToLegacy(const Program& p, const ContractTable& t);

std::optional<Diagnostic> checkCallConstraint(const ContractTable& t,
                                              const std::string& callerContract,
                                              const FunctionDecl& callee,
                                              const SourceSpan& site);

ExprTyping refinedTypeOf(const ContractTable& t, TypeEnv& env, const Expr& e,
                         std::vector<Diagnostic>& sink, CastObserver* observer = nullptr);

std::vector<Diagnostic> checkRefined(const Program& p, const ContractTable& t,
                                     CastObserver* observer = nullptr);

} // namespace fsol

#endif
