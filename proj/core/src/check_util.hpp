// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FSOL_SRC_CHECK_UTIL_HPP
#define FSOL_SRC_CHECK_UTIL_HPP

#include <vector>

#include "fsol/ast.hpp"

namespace fsol {

inline bool stmtDefinitelyReturns(const Stmt& s);

inline bool blockDefinitelyReturns(const std::vector<Stmt>& body) {
    for (const auto& s : body)
        if (stmtDefinitelyReturns(s)) return true;
    return false;
}

inline bool stmtDefinitelyReturns(const Stmt& s) {
    if (s.is<ReturnStmt>()) return true;
    if (s.is<IfStmt>()) {
        const auto& node = s.as<IfStmt>();
        return node.elseBody && blockDefinitelyReturns(node.thenBody) &&
               blockDefinitelyReturns(*node.elseBody);
    }
    return false;
}

// Spellings only the refined checker understands.
inline bool usesRefinedSyntax(const TypeRepr& t) {
    if (t.kind == TypeKind::RefAddress) return true;
    return t.kind == TypeKind::Contract &&
           (t.contractName == kTopName || t.contractName == kTopFbName);
}

// == and != compare same-typed values, any two addresses, or any two
// contract references; bounds and flavors never block a comparison.
inline bool comparableForEquality(const TypeRepr& a, const TypeRepr& b) {
    if (a == b) return true;
    if (a.isAddressLike() && b.isAddressLike()) return true;
    return a.kind == TypeKind::Contract && b.kind == TypeKind::Contract;
}

} // namespace fsol

#endif
