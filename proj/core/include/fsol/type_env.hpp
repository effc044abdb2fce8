// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FSOL_TYPE_ENV_HPP
#define FSOL_TYPE_ENV_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fsol/ast.hpp"

namespace fsol {

// Per-body checking context shared by both checkers. callerBound is the
// refined system's caller constraint; the baseline checker leaves it Top.
struct TypeEnv {
    std::string contractName;
    std::string callerBound = kTopName;
    std::optional<TypeRepr> returnType;
    std::vector<std::map<std::string, TypeRepr>> scopes;

    void pushScope() { scopes.emplace_back(); }
    void popScope() { scopes.pop_back(); }

    bool declareLocal(const std::string& name, TypeRepr type) {
        return scopes.back().emplace(name, std::move(type)).second;
    }

    const TypeRepr* lookupLocal(const std::string& name) const {
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) return &found->second;
        }
        return nullptr;
    }

    TypeRepr* lookupLocalMutable(const std::string& name) {
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) return &found->second;
        }
        return nullptr;
    }
};

struct ExprTyping {
    enum class Kind { Value, Unit, Error };
    Kind kind = Kind::Error;
    TypeRepr type;

    static ExprTyping value(TypeRepr t) { return {Kind::Value, std::move(t)}; }
    static ExprTyping unit() { return {Kind::Unit, {}}; }
    static ExprTyping error() { return {Kind::Error, {}}; }

    bool isValue() const { return kind == Kind::Value; }
    bool isError() const { return kind == Kind::Error; }
};

} // namespace fsol

#endif
