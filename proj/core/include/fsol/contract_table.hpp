// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FSOL_CONTRACT_TABLE_HPP
#define FSOL_CONTRACT_TABLE_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fsol/ast.hpp"
#include "fsol/diagnostics.hpp"

namespace fsol {

struct ResolvedFunction {
    const FunctionDecl* decl = nullptr;
    std::string owner; // declaring contract (may be an ancestor)
};

struct ResolvedContract {
    std::string name;
    // Nearest parent first; ends with Top for every contract except Top itself.
    std::vector<std::string> ancestry;
    // Declaration order, ancestors before descendants.
    std::vector<const StateVarDecl*> fields;
    std::map<std::string, const StateVarDecl*> fieldsByName;
    std::map<std::string, ResolvedFunction> functions; // own and inherited
    const ConstructorDecl* constructorDecl = nullptr;  // own only, never inherited
    const FallbackDecl* fallbackDecl = nullptr;        // nearest declared on the chain
    bool hasFallback = false;
    bool synthetic = false; // Top / Top_fb
    const ContractDecl* decl = nullptr;
};

// Borrows the Program it was resolved from; keep the Program alive.
class ContractTable {
public:
    ContractTable() = default;
    ContractTable(ContractTable&&) = default;
    ContractTable& operator=(ContractTable&&) = default;
    ContractTable(const ContractTable&) = delete;
    ContractTable& operator=(const ContractTable&) = delete;

    const ResolvedContract* find(const std::string& name) const;
    const ResolvedContract& get(const std::string& name) const;
    bool contains(const std::string& name) const;

    // Contract(c) <= Contract(d): reflexive, or d on c's parent chain, or
    // d = Top, or d = Top_fb and c has a fallback.
    bool contractLe(const std::string& c, const std::string& d) const;
    bool hasFallback(const std::string& name) const;

    // Top, Top_fb, then user contracts in program order.
    const std::vector<std::string>& names() const { return order_; }
    std::vector<std::string> userNames() const;

private:
    friend struct TableBuilder;
    std::map<std::string, ResolvedContract> byName_;
    std::vector<std::string> order_;
    std::vector<std::unique_ptr<ContractDecl>> synthesized_;
};

struct ResolveResult {
    std::optional<ContractTable> table; // present iff no errors
    std::vector<Diagnostic> diagnostics;
};

ResolveResult resolveHierarchy(const Program& p);

// The full subtype relation over TypeRepr: equality; the contract order
// above; address<C> covariant in C; address payable <= address. Nothing
// else relates (bare is not payable, uint160 is not an address).
bool isSubtype(const ContractTable& t, const TypeRepr& a, const TypeRepr& b);

} // namespace fsol

#endif
