// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FSOL_VALUE_HPP
#define FSOL_VALUE_HPP

#include <string>
#include <variant>

#include "fsol/ast.hpp"
#include "fsol/contract_table.hpp"
#include "fsol/numeric.hpp"

namespace fsol {

// What an address value claims about the account it names. Claims are
// promises, not facts: the baseline system lets false ones through.
struct AddrTag {
    enum class Kind { Bare, Payable, Ref };
    Kind kind = Kind::Bare;
    std::string contractName; // Ref only

    static AddrTag bare() { return {}; }
    static AddrTag payable() { return {Kind::Payable, {}}; }
    static AddrTag ref(std::string name) { return {Kind::Ref, std::move(name)}; }

    // The claim read as a contract bound.
    const std::string& boundName() const;

    bool operator==(const AddrTag& o) const {
        return kind == o.kind && contractName == o.contractName;
    }
    bool operator!=(const AddrTag& o) const { return !(*this == o); }
};

struct UIntValue {
    U256 value;
};

struct UInt160Value {
    Address bits;
};

struct BoolValue {
    bool value = false;
};

struct AddrValue {
    Address address;
    AddrTag tag;
};

struct ContractRefValue {
    Address address;
    std::string contractName;
};

struct UnitValue {};

struct Value {
    std::variant<UIntValue, UInt160Value, BoolValue, AddrValue, ContractRefValue, UnitValue>
        node;

    Value() : node(UnitValue{}) {}
    template <typename T>
    Value(T n) : node(std::move(n)) {}

    template <typename T>
    bool is() const {
        return std::holds_alternative<T>(node);
    }
    template <typename T>
    const T& as() const {
        return std::get<T>(node);
    }
};

bool operator==(const Value& a, const Value& b);
inline bool operator!=(const Value& a, const Value& b) { return !(a == b); }

// Zero/false/zero-address, tagged with the declared shape.
Value defaultValueFor(const TypeRepr& type);

// Shape check used when binding locals and fields.
bool valueKindMatches(const TypeRepr& type, const Value& v);

// Full check used at call, deploy, and transaction argument binding: the
// shape must match and the value's claim must honor the declared bound.
bool valueCompatible(const ContractTable& t, const TypeRepr& type, const Value& v);

// "42", "true", "0xabc…", "Test@0xabc…", "unit".
std::string renderValue(const Value& v);

// Rendering with the claim spelled out, for mismatch messages.
std::string describeValue(const Value& v);

} // namespace fsol

#endif
