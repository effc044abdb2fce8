// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "fsol/value.hpp"

namespace fsol {

namespace {
const std::string kTopNameStr = kTopName;
const std::string kTopFbNameStr = kTopFbName;
} // namespace

const std::string& AddrTag::boundName() const {
    switch (kind) {
    case Kind::Bare:
        return kTopNameStr;
    case Kind::Payable:
        return kTopFbNameStr;
    case Kind::Ref:
        return contractName;
    }
    return kTopNameStr;
}

bool operator==(const Value& a, const Value& b) {
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            if (!b.is<T>()) return false;
            const T& y = b.as<T>();
            if constexpr (std::is_same_v<T, UIntValue>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<T, UInt160Value>) {
                return x.bits == y.bits;
            } else if constexpr (std::is_same_v<T, BoolValue>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<T, AddrValue>) {
                return x.address == y.address && x.tag == y.tag;
            } else if constexpr (std::is_same_v<T, ContractRefValue>) {
                return x.address == y.address && x.contractName == y.contractName;
            } else {
                return true;
            }
        },
        a.node);
}

Value defaultValueFor(const TypeRepr& type) {
    switch (type.kind) {
    case TypeKind::UInt:
        return UIntValue{0};
    case TypeKind::UInt160:
        return UInt160Value{Address::zero()};
    case TypeKind::Bool:
        return BoolValue{false};
    case TypeKind::BareAddress:
        return AddrValue{Address::zero(), AddrTag::bare()};
    case TypeKind::PayableAddress:
        return AddrValue{Address::zero(), AddrTag::payable()};
    case TypeKind::RefAddress:
        return AddrValue{Address::zero(), AddrTag::ref(type.contractName)};
    case TypeKind::Contract:
        return ContractRefValue{Address::zero(), type.contractName};
    }
    return UnitValue{};
}

bool valueKindMatches(const TypeRepr& type, const Value& v) {
    switch (type.kind) {
    case TypeKind::UInt:
        return v.is<UIntValue>();
    case TypeKind::UInt160:
        return v.is<UInt160Value>();
    case TypeKind::Bool:
        return v.is<BoolValue>();
    case TypeKind::BareAddress:
    case TypeKind::PayableAddress:
    case TypeKind::RefAddress:
        return v.is<AddrValue>();
    case TypeKind::Contract:
        return v.is<ContractRefValue>();
    }
    return false;
}

bool valueCompatible(const ContractTable& t, const TypeRepr& type, const Value& v) {
    if (!valueKindMatches(type, v)) return false;
    switch (type.kind) {
    case TypeKind::BareAddress:
        return true;
    case TypeKind::PayableAddress:
        return t.contractLe(v.as<AddrValue>().tag.boundName(), kTopFbName);
    case TypeKind::RefAddress:
        return t.contractLe(v.as<AddrValue>().tag.boundName(), type.contractName);
    case TypeKind::Contract:
        return t.contractLe(v.as<ContractRefValue>().contractName, type.contractName);
    default:
        return true;
    }
}

std::string renderValue(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, UIntValue>) {
                return formatU256(x.value);
            } else if constexpr (std::is_same_v<T, UInt160Value>) {
                return formatU256(x.bits.toU256());
            } else if constexpr (std::is_same_v<T, BoolValue>) {
                return x.value ? "true" : "false";
            } else if constexpr (std::is_same_v<T, AddrValue>) {
                return x.address.toHex();
            } else if constexpr (std::is_same_v<T, ContractRefValue>) {
                return x.contractName + "@" + x.address.toHex();
            } else {
                return "unit";
            }
        },
        v.node);
}

std::string describeValue(const Value& v) {
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, UIntValue>) {
                return "uint " + formatU256(x.value);
            } else if constexpr (std::is_same_v<T, UInt160Value>) {
                return "uint160 " + formatU256(x.bits.toU256());
            } else if constexpr (std::is_same_v<T, BoolValue>) {
                return std::string("bool ") + (x.value ? "true" : "false");
            } else if constexpr (std::is_same_v<T, AddrValue>) {
                return "address " + x.address.toHex() + " claiming '" + x.tag.boundName() + "'";
            } else if constexpr (std::is_same_v<T, ContractRefValue>) {
                return "contract reference " + x.address.toHex() + " claiming '" +
                       x.contractName + "'";
            } else {
                return "unit";
            }
        },
        v.node);
}

} // namespace fsol
