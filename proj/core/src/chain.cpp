// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "fsol/chain.hpp"

#include <sstream>

namespace fsol {

bool operator==(const Account& a, const Account& b) {
    return a.kind == b.kind && a.balance == b.balance && a.contractName == b.contractName &&
           a.fields == b.fields;
}

U256 ChainState::totalWei() const {
    U256 sum = 0;
    for (const auto& [addr, account] : accounts) sum += account.balance;
    return sum;
}

bool operator==(const ChainState& a, const ChainState& b) {
    return a.accounts == b.accounts;
}

std::string renderBalances(const ChainState& s) {
    std::ostringstream out;
    for (const auto& [addr, account] : s.accounts) {
        out << "  " << addr.toHex() << "  ";
        if (account.isContract())
            out << account.contractName;
        else
            out << "(external)";
        out << "  balance " << formatU256(account.balance) << "\n";
    }
    return out.str();
}

} // namespace fsol
