// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FSOL_CHAIN_HPP
#define FSOL_CHAIN_HPP

#include <map>
#include <string>

#include "fsol/numeric.hpp"
#include "fsol/value.hpp"

namespace fsol {

struct Account {
    enum class Kind { External, Contract };
    Kind kind = Kind::External;
    U256 balance = 0;
    std::string contractName;            // Contract only
    std::map<std::string, Value> fields; // Contract only

    static Account external(U256 balance) { return {Kind::External, std::move(balance), {}, {}}; }
    bool isContract() const { return kind == Kind::Contract; }
};

bool operator==(const Account& a, const Account& b);
inline bool operator!=(const Account& a, const Account& b) { return !(a == b); }

struct ChainState {
    std::map<Address, Account> accounts;

    U256 balanceOf(const Address& a) const {
        auto it = accounts.find(a);
        return it == accounts.end() ? U256(0) : it->second.balance;
    }
    U256 totalWei() const;
};

bool operator==(const ChainState& a, const ChainState& b);
inline bool operator!=(const ChainState& a, const ChainState& b) { return !(a == b); }

// One line per account, sorted by address; used in reports.
std::string renderBalances(const ChainState& s);

} // namespace fsol

#endif
