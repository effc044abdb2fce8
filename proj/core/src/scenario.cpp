// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "fsol/scenario.hpp"

#include <set>
#include <sstream>

#include "json.hpp"

namespace fsol {

using nlohmann::json;

ScenarioValue ScenarioValue::ofUInt(U256 v) {
    ScenarioValue s;
    s.kind = Kind::UInt;
    s.uintValue = std::move(v);
    return s;
}
ScenarioValue ScenarioValue::ofBool(bool v) {
    ScenarioValue s;
    s.kind = Kind::Bool;
    s.boolValue = v;
    return s;
}
ScenarioValue ScenarioValue::ofAddr(Address v) {
    ScenarioValue s;
    s.kind = Kind::Addr;
    s.addrValue = v;
    return s;
}

namespace {

class ScenarioParser {
public:
    ScenarioParser(const std::string& fileName, const ContractTable& t)
        : table_(t) {
        span_.file = fileName;
    }

    ScenarioLoadResult parse(const std::string& text) {
        json root = json::parse(text, nullptr, false);
        if (root.is_discarded()) {
            error("SCN-PARSE", "malformed JSON");
            return {std::nullopt, std::move(diags_)};
        }
        if (!root.is_object()) {
            error("SCN-BAD-FIELD", "top level must be a JSON object");
            return {std::nullopt, std::move(diags_)};
        }
        checkKeys(root, {"deployments", "eoas", "transactions"}, "top level");

        Scenario sc;
        if (const json* eoas = optArray(root, "eoas", "top level")) {
            size_t i = 0;
            for (const auto& e : *eoas) parseEoa(e, i++, sc);
        }
        if (const json* deps = optArray(root, "deployments", "top level")) {
            size_t i = 0;
            for (const auto& d : *deps) parseDeployment(d, i++, sc);
        }
        if (const json* txs = optArray(root, "transactions", "top level")) {
            size_t i = 0;
            for (const auto& t : *txs) parseTransaction(t, i++, sc);
        }
        validateCrossReferences(sc);

        if (hasErrors(diags_)) return {std::nullopt, std::move(diags_)};
        return {std::move(sc), std::move(diags_)};
    }

private:
    const ContractTable& table_;
    SourceSpan span_;
    std::vector<Diagnostic> diags_;

    void error(std::string code, std::string message) {
        diags_.push_back(makeError(std::move(code), std::move(message), span_));
    }

    void checkKeys(const json& obj, std::initializer_list<const char*> allowed,
                   const std::string& where) {
        for (const auto& item : obj.items()) {
            bool ok = false;
            for (const char* k : allowed)
                if (item.key() == k) ok = true;
            if (!ok) error("SCN-BAD-FIELD", "unknown field '" + item.key() + "' in " + where);
        }
    }

    const json* optArray(const json& obj, const char* key, const std::string& where) {
        auto it = obj.find(key);
        if (it == obj.end()) return nullptr;
        if (!it->is_array()) {
            error("SCN-BAD-FIELD", std::string("'") + key + "' in " + where + " must be an array");
            return nullptr;
        }
        return &*it;
    }

    std::optional<Address> parseAddress(const json& v, const std::string& where) {
        if (!v.is_string()) {
            error("SCN-BAD-ADDRESS", "address in " + where + " must be a string");
            return std::nullopt;
        }
        auto addr = Address::fromHex(v.get<std::string>());
        if (!addr) {
            error("SCN-BAD-ADDRESS", "malformed address '" + v.get<std::string>() + "' in " +
                                         where + " (need 0x plus 40 hex digits)");
        }
        return addr;
    }

    U256 parseAmount(const json& obj, const char* key, const std::string& where) {
        auto it = obj.find(key);
        if (it == obj.end()) return 0;
        if (!it->is_string()) {
            error("SCN-BAD-AMOUNT",
                  std::string("'") + key + "' in " + where + " must be a decimal string");
            return 0;
        }
        auto v = parseU256Decimal(it->get<std::string>());
        if (!v) {
            error("SCN-BAD-AMOUNT", "bad amount '" + it->get<std::string>() + "' in " + where);
            return 0;
        }
        return *v;
    }

    std::vector<ScenarioValue> parseArgs(const json& obj, const std::string& where) {
        std::vector<ScenarioValue> out;
        const json* args = optArray(obj, "args", where);
        if (!args) return out;
        size_t i = 0;
        for (const auto& a : *args) {
            std::string argWhere = where + " argument " + std::to_string(i + 1);
            ++i;
            if (!a.is_object() || a.size() != 1) {
                error("SCN-BAD-FIELD", argWhere + " must be exactly one of {\"uint\": "
                                       "\"…\"}, {\"bool\": …}, {\"address\": \"0x…\"}");
                continue;
            }
            const auto& item = a.items().begin();
            const std::string& key = item.key();
            const json& val = item.value();
            if (key == "uint") {
                if (!val.is_string()) {
                    error("SCN-BAD-AMOUNT", "uint in " + argWhere + " must be a decimal string");
                    continue;
                }
                auto v = parseU256Decimal(val.get<std::string>());
                if (!v) {
                    error("SCN-BAD-AMOUNT",
                          "bad uint '" + val.get<std::string>() + "' in " + argWhere);
                    continue;
                }
                out.push_back(ScenarioValue::ofUInt(*v));
            } else if (key == "bool") {
                if (!val.is_boolean()) {
                    error("SCN-BAD-FIELD", "bool in " + argWhere + " must be true or false");
                    continue;
                }
                out.push_back(ScenarioValue::ofBool(val.get<bool>()));
            } else if (key == "address") {
                if (auto addr = parseAddress(val, argWhere))
                    out.push_back(ScenarioValue::ofAddr(*addr));
            } else {
                error("SCN-BAD-FIELD", "unknown argument kind '" + key + "' in " + argWhere);
            }
        }
        return out;
    }

    void parseEoa(const json& e, size_t index, Scenario& sc) {
        std::string where = "eoas[" + std::to_string(index) + "]";
        if (!e.is_object()) {
            error("SCN-BAD-FIELD", where + " must be an object");
            return;
        }
        checkKeys(e, {"address", "balance"}, where);
        auto it = e.find("address");
        if (it == e.end()) {
            error("SCN-BAD-FIELD", where + " is missing 'address'");
            return;
        }
        auto addr = parseAddress(*it, where);
        if (!addr) return;
        sc.eoas.push_back(ScenarioEoa{*addr, parseAmount(e, "balance", where)});
    }

    void parseDeployment(const json& d, size_t index, Scenario& sc) {
        std::string where = "deployments[" + std::to_string(index) + "]";
        if (!d.is_object()) {
            error("SCN-BAD-FIELD", where + " must be an object");
            return;
        }
        checkKeys(d, {"contract", "address", "args", "balance"}, where);
        auto contractIt = d.find("contract");
        auto addressIt = d.find("address");
        if (contractIt == d.end() || !contractIt->is_string()) {
            error("SCN-BAD-FIELD", where + " needs a string 'contract'");
            return;
        }
        if (addressIt == d.end()) {
            error("SCN-BAD-FIELD", where + " is missing 'address'");
            return;
        }
        std::string name = contractIt->get<std::string>();
        const ResolvedContract* rc = table_.find(name);
        if (!rc || rc->synthetic) {
            error("SCN-UNKNOWN-CONTRACT", where + " names unknown contract '" + name + "'");
        }
        auto addr = parseAddress(*addressIt, where);
        if (!addr) return;
        sc.deployments.push_back(ScenarioDeployment{std::move(name), *addr,
                                                    parseArgs(d, where),
                                                    parseAmount(d, "balance", where)});
    }

    void parseTransaction(const json& t, size_t index, Scenario& sc) {
        std::string where = "transactions[" + std::to_string(index) + "]";
        if (!t.is_object()) {
            error("SCN-BAD-FIELD", where + " must be an object");
            return;
        }
        checkKeys(t, {"from", "to", "function", "args", "value", "expect"}, where);
        auto fromIt = t.find("from");
        auto toIt = t.find("to");
        auto fnIt = t.find("function");
        if (fromIt == t.end() || toIt == t.end() || fnIt == t.end() || !fnIt->is_string()) {
            error("SCN-BAD-FIELD", where + " needs 'from', 'to', and a string 'function'");
            return;
        }
        auto from = parseAddress(*fromIt, where);
        auto to = parseAddress(*toIt, where);
        if (!from || !to) return;
        ScenarioTx tx;
        tx.from = *from;
        tx.to = *to;
        tx.function = fnIt->get<std::string>();
        tx.args = parseArgs(t, where);
        tx.value = parseAmount(t, "value", where);
        auto expectIt = t.find("expect");
        if (expectIt != t.end()) tx.expect = parseExpect(*expectIt, where);
        sc.transactions.push_back(std::move(tx));
    }

    std::optional<Expectation> parseExpect(const json& e, const std::string& where) {
        std::string expWhere = where + " expect";
        if (!e.is_object()) {
            error("SCN-BAD-FIELD", expWhere + " must be an object");
            return std::nullopt;
        }
        checkKeys(e, {"outcome", "reason"}, expWhere);
        auto outcomeIt = e.find("outcome");
        if (outcomeIt == e.end() || !outcomeIt->is_string()) {
            error("SCN-BAD-FIELD", expWhere + " needs a string 'outcome'");
            return std::nullopt;
        }
        std::string outcome = outcomeIt->get<std::string>();
        Expectation exp;
        if (outcome == "success") {
            exp.outcome = Expectation::Outcome::Success;
        } else if (outcome == "revert") {
            exp.outcome = Expectation::Outcome::Revert;
        } else {
            error("SCN-BAD-FIELD",
                  expWhere + " outcome must be \"success\" or \"revert\", got \"" + outcome +
                      "\"");
            return std::nullopt;
        }
        auto reasonIt = e.find("reason");
        if (reasonIt != e.end()) {
            if (exp.outcome == Expectation::Outcome::Success) {
                error("SCN-BAD-FIELD", expWhere + " gives a reason for a success outcome");
                return std::nullopt;
            }
            if (!reasonIt->is_string()) {
                error("SCN-BAD-FIELD", expWhere + " reason must be a string");
                return std::nullopt;
            }
            auto kind = RevertReason::kindFromName(reasonIt->get<std::string>());
            if (!kind) {
                error("SCN-BAD-FIELD", expWhere + " names unknown revert reason '" +
                                           reasonIt->get<std::string>() + "'");
                return std::nullopt;
            }
            exp.reason = *kind;
        }
        return exp;
    }

    void validateCrossReferences(const Scenario& sc) {
        std::set<Address> deployed;
        for (const auto& d : sc.deployments) {
            if (!deployed.insert(d.address).second) {
                error("SCN-DUP-ADDRESS",
                      "duplicate deployment address " + d.address.toHex());
            }
        }
        std::set<Address> eoas;
        for (const auto& e : sc.eoas) {
            if (!eoas.insert(e.address).second) {
                error("SCN-DUP-ADDRESS", "duplicate external account " + e.address.toHex());
            }
        }
        size_t i = 0;
        for (const auto& tx : sc.transactions) {
            if (eoas.find(tx.from) == eoas.end()) {
                error("SCN-TX-FROM", "transactions[" + std::to_string(i) + "] is sent from " +
                                         tx.from.toHex() +
                                         ", which is not a declared external account");
            }
            ++i;
        }
    }
};

} // namespace

ScenarioLoadResult loadScenario(const std::string& jsonText, const std::string& fileName,
                                const ContractTable& t) {
    return ScenarioParser(fileName, t).parse(jsonText);
}

std::string scenarioToJson(const Scenario& sc) {
    auto argsToJson = [](const std::vector<ScenarioValue>& args) {
        json out = json::array();
        for (const auto& a : args) {
            switch (a.kind) {
            case ScenarioValue::Kind::UInt:
                out.push_back(json{{"uint", formatU256(a.uintValue)}});
                break;
            case ScenarioValue::Kind::Bool:
                out.push_back(json{{"bool", a.boolValue}});
                break;
            case ScenarioValue::Kind::Addr:
                out.push_back(json{{"address", a.addrValue.toHex()}});
                break;
            }
        }
        return out;
    };

    json root;
    root["deployments"] = json::array();
    for (const auto& d : sc.deployments) {
        root["deployments"].push_back(json{{"contract", d.contract},
                                           {"address", d.address.toHex()},
                                           {"args", argsToJson(d.args)},
                                           {"balance", formatU256(d.balance)}});
    }
    root["eoas"] = json::array();
    for (const auto& e : sc.eoas) {
        root["eoas"].push_back(
            json{{"address", e.address.toHex()}, {"balance", formatU256(e.balance)}});
    }
    root["transactions"] = json::array();
    for (const auto& tx : sc.transactions) {
        json t{{"from", tx.from.toHex()},
               {"to", tx.to.toHex()},
               {"function", tx.function},
               {"args", argsToJson(tx.args)},
               {"value", formatU256(tx.value)}};
        if (tx.expect) {
            json e{{"outcome", tx.expect->outcome == Expectation::Outcome::Success
                                   ? "success"
                                   : "revert"}};
            if (tx.expect->reason) {
                RevertReason r;
                r.kind = *tx.expect->reason;
                e["reason"] = r.name();
            }
            t["expect"] = e;
        }
        root["transactions"].push_back(std::move(t));
    }
    return root.dump(2) + "\n";
}

std::vector<Diagnostic> validateEntryConstraints(const Scenario& sc, const Program& p,
                                                 const ContractTable& t, TypingMode mode) {
    std::vector<Diagnostic> diags;
    if (mode == TypingMode::Baseline) return diags;
    SourceSpan span;

    // Addresses written literally in the program carry an address payable
    // promise; honoring it at fallback-less deployments is on the operator.
    std::set<Address> literalAddrs;
    forEachExpr(p, [&](const Expr& e) {
        if (e.is<AddrLit>()) literalAddrs.insert(e.as<AddrLit>().value);
    });
    for (const auto& d : sc.deployments) {
        if (literalAddrs.count(d.address) && !t.hasFallback(d.contract)) {
            diags.push_back(makeWarning(
                "SCN-LITERAL-NOFALLBACK",
                "deploying fallback-less contract '" + d.contract + "' at " +
                    d.address.toHex() +
                    ", an address the program mentions literally (literals promise a fallback)",
                span));
        }
    }

    for (size_t i = 0; i < sc.transactions.size(); ++i) {
        const ScenarioTx& tx = sc.transactions[i];
        std::string where = "transactions[" + std::to_string(i) + "]";
        const ScenarioDeployment* target = nullptr;
        for (const auto& d : sc.deployments)
            if (d.address == tx.to) target = &d;
        if (!target) {
            diags.push_back(makeError("SCN-ENTRY",
                                      where + " targets " + tx.to.toHex() +
                                          ", which no deployment occupies",
                                      span));
            continue;
        }
        const ResolvedContract* rcp = t.find(target->contract);
        if (!rcp) {
            diags.push_back(makeError("SCN-ENTRY",
                                      where + " targets unknown contract '" + target->contract +
                                          "'",
                                      span));
            continue;
        }
        const ResolvedContract& rc = *rcp;
        auto fn = rc.functions.find(tx.function);
        if (fn == rc.functions.end()) {
            diags.push_back(makeError("SCN-ENTRY",
                                      where + ": contract '" + target->contract +
                                          "' has no function '" + tx.function + "'",
                                      span));
            continue;
        }
        const FunctionDecl& decl = *fn->second.decl;
        if (decl.visibility == Visibility::Private) {
            diags.push_back(makeError(
                "SCN-ENTRY", where + " targets private function '" + tx.function + "'", span));
            continue;
        }
        std::string bound = decl.callerAnn.boundName();
        if (bound != kTopName && bound != kTopFbName) {
            diags.push_back(makeError("SCN-ENTRY",
                                      where + ": caller bound '" + bound + "' of '" +
                                          tx.function +
                                          "' does not admit external accounts (needs Top or "
                                          "Top_fb)",
                                      span));
            continue;
        }
        if (tx.args.size() != decl.params.size()) {
            diags.push_back(makeError("SCN-ENTRY",
                                      where + ": '" + tx.function + "' takes " +
                                          std::to_string(decl.params.size()) +
                                          " argument(s), got " +
                                          std::to_string(tx.args.size()),
                                      span));
        }
    }
    return diags;
}

Value scenarioValueToRuntime(const ChainState& s, const ScenarioValue& v) {
    switch (v.kind) {
    case ScenarioValue::Kind::UInt:
        return UIntValue{v.uintValue};
    case ScenarioValue::Kind::Bool:
        return BoolValue{v.boolValue};
    case ScenarioValue::Kind::Addr: {
        auto it = s.accounts.find(v.addrValue);
        if (it != s.accounts.end() && it->second.isContract())
            return AddrValue{v.addrValue, AddrTag::ref(it->second.contractName)};
        return AddrValue{v.addrValue, AddrTag::payable()};
    }
    }
    return UnitValue{};
}

std::optional<std::string> applyScenarioSetup(ChainState& s, const ContractTable& t,
                                              const Scenario& sc) {
    for (const auto& e : sc.eoas) s.accounts[e.address] = Account::external(e.balance);
    for (const auto& d : sc.deployments) {
        std::vector<Value> args;
        args.reserve(d.args.size());
        for (const auto& a : d.args) args.push_back(scenarioValueToRuntime(s, a));
        auto err = deploy(s, t, d.contract, std::move(args), d.address, d.balance,
                          Address::zero());
        if (err) {
            return "deployment of '" + d.contract + "' at " + d.address.toHex() +
                   " failed: " + err->message;
        }
    }
    return std::nullopt;
}

Transaction buildTransaction(const ChainState& s, const ScenarioTx& tx) {
    Transaction t;
    t.from = tx.from;
    t.to = tx.to;
    t.functionName = tx.function;
    t.value = tx.value;
    t.args.reserve(tx.args.size());
    for (const auto& a : tx.args) t.args.push_back(scenarioValueToRuntime(s, a));
    return t;
}

bool RunReport::ok() const {
    if (deployFailed) return false;
    for (const auto& tx : transactions)
        if (!tx.passed) return false;
    return true;
}

RunReport runScenario(const ContractTable& t, const Scenario& sc) {
    RunReport rep;
    ChainState state;
    if (auto err = applyScenarioSetup(state, t, sc)) {
        rep.deployFailed = true;
        rep.deployError = *err;
        rep.finalState = std::move(state);
        return rep;
    }
    for (size_t i = 0; i < sc.transactions.size(); ++i) {
        const ScenarioTx& stx = sc.transactions[i];
        Outcome out = execTransaction(state, t, buildTransaction(state, stx));
        TxReport tr;
        tr.index = i;
        tr.function = stx.function;
        Expectation expected =
            stx.expect ? *stx.expect : Expectation{Expectation::Outcome::Success, {}};
        if (expected.outcome == Expectation::Outcome::Success) {
            tr.passed = out.success();
            if (!tr.passed) {
                tr.detail = std::string("expected success, got Reverted{") + out.reason.name() +
                            "}" + (stx.expect ? "" : " (unexpected revert)");
            }
        } else {
            if (!out.success()) {
                tr.passed = !expected.reason || out.reason.kind == *expected.reason;
                if (!tr.passed) {
                    RevertReason want;
                    want.kind = *expected.reason;
                    tr.detail = std::string("expected Reverted{") + want.name() +
                                "}, got Reverted{" + out.reason.name() + "}";
                }
            } else {
                tr.passed = false;
                tr.detail = "expected a revert, got Success";
            }
        }
        rep.trace.insert(rep.trace.end(), out.trace.begin(), out.trace.end());
        out.trace.clear();
        tr.outcome = std::move(out);
        rep.transactions.push_back(std::move(tr));
    }
    rep.finalState = std::move(state);
    return rep;
}

std::string renderRunReport(const RunReport& report) {
    std::ostringstream out;
    if (report.deployFailed) {
        out << "deployment failed: " << report.deployError << "\n";
        return out.str();
    }
    for (const auto& tx : report.transactions) {
        out << "tx " << tx.index << ": " << tx.function << " -> ";
        if (tx.outcome.success()) {
            out << "Success";
            if (tx.outcome.returnValue)
                out << " (returned " << renderValue(*tx.outcome.returnValue) << ")";
        } else {
            out << "Reverted{" << tx.outcome.reason.name() << "}";
        }
        out << (tx.passed ? "  [ok]" : "  [FAIL]");
        if (!tx.detail.empty()) out << "  " << tx.detail;
        out << "\n";
    }
    out << "final state:\n" << renderBalances(report.finalState);
    out << (report.ok() ? "result: ok\n" : "result: FAILED\n");
    return out.str();
}

std::string runReportToJson(const RunReport& report) {
    json root;
    root["deployFailed"] = report.deployFailed;
    if (report.deployFailed) root["deployError"] = report.deployError;
    root["transactions"] = json::array();
    for (const auto& tx : report.transactions) {
        json t;
        t["index"] = tx.index;
        t["function"] = tx.function;
        t["outcome"] = tx.outcome.success() ? "Success" : "Reverted";
        if (!tx.outcome.success()) {
            t["reason"] = tx.outcome.reason.name();
            t["detail"] = tx.outcome.reason.describe();
        }
        if (tx.outcome.returnValue) t["returnValue"] = renderValue(*tx.outcome.returnValue);
        t["passed"] = tx.passed;
        if (!tx.detail.empty()) t["expectation"] = tx.detail;
        root["transactions"].push_back(std::move(t));
    }
    json balances = json::object();
    for (const auto& [addr, account] : report.finalState.accounts) {
        json a;
        a["balance"] = formatU256(account.balance);
        if (account.isContract()) a["contract"] = account.contractName;
        balances[addr.toHex()] = std::move(a);
    }
    root["finalState"] = std::move(balances);
    root["ok"] = report.ok();
    return root.dump(2) + "\n";
}

} // namespace fsol
