// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FSOL_SCENARIO_HPP
#define FSOL_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "fsol/ast.hpp"
#include "fsol/chain.hpp"
#include "fsol/contract_table.hpp"
#include "fsol/diagnostics.hpp"
#include "fsol/vm.hpp"

namespace fsol {

enum class TypingMode { Baseline, Refined };

// Literal argument as written in a scenario file. Address arguments pick
// up their claim from the chain at the moment they are bound.
struct ScenarioValue {
    enum class Kind { UInt, Bool, Addr };
    Kind kind = Kind::UInt;
    U256 uintValue;
    bool boolValue = false;
    Address addrValue;

    static ScenarioValue ofUInt(U256 v);
    static ScenarioValue ofBool(bool v);
    static ScenarioValue ofAddr(Address v);
};

struct ScenarioDeployment {
    std::string contract;
    Address address;
    std::vector<ScenarioValue> args;
    U256 balance;
};

struct ScenarioEoa {
    Address address;
    U256 balance;
};

struct Expectation {
    enum class Outcome { Success, Revert };
    Outcome outcome = Outcome::Success;
    std::optional<RevertReason::Kind> reason; // Revert only; empty = any reason
};

struct ScenarioTx {
    Address from;
    Address to;
    std::string function;
    std::vector<ScenarioValue> args;
    U256 value;
    std::optional<Expectation> expect;
};

struct Scenario {
    std::vector<ScenarioDeployment> deployments;
    std::vector<ScenarioEoa> eoas;
    std::vector<ScenarioTx> transactions;
};

struct ScenarioLoadResult {
    std::optional<Scenario> scenario;
    std::vector<Diagnostic> diagnostics;
};

// Strict parse: unknown keys, wrong shapes, bad literals, duplicate
// addresses, unknown contracts, and undeclared senders are all rejected.
ScenarioLoadResult loadScenario(const std::string& jsonText, const std::string& fileName,
                                const ContractTable& t);

std::string scenarioToJson(const Scenario& sc);

// Refined mode only: a transaction may enter the chain only through a
// function any external account is allowed to call.
std::vector<Diagnostic> validateEntryConstraints(const Scenario& sc, const Program& p,
                                                 const ContractTable& t, TypingMode mode);

// Claim recovery: an address names whatever the chain currently holds.
Value scenarioValueToRuntime(const ChainState& s, const ScenarioValue& v);

// EOAs then deployments, in order. Returns an error message on the first
// failed deployment, leaving the state as it was before that deployment.
std::optional<std::string> applyScenarioSetup(ChainState& s, const ContractTable& t,
                                              const Scenario& sc);

Transaction buildTransaction(const ChainState& s, const ScenarioTx& tx);

struct TxReport {
    size_t index = 0;
    std::string function;
    Outcome outcome;
    bool passed = true;
    std::string detail; // expectation mismatch description
};

struct RunReport {
    bool deployFailed = false;
    std::string deployError;
    std::vector<TxReport> transactions;
    ChainState finalState;
    std::vector<TraceEvent> trace;

    bool ok() const;
};

RunReport runScenario(const ContractTable& t, const Scenario& sc);

std::string renderRunReport(const RunReport& report);
std::string runReportToJson(const RunReport& report);

} // namespace fsol

#endif
