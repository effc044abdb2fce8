// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FSOL_VM_HPP
#define FSOL_VM_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fsol/chain.hpp"
#include "fsol/contract_table.hpp"
#include "fsol/diagnostics.hpp"
#include "fsol/value.hpp"

namespace fsol {

inline constexpr int kMaxCallDepth = 1024;

struct RevertReason {
    enum class Kind {
        MessageNotUnderstood,
        NoFallback,
        InsufficientBalance,
        RequirementFailed,
        NonPayable,
        TypeConfusion,
        CallDepthExceeded,
    };
    Kind kind = Kind::RequirementFailed;
    Address address;          // MessageNotUnderstood, NoFallback
    std::string functionName; // MessageNotUnderstood
    std::string expected;     // TypeConfusion
    std::string got;          // TypeConfusion

    static RevertReason messageNotUnderstood(Address at, std::string fname);
    static RevertReason noFallback(Address at);
    static RevertReason insufficientBalance();
    static RevertReason requirementFailed();
    static RevertReason nonPayable();
    static RevertReason typeConfusion(std::string expected, std::string got);
    static RevertReason callDepthExceeded();

    // The stable variant name, e.g. "NoFallback"; scenario expectations
    // match against it.
    const char* name() const;
    static std::optional<Kind> kindFromName(const std::string& name);
    // One-line human explanation.
    std::string describe() const;
};

struct CallEvent {
    Address from;
    Address to;
    std::string function;
    std::vector<std::string> args;
    U256 value;
};
struct TransferEvent {
    Address from;
    Address to;
    U256 amount;
};
struct FallbackEvent {
    Address at;
};
struct StateWriteEvent {
    Address at;
    std::string var;
    std::string oldValue;
    std::string newValue;
};
struct RevertBubbleEvent {
    std::string reason;
};

struct TraceEvent {
    std::variant<CallEvent, TransferEvent, FallbackEvent, StateWriteEvent, RevertBubbleEvent>
        node;

    template <typename T>
    bool is() const {
        return std::holds_alternative<T>(node);
    }
    template <typename T>
    const T& as() const {
        return std::get<T>(node);
    }
};

// One JSON object per line, discriminated by an "ev" field.
std::string traceEventToJsonLine(const TraceEvent& ev);
std::string traceToJsonLines(const std::vector<TraceEvent>& trace);

struct Outcome {
    enum class Kind { Success, Reverted };
    Kind kind = Kind::Success;
    std::optional<Value> returnValue; // Success only
    RevertReason reason;              // Reverted only
    SourceSpan site;                  // Reverted only
    std::vector<TraceEvent> trace;

    bool success() const { return kind == Kind::Success; }
};

struct Transaction {
    Address from;
    Address to;
    std::string functionName;
    std::vector<Value> args;
    U256 value = 0;
};

struct DeployError {
    enum class Kind {
        UnknownContract,
        ReservedContract,
        AddressOccupied,
        ArityMismatch,
        BadArgument,
        ConstructorReverted,
    };
    Kind kind;
    std::string message;
    std::optional<RevertReason> revert; // ConstructorReverted only
};

// Creates the instance, credits the initial balance (genesis mint), then
// runs the constructor with the given deployer as sender. On error the
// state is left untouched.
std::optional<DeployError> deploy(ChainState& s, const ContractTable& t,
                                  const std::string& contractName, std::vector<Value> ctorArgs,
                                  const Address& at, const U256& initialBalance,
                                  const Address& deployer);

// Runs one transaction against the state. On revert the state is restored
// to the pre-transaction snapshot; the trace is kept either way.
Outcome execTransaction(ChainState& s, const ContractTable& t, const Transaction& tx);

} // namespace fsol

#endif
