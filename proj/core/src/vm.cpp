// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "fsol/vm.hpp"

#include "json.hpp"

namespace fsol {

RevertReason RevertReason::messageNotUnderstood(Address at, std::string fname) {
    RevertReason r;
    r.kind = Kind::MessageNotUnderstood;
    r.address = at;
    r.functionName = std::move(fname);
    return r;
}
RevertReason RevertReason::noFallback(Address at) {
    RevertReason r;
    r.kind = Kind::NoFallback;
    r.address = at;
    return r;
}
RevertReason RevertReason::insufficientBalance() {
    RevertReason r;
    r.kind = Kind::InsufficientBalance;
    return r;
}
RevertReason RevertReason::requirementFailed() {
    RevertReason r;
    r.kind = Kind::RequirementFailed;
    return r;
}
RevertReason RevertReason::nonPayable() {
    RevertReason r;
    r.kind = Kind::NonPayable;
    return r;
}
RevertReason RevertReason::typeConfusion(std::string expected, std::string got) {
    RevertReason r;
    r.kind = Kind::TypeConfusion;
    r.expected = std::move(expected);
    r.got = std::move(got);
    return r;
}
RevertReason RevertReason::callDepthExceeded() {
    RevertReason r;
    r.kind = Kind::CallDepthExceeded;
    return r;
}

const char* RevertReason::name() const {
    switch (kind) {
    case Kind::MessageNotUnderstood:
        return "MessageNotUnderstood";
    case Kind::NoFallback:
        return "NoFallback";
    case Kind::InsufficientBalance:
        return "InsufficientBalance";
    case Kind::RequirementFailed:
        return "RequirementFailed";
    case Kind::NonPayable:
        return "NonPayable";
    case Kind::TypeConfusion:
        return "TypeConfusion";
    case Kind::CallDepthExceeded:
        return "CallDepthExceeded";
    }
    return "?";
}

std::optional<RevertReason::Kind> RevertReason::kindFromName(const std::string& name) {
    if (name == "MessageNotUnderstood") return Kind::MessageNotUnderstood;
    if (name == "NoFallback") return Kind::NoFallback;
    if (name == "InsufficientBalance") return Kind::InsufficientBalance;
    if (name == "RequirementFailed") return Kind::RequirementFailed;
    if (name == "NonPayable") return Kind::NonPayable;
    if (name == "TypeConfusion") return Kind::TypeConfusion;
    if (name == "CallDepthExceeded") return Kind::CallDepthExceeded;
    return std::nullopt;
}

std::string RevertReason::describe() const {
    switch (kind) {
    case Kind::MessageNotUnderstood:
        return "message not understood: no function '" + functionName + "' at " +
               address.toHex();
    case Kind::NoFallback:
        return "no fallback function at " + address.toHex();
    case Kind::InsufficientBalance:
        return "insufficient balance";
    case Kind::RequirementFailed:
        return "requirement failed";
    case Kind::NonPayable:
        return "value sent to a non-payable function";
    case Kind::TypeConfusion:
        return "type confusion: expected " + expected + ", got " + got;
    case Kind::CallDepthExceeded:
        return "call depth exceeded " + std::to_string(kMaxCallDepth);
    }
    return "?";
}

namespace {

struct RevertSignal {
    RevertReason reason;
    SourceSpan site;
};

struct ReturnSignal {
    std::optional<Value> value;
};

struct Frame {
    Address thisAddr;
    Address senderAddr;
    U256 msgValue;
    std::string contractName; // the account's actual contract
    std::vector<std::map<std::string, Value>> scopes;

    void pushScope() { scopes.emplace_back(); }
    void popScope() { scopes.pop_back(); }
    Value* findLocal(const std::string& name) {
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) return &found->second;
        }
        return nullptr;
    }
    void declareLocal(const std::string& name, Value v) {
        scopes.back()[name] = std::move(v);
    }
};

class Interp {
public:
    Interp(ChainState& s, const ContractTable& t) : state_(s), table_(t) {}

    std::vector<TraceEvent> trace;

    Value callFunction(const Address& caller, const Address& callee, const std::string& fname,
                       const std::vector<Value>& args, const U256& value,
                       const SourceSpan& site) {
        DepthGuard guard(*this, site);
        auto it = state_.accounts.find(callee);
        if (it == state_.accounts.end() || !it->second.isContract()) {
            throw RevertSignal{RevertReason::messageNotUnderstood(callee, fname), site};
        }
        const ResolvedContract& rc = table_.get(it->second.contractName);
        auto fn = rc.functions.find(fname);
        if (fn == rc.functions.end()) {
            throw RevertSignal{RevertReason::messageNotUnderstood(callee, fname), site};
        }
        const FunctionDecl& decl = *fn->second.decl;
        // Private members are invisible except to the instance itself.
        if (decl.visibility == Visibility::Private && caller != callee) {
            throw RevertSignal{RevertReason::messageNotUnderstood(callee, fname), site};
        }
        if (args.size() != decl.params.size()) {
            throw RevertSignal{
                RevertReason::typeConfusion(std::to_string(decl.params.size()) + " argument(s)",
                                            std::to_string(args.size()) + " argument(s)"),
                site};
        }
        for (size_t i = 0; i < args.size(); ++i) {
            if (!valueCompatible(table_, decl.params[i].type, args[i])) {
                throw RevertSignal{RevertReason::typeConfusion(typeName(decl.params[i].type),
                                                               describeValue(args[i])),
                                   site};
            }
        }
        if (value > 0) {
            if (!decl.payable) throw RevertSignal{RevertReason::nonPayable(), site};
            if (state_.balanceOf(caller) < value)
                throw RevertSignal{RevertReason::insufficientBalance(), site};
            state_.accounts[caller].balance -= value;
            state_.accounts[callee].balance += value;
        }
        Frame frame{callee, caller, value, it->second.contractName, {}};
        frame.pushScope();
        for (size_t i = 0; i < args.size(); ++i)
            frame.declareLocal(decl.params[i].name, args[i]);
        try {
            execBlock(frame, decl.body);
        } catch (ReturnSignal& ret) {
            return ret.value ? *ret.value : Value(UnitValue{});
        }
        return Value(UnitValue{});
    }

    void runConstructor(const Address& at, const Address& deployer, const ResolvedContract& rc,
                        const std::vector<Value>& args) {
        DepthGuard guard(*this, rc.constructorDecl->span);
        Frame frame{at, deployer, 0, rc.name, {}};
        frame.pushScope();
        for (size_t i = 0; i < args.size(); ++i)
            frame.declareLocal(rc.constructorDecl->params[i].name, args[i]);
        try {
            execBlock(frame, rc.constructorDecl->body);
        } catch (ReturnSignal&) {
        }
    }

private:
    ChainState& state_;
    const ContractTable& table_;
    int depth_ = 0;

    struct DepthGuard {
        Interp& interp;
        DepthGuard(Interp& i, const SourceSpan& site) : interp(i) {
            if (interp.depth_ >= kMaxCallDepth) {
                throw RevertSignal{RevertReason::callDepthExceeded(), site};
            }
            ++interp.depth_;
        }
        ~DepthGuard() { --interp.depth_; }
    };

    AddrTag senderTagFor(const Address& addr) const {
        auto it = state_.accounts.find(addr);
        if (it != state_.accounts.end() && it->second.isContract())
            return AddrTag::ref(it->second.contractName);
        // External accounts always accept value, like address payable.
        return AddrTag::payable();
    }

    void doTransfer(Frame& f, const Address& to, const U256& amount, const SourceSpan& site) {
        trace.push_back(TraceEvent{TransferEvent{f.thisAddr, to, amount}});
        auto fromIt = state_.accounts.find(f.thisAddr);
        if (fromIt == state_.accounts.end() || fromIt->second.balance < amount) {
            throw RevertSignal{RevertReason::insufficientBalance(), site};
        }
        auto [toIt, created] = state_.accounts.try_emplace(to, Account::external(0));
        (void)created;
        fromIt->second.balance -= amount;
        toIt->second.balance += amount;
        if (toIt->second.isContract()) {
            const ResolvedContract& rc = table_.get(toIt->second.contractName);
            if (!rc.hasFallback) {
                throw RevertSignal{RevertReason::noFallback(to), site};
            }
            trace.push_back(TraceEvent{FallbackEvent{to}});
            DepthGuard guard(*this, site);
            Frame fb{to, f.thisAddr, amount, toIt->second.contractName, {}};
            fb.pushScope();
            execBlock(fb, rc.fallbackDecl->body);
        }
    }

    void execBlock(Frame& f, const std::vector<Stmt>& body) {
        for (const auto& s : body) execStmt(f, s);
    }

    void execStmt(Frame& f, const Stmt& s) {
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, LocalDeclStmt>) {
                    Value v = evalExpr(f, node.init);
                    if (!valueKindMatches(node.type, v)) {
                        throw RevertSignal{
                            RevertReason::typeConfusion(typeName(node.type), describeValue(v)),
                            s.span};
                    }
                    f.declareLocal(node.name, std::move(v));
                } else if constexpr (std::is_same_v<T, AssignStmt>) {
                    Value v = evalExpr(f, node.value);
                    if (Value* local = f.findLocal(node.target)) {
                        if (local->node.index() != v.node.index()) {
                            throw RevertSignal{RevertReason::typeConfusion(
                                                   describeValue(*local), describeValue(v)),
                                               s.span};
                        }
                        *local = std::move(v);
                        return;
                    }
                    Account& acct = state_.accounts.at(f.thisAddr);
                    auto field = acct.fields.find(node.target);
                    if (field == acct.fields.end()) {
                        throw RevertSignal{RevertReason::typeConfusion(
                                               "a bound variable", "'" + node.target + "'"),
                                           s.span};
                    }
                    const ResolvedContract& rc = table_.get(f.contractName);
                    const TypeRepr& declared = rc.fieldsByName.at(node.target)->type;
                    if (!valueKindMatches(declared, v)) {
                        throw RevertSignal{
                            RevertReason::typeConfusion(typeName(declared), describeValue(v)),
                            s.span};
                    }
                    trace.push_back(TraceEvent{StateWriteEvent{
                        f.thisAddr, node.target, renderValue(field->second), renderValue(v)}});
                    field->second = std::move(v);
                } else if constexpr (std::is_same_v<T, ExprStmt>) {
                    evalExpr(f, node.expr);
                } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                    if (node.value) throw ReturnSignal{evalExpr(f, *node.value)};
                    throw ReturnSignal{std::nullopt};
                } else if constexpr (std::is_same_v<T, RequireStmt>) {
                    Value v = evalExpr(f, node.condition);
                    if (!v.is<BoolValue>()) {
                        throw RevertSignal{
                            RevertReason::typeConfusion("bool", describeValue(v)), s.span};
                    }
                    if (!v.as<BoolValue>().value) {
                        throw RevertSignal{RevertReason::requirementFailed(), s.span};
                    }
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    Value v = evalExpr(f, node.condition);
                    if (!v.is<BoolValue>()) {
                        throw RevertSignal{
                            RevertReason::typeConfusion("bool", describeValue(v)), s.span};
                    }
                    if (v.as<BoolValue>().value) {
                        f.pushScope();
                        execBlock(f, node.thenBody);
                        f.popScope();
                    } else if (node.elseBody) {
                        f.pushScope();
                        execBlock(f, *node.elseBody);
                        f.popScope();
                    }
                }
            },
            s.node);
    }

    Value evalExpr(Frame& f, const Expr& e) {
        return std::visit(
            [&](const auto& node) -> Value {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, IntLit>) {
                    return UIntValue{node.value};
                } else if constexpr (std::is_same_v<T, BoolLit>) {
                    return BoolValue{node.value};
                } else if constexpr (std::is_same_v<T, AddrLit>) {
                    return AddrValue{node.value, AddrTag::payable()};
                } else if constexpr (std::is_same_v<T, VarRef>) {
                    if (Value* local = f.findLocal(node.name)) return *local;
                    Account& acct = state_.accounts.at(f.thisAddr);
                    auto field = acct.fields.find(node.name);
                    if (field != acct.fields.end()) return field->second;
                    throw RevertSignal{
                        RevertReason::typeConfusion("a bound variable", "'" + node.name + "'"),
                        e.span};
                } else if constexpr (std::is_same_v<T, ThisRef>) {
                    return ContractRefValue{f.thisAddr, f.contractName};
                } else if constexpr (std::is_same_v<T, MsgSenderRef>) {
                    return AddrValue{f.senderAddr, senderTagFor(f.senderAddr)};
                } else if constexpr (std::is_same_v<T, MsgValueRef>) {
                    return UIntValue{f.msgValue};
                } else if constexpr (std::is_same_v<T, CallExpr>) {
                    Value recv = evalExpr(f, *node.receiver);
                    std::vector<Value> args;
                    args.reserve(node.args.size());
                    for (const auto& a : node.args) args.push_back(evalExpr(f, a));
                    if (!recv.is<ContractRefValue>()) {
                        throw RevertSignal{RevertReason::typeConfusion("a contract reference",
                                                                       describeValue(recv)),
                                           e.span};
                    }
                    const Address& to = recv.as<ContractRefValue>().address;
                    std::vector<std::string> rendered;
                    rendered.reserve(args.size());
                    for (const auto& a : args) rendered.push_back(renderValue(a));
                    trace.push_back(TraceEvent{
                        CallEvent{f.thisAddr, to, node.function, std::move(rendered), 0}});
                    return callFunction(f.thisAddr, to, node.function, args, 0, e.span);
                } else if constexpr (std::is_same_v<T, TransferExpr>) {
                    Value recv = evalExpr(f, *node.receiver);
                    Value amount = evalExpr(f, *node.amount);
                    if (!recv.is<AddrValue>()) {
                        throw RevertSignal{
                            RevertReason::typeConfusion("an address", describeValue(recv)),
                            e.span};
                    }
                    if (!amount.is<UIntValue>()) {
                        throw RevertSignal{
                            RevertReason::typeConfusion("uint", describeValue(amount)), e.span};
                    }
                    doTransfer(f, recv.as<AddrValue>().address, amount.as<UIntValue>().value,
                               e.span);
                    return UnitValue{};
                } else if constexpr (std::is_same_v<T, BalanceExpr>) {
                    Value recv = evalExpr(f, *node.receiver);
                    if (recv.is<AddrValue>())
                        return UIntValue{state_.balanceOf(recv.as<AddrValue>().address)};
                    if (recv.is<ContractRefValue>())
                        return UIntValue{state_.balanceOf(recv.as<ContractRefValue>().address)};
                    throw RevertSignal{
                        RevertReason::typeConfusion("an address or contract reference",
                                                    describeValue(recv)),
                        e.span};
                } else if constexpr (std::is_same_v<T, CastExpr>) {
                    Value operand = evalExpr(f, *node.operand);
                    switch (node.kind) {
                    case CastKind::ToContract:
                        // Retag only; the address is taken on faith.
                        if (operand.is<AddrValue>())
                            return ContractRefValue{operand.as<AddrValue>().address,
                                                    node.contractName};
                        if (operand.is<ContractRefValue>())
                            return ContractRefValue{operand.as<ContractRefValue>().address,
                                                    node.contractName};
                        throw RevertSignal{RevertReason::typeConfusion(
                                               "an address or contract reference",
                                               describeValue(operand)),
                                           e.span};
                    case CastKind::ToUInt160:
                        if (operand.is<AddrValue>())
                            return UInt160Value{operand.as<AddrValue>().address};
                        if (operand.is<UIntValue>())
                            return UInt160Value{Address::fromU256(operand.as<UIntValue>().value)};
                        throw RevertSignal{
                            RevertReason::typeConfusion("an address or uint",
                                                        describeValue(operand)),
                            e.span};
                    case CastKind::ToAddress:
                        // The numeric round trip forgets every claim.
                        if (operand.is<UInt160Value>())
                            return AddrValue{operand.as<UInt160Value>().bits, AddrTag::bare()};
                        if (operand.is<ContractRefValue>())
                            return AddrValue{
                                operand.as<ContractRefValue>().address,
                                AddrTag::ref(operand.as<ContractRefValue>().contractName)};
                        if (operand.is<AddrValue>()) return operand;
                        throw RevertSignal{RevertReason::typeConfusion(
                                               "a uint160, address, or contract reference",
                                               describeValue(operand)),
                                           e.span};
                    }
                    throw RevertSignal{RevertReason::typeConfusion("a cast operand", "?"),
                                       e.span};
                } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                    return evalBinary(f, node, e.span);
                } else if constexpr (std::is_same_v<T, NotExpr>) {
                    Value operand = evalExpr(f, *node.operand);
                    if (!operand.is<BoolValue>()) {
                        throw RevertSignal{
                            RevertReason::typeConfusion("bool", describeValue(operand)), e.span};
                    }
                    return BoolValue{!operand.as<BoolValue>().value};
                }
            },
            e.node);
    }

    Value evalBinary(Frame& f, const BinaryExpr& node, const SourceSpan& span) {
        if (node.op == BinaryOp::And || node.op == BinaryOp::Or) {
            Value lhs = evalExpr(f, *node.lhs);
            if (!lhs.is<BoolValue>()) {
                throw RevertSignal{RevertReason::typeConfusion("bool", describeValue(lhs)),
                                   span};
            }
            bool l = lhs.as<BoolValue>().value;
            if (node.op == BinaryOp::And && !l) return BoolValue{false};
            if (node.op == BinaryOp::Or && l) return BoolValue{true};
            Value rhs = evalExpr(f, *node.rhs);
            if (!rhs.is<BoolValue>()) {
                throw RevertSignal{RevertReason::typeConfusion("bool", describeValue(rhs)),
                                   span};
            }
            return BoolValue{rhs.as<BoolValue>().value};
        }

        Value lhs = evalExpr(f, *node.lhs);
        Value rhs = evalExpr(f, *node.rhs);

        if (node.op == BinaryOp::Eq || node.op == BinaryOp::Ne) {
            bool eq;
            if (lhs.is<UIntValue>() && rhs.is<UIntValue>()) {
                eq = lhs.as<UIntValue>().value == rhs.as<UIntValue>().value;
            } else if (lhs.is<UInt160Value>() && rhs.is<UInt160Value>()) {
                eq = lhs.as<UInt160Value>().bits == rhs.as<UInt160Value>().bits;
            } else if (lhs.is<BoolValue>() && rhs.is<BoolValue>()) {
                eq = lhs.as<BoolValue>().value == rhs.as<BoolValue>().value;
            } else if (lhs.is<AddrValue>() && rhs.is<AddrValue>()) {
                // Claims never decide equality; only the address does.
                eq = lhs.as<AddrValue>().address == rhs.as<AddrValue>().address;
            } else if (lhs.is<ContractRefValue>() && rhs.is<ContractRefValue>()) {
                eq = lhs.as<ContractRefValue>().address == rhs.as<ContractRefValue>().address;
            } else {
                throw RevertSignal{RevertReason::typeConfusion("matching operand kinds",
                                                               describeValue(lhs) + " vs " +
                                                                   describeValue(rhs)),
                                   span};
            }
            return BoolValue{node.op == BinaryOp::Eq ? eq : !eq};
        }

        if (!lhs.is<UIntValue>() || !rhs.is<UIntValue>()) {
            throw RevertSignal{
                RevertReason::typeConfusion("uint operands", describeValue(lhs) + " vs " +
                                                                 describeValue(rhs)),
                span};
        }
        const U256& a = lhs.as<UIntValue>().value;
        const U256& b = rhs.as<UIntValue>().value;
        switch (node.op) {
        case BinaryOp::Add:
            return UIntValue{U256(a + b)};
        case BinaryOp::Sub:
            return UIntValue{U256(a - b)};
        case BinaryOp::Mul:
            return UIntValue{U256(a * b)};
        case BinaryOp::Lt:
            return BoolValue{a < b};
        case BinaryOp::Le:
            return BoolValue{a <= b};
        case BinaryOp::Gt:
            return BoolValue{a > b};
        case BinaryOp::Ge:
            return BoolValue{a >= b};
        default:
            throw RevertSignal{RevertReason::typeConfusion("a binary operator", "?"), span};
        }
    }
};

} // namespace

std::optional<DeployError> deploy(ChainState& s, const ContractTable& t,
                                  const std::string& contractName, std::vector<Value> ctorArgs,
                                  const Address& at, const U256& initialBalance,
                                  const Address& deployer) {
    if (contractName == kTopName || contractName == kTopFbName) {
        return DeployError{DeployError::Kind::ReservedContract,
                           "'" + contractName + "' cannot be deployed", std::nullopt};
    }
    const ResolvedContract* rc = t.find(contractName);
    if (!rc || rc->synthetic) {
        return DeployError{DeployError::Kind::UnknownContract,
                           "unknown contract '" + contractName + "'", std::nullopt};
    }
    auto existing = s.accounts.find(at);
    if (existing != s.accounts.end() &&
        (existing->second.isContract() || existing->second.balance > 0)) {
        return DeployError{DeployError::Kind::AddressOccupied,
                           "address " + at.toHex() + " is already occupied", std::nullopt};
    }
    size_t arity = rc->constructorDecl ? rc->constructorDecl->params.size() : 0;
    if (ctorArgs.size() != arity) {
        return DeployError{DeployError::Kind::ArityMismatch,
                           "constructor of '" + contractName + "' takes " +
                               std::to_string(arity) + " argument(s), got " +
                               std::to_string(ctorArgs.size()),
                           std::nullopt};
    }
    for (size_t i = 0; i < ctorArgs.size(); ++i) {
        if (!valueCompatible(t, rc->constructorDecl->params[i].type, ctorArgs[i])) {
            return DeployError{DeployError::Kind::BadArgument,
                               "constructor argument " + std::to_string(i + 1) + " expects " +
                                   typeName(rc->constructorDecl->params[i].type) + ", got " +
                                   describeValue(ctorArgs[i]),
                               std::nullopt};
        }
    }
    ChainState snapshot = s;
    Account acct;
    acct.kind = Account::Kind::Contract;
    acct.contractName = contractName;
    acct.balance = initialBalance;
    for (const StateVarDecl* v : rc->fields) acct.fields[v->name] = defaultValueFor(v->type);
    s.accounts[at] = std::move(acct);
    if (rc->constructorDecl) {
        Interp interp(s, t);
        try {
            interp.runConstructor(at, deployer, *rc, ctorArgs);
        } catch (RevertSignal& r) {
            s = std::move(snapshot);
            return DeployError{DeployError::Kind::ConstructorReverted,
                               "constructor of '" + contractName +
                                   "' reverted: " + r.reason.describe(),
                               r.reason};
        }
    }
    return std::nullopt;
}

Outcome execTransaction(ChainState& s, const ContractTable& t, const Transaction& tx) {
    ChainState snapshot = s;
    Interp interp(s, t);
    Outcome out;
    std::vector<std::string> rendered;
    rendered.reserve(tx.args.size());
    for (const auto& a : tx.args) rendered.push_back(renderValue(a));
    interp.trace.push_back(
        TraceEvent{CallEvent{tx.from, tx.to, tx.functionName, std::move(rendered), tx.value}});
    try {
        auto sender = s.accounts.find(tx.from);
        if (sender == s.accounts.end() || sender->second.isContract()) {
            throw RevertSignal{
                RevertReason::typeConfusion("an external account as transaction sender",
                                            tx.from.toHex()),
                SourceSpan{}};
        }
        Value ret =
            interp.callFunction(tx.from, tx.to, tx.functionName, tx.args, tx.value, SourceSpan{});
        out.kind = Outcome::Kind::Success;
        if (!ret.is<UnitValue>()) out.returnValue = std::move(ret);
    } catch (RevertSignal& r) {
        s = std::move(snapshot);
        interp.trace.push_back(TraceEvent{RevertBubbleEvent{r.reason.name()}});
        out.kind = Outcome::Kind::Reverted;
        out.reason = r.reason;
        out.site = r.site;
    }
    out.trace = std::move(interp.trace);
    return out;
}

std::string traceEventToJsonLine(const TraceEvent& ev) {
    nlohmann::json j;
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, CallEvent>) {
                j["ev"] = "Call";
                j["from"] = node.from.toHex();
                j["to"] = node.to.toHex();
                j["function"] = node.function;
                j["args"] = node.args;
                j["value"] = formatU256(node.value);
            } else if constexpr (std::is_same_v<T, TransferEvent>) {
                j["ev"] = "TransferEv";
                j["from"] = node.from.toHex();
                j["to"] = node.to.toHex();
                j["amount"] = formatU256(node.amount);
            } else if constexpr (std::is_same_v<T, FallbackEvent>) {
                j["ev"] = "FallbackRun";
                j["at"] = node.at.toHex();
            } else if constexpr (std::is_same_v<T, StateWriteEvent>) {
                j["ev"] = "StateWrite";
                j["at"] = node.at.toHex();
                j["var"] = node.var;
                j["old"] = node.oldValue;
                j["new"] = node.newValue;
            } else if constexpr (std::is_same_v<T, RevertBubbleEvent>) {
                j["ev"] = "RevertBubble";
                j["reason"] = node.reason;
            }
        },
        ev.node);
    return j.dump();
}

std::string traceToJsonLines(const std::vector<TraceEvent>& trace) {
    std::string out;
    for (const auto& ev : trace) {
        out += traceEventToJsonLine(ev);
        out += "\n";
    }
    return out;
}

} // namespace fsol
