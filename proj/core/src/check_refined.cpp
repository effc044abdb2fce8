// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "fsol/check_refined.hpp"

#include "check_util.hpp"

namespace fsol {

TypeRepr elaborateLegacy(const TypeRepr& type) {
    if (type.kind == TypeKind::BareAddress) return TypeRepr::refAddress(kTopName);
    if (type.kind == TypeKind::PayableAddress) return TypeRepr::refAddress(kTopFbName);
    return type;
}

std::optional<Diagnostic> checkCallConstraint(const ContractTable& t,
                                              const std::string& callerContract,
                                              const FunctionDecl& callee,
                                              const SourceSpan& site) {
    std::string bound = callee.callerAnn.boundName();
    if (t.contractLe(callerContract, bound)) return std::nullopt;
    return makeError("REF-CALLER-CONSTRAINT",
                     "the caller's type, " + callerContract + ", is not a subtype of " + bound +
                         ", the caller bound of '" + callee.name + "'",
                     site);
}

namespace {

class RefinedChecker {
public:
    RefinedChecker(const Program& p, const ContractTable& t, CastObserver* observer)
        : program_(p), table_(t), observer_(observer) {}

    std::vector<Diagnostic> run() {
        for (const auto& c : program_.contracts) checkContract(c);
        sortDiagnostics(diags_);
        return std::move(diags_);
    }

private:
    const Program& program_;
    const ContractTable& table_;
    CastObserver* observer_;
    std::vector<Diagnostic> diags_;

    void error(std::string code, std::string message, const SourceSpan& span) {
        diags_.push_back(makeError(std::move(code), std::move(message), span));
    }

    void checkContract(const ContractDecl& c) {
        if (c.ctor) {
            // The deployer behaves like an external account: it can always
            // take money back.
            TypeEnv env = makeEnv(c.name, kTopFbName, std::nullopt, c.ctor->params);
            checkBlock(env, c.ctor->body);
        }
        for (const auto& f : c.functions) {
            std::optional<TypeRepr> ret;
            if (f.returnType) ret = elaborateLegacy(*f.returnType);
            TypeEnv env = makeEnv(c.name, f.callerAnn.boundName(), ret, f.params);
            checkBlock(env, f.body);
            if (ret && !blockDefinitelyReturns(f.body)) {
                error("REF-MISSING-RETURN",
                      "function '" + f.name + "' can fall off the end without returning a value",
                      f.nameSpan);
            }
        }
        if (c.fallback) {
            TypeEnv env = makeEnv(c.name, kTopName, std::nullopt, {});
            checkBlock(env, c.fallback->body);
        }
    }

    TypeEnv makeEnv(const std::string& contractName, std::string callerBound,
                    std::optional<TypeRepr> ret, const std::vector<Param>& params) {
        TypeEnv env;
        env.contractName = contractName;
        env.callerBound = std::move(callerBound);
        env.returnType = std::move(ret);
        env.pushScope();
        for (const auto& p : params) env.declareLocal(p.name, elaborateLegacy(p.type));
        return env;
    }

    void checkBlock(TypeEnv& env, const std::vector<Stmt>& body) {
        for (const auto& s : body) checkStmt(env, s);
    }

    bool validLocalType(const TypeRepr& type, const SourceSpan& span) {
        if ((type.kind == TypeKind::Contract || type.kind == TypeKind::RefAddress) &&
            !table_.contains(type.contractName)) {
            error("REF-UNKNOWN-TYPE", "unknown contract '" + type.contractName + "'", span);
            return false;
        }
        return true;
    }

    void checkStmt(TypeEnv& env, const Stmt& s) {
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, LocalDeclStmt>) {
                    bool typeOk = validLocalType(node.type, s.span);
                    TypeRepr declared = elaborateLegacy(node.type);
                    ExprTyping init = typeOf(env, node.init);
                    TypeRepr bound = declared;
                    if (init.kind == ExprTyping::Kind::Unit) {
                        error("REF-NO-VALUE", "expression yields no value", node.init.span);
                    }
                    if (typeOk && init.isValue() && !isSubtype(table_, init.type, declared)) {
                        if (declared.kind == TypeKind::RefAddress &&
                            init.type.kind == TypeKind::RefAddress) {
                            // A disguised address does not gain the declared
                            // bound; the local keeps the initializer's type so
                            // later uses are judged honestly.
                            error("REF-ADDR-LAUNDER",
                                  "cannot treat a value of type " + typeName(init.type) +
                                      " as " + typeName(declared) + ": '" +
                                      init.type.contractName + "' is not a subtype of '" +
                                      declared.contractName + "'",
                                  s.span);
                            bound = init.type;
                        } else {
                            error("REF-ASSIGN-TYPE",
                                  "cannot initialize '" + node.name + "' of type " +
                                      typeName(declared) + " with a value of type " +
                                      typeName(init.type),
                                  s.span);
                        }
                    }
                    if (!env.declareLocal(node.name, bound)) {
                        error("REF-DUP-LOCAL", "redeclaration of '" + node.name + "'", s.span);
                    }
                } else if constexpr (std::is_same_v<T, AssignStmt>) {
                    const TypeRepr* target = env.lookupLocal(node.target);
                    TypeRepr targetType;
                    bool known = false;
                    if (target) {
                        targetType = *target;
                        known = true;
                    } else {
                        const ResolvedContract& rc = table_.get(env.contractName);
                        auto field = rc.fieldsByName.find(node.target);
                        if (field != rc.fieldsByName.end()) {
                            targetType = elaborateLegacy(field->second->type);
                            known = true;
                        }
                    }
                    if (!known) {
                        error("REF-UNKNOWN-VAR", "undeclared identifier '" + node.target + "'",
                              s.span);
                    }
                    ExprTyping value = typeOf(env, node.value);
                    if (value.kind == ExprTyping::Kind::Unit) {
                        error("REF-NO-VALUE", "expression yields no value", node.value.span);
                    }
                    if (known && value.isValue() &&
                        !isSubtype(table_, value.type, targetType)) {
                        if (targetType.kind == TypeKind::RefAddress &&
                            value.type.kind == TypeKind::RefAddress) {
                            error("REF-ADDR-LAUNDER",
                                  "cannot treat a value of type " + typeName(value.type) +
                                      " as " + typeName(targetType) + ": '" +
                                      value.type.contractName + "' is not a subtype of '" +
                                      targetType.contractName + "'",
                                  s.span);
                        } else {
                            error("REF-ASSIGN-TYPE",
                                  "cannot assign a value of type " + typeName(value.type) +
                                      " to '" + node.target + "' of type " +
                                      typeName(targetType),
                                  s.span);
                        }
                    }
                } else if constexpr (std::is_same_v<T, ExprStmt>) {
                    typeOf(env, node.expr);
                } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                    if (!env.returnType) {
                        if (node.value) {
                            error("REF-RETURN-TYPE",
                                  "this function does not declare a return type", s.span);
                        }
                        return;
                    }
                    if (!node.value) {
                        error("REF-RETURN-TYPE", "missing return value", s.span);
                        return;
                    }
                    ExprTyping value = typeOf(env, *node.value);
                    if (value.kind == ExprTyping::Kind::Unit) {
                        error("REF-NO-VALUE", "expression yields no value", node.value->span);
                    }
                    if (value.isValue() && !isSubtype(table_, value.type, *env.returnType)) {
                        error("REF-RETURN-TYPE",
                              "cannot return a value of type " + typeName(value.type) +
                                  " from a function returning " + typeName(*env.returnType),
                              s.span);
                    }
                } else if constexpr (std::is_same_v<T, RequireStmt>) {
                    requireBool(env, node.condition, "require condition");
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    requireBool(env, node.condition, "if condition");
                    env.pushScope();
                    checkBlock(env, node.thenBody);
                    env.popScope();
                    if (node.elseBody) {
                        env.pushScope();
                        checkBlock(env, *node.elseBody);
                        env.popScope();
                    }
                }
            },
            s.node);
    }

    void requireBool(TypeEnv& env, const Expr& cond, const char* what) {
        ExprTyping typing = typeOf(env, cond);
        if (typing.isValue() && typing.type.kind != TypeKind::Bool) {
            error("REF-COND-NOT-BOOL",
                  std::string(what) + " must be bool, got " + typeName(typing.type), cond.span);
        }
        if (typing.kind == ExprTyping::Kind::Unit) {
            error("REF-COND-NOT-BOOL", std::string(what) + " must be bool, got no value",
                  cond.span);
        }
    }

    ExprTyping typeOf(TypeEnv& env, const Expr& e) {
        return refinedTypeOf(table_, env, e, diags_, observer_);
    }
};

} // namespace

ExprTyping refinedTypeOf(const ContractTable& t, TypeEnv& env, const Expr& e,
                         std::vector<Diagnostic>& sink, CastObserver* observer) {
    auto error = [&sink](std::string code, std::string message, const SourceSpan& span) {
        sink.push_back(makeError(std::move(code), std::move(message), span));
        return ExprTyping::error();
    };
    auto value = [&t, &env, &sink, observer](const Expr& sub) {
        return refinedTypeOf(t, env, sub, sink, observer);
    };
    auto asValue = [&](const ExprTyping& typing, const Expr& at) {
        if (typing.kind == ExprTyping::Kind::Unit)
            return error("REF-NO-VALUE", "expression yields no value", at.span);
        return typing;
    };

    return std::visit(
        [&](const auto& node) -> ExprTyping {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, IntLit>) {
                return ExprTyping::value(TypeRepr::uintType());
            } else if constexpr (std::is_same_v<T, BoolLit>) {
                return ExprTyping::value(TypeRepr::boolType());
            } else if constexpr (std::is_same_v<T, AddrLit>) {
                // Literal addresses promise only what address payable does.
                return ExprTyping::value(TypeRepr::refAddress(kTopFbName));
            } else if constexpr (std::is_same_v<T, VarRef>) {
                if (const TypeRepr* local = env.lookupLocal(node.name))
                    return ExprTyping::value(*local);
                const ResolvedContract& rc = t.get(env.contractName);
                auto field = rc.fieldsByName.find(node.name);
                if (field != rc.fieldsByName.end())
                    return ExprTyping::value(elaborateLegacy(field->second->type));
                return error("REF-UNKNOWN-VAR", "undeclared identifier '" + node.name + "'",
                             e.span);
            } else if constexpr (std::is_same_v<T, ThisRef>) {
                return ExprTyping::value(TypeRepr::contract(env.contractName));
            } else if constexpr (std::is_same_v<T, MsgSenderRef>) {
                // The whole point: the sender's type is whatever the
                // enclosing function's caller bound promises.
                return ExprTyping::value(TypeRepr::refAddress(env.callerBound));
            } else if constexpr (std::is_same_v<T, MsgValueRef>) {
                return ExprTyping::value(TypeRepr::uintType());
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                ExprTyping recv = asValue(value(*node.receiver), *node.receiver);
                if (recv.isError()) {
                    for (const auto& a : node.args) value(a);
                    return ExprTyping::error();
                }
                if (recv.type.kind != TypeKind::Contract) {
                    for (const auto& a : node.args) value(a);
                    return error("REF-CALL-RECEIVER",
                                 "call receiver must have a contract type, got " +
                                     typeName(recv.type),
                                 node.receiver->span);
                }
                const ResolvedContract& rc = t.get(recv.type.contractName);
                auto fn = rc.functions.find(node.function);
                if (fn == rc.functions.end()) {
                    for (const auto& a : node.args) value(a);
                    return error("REF-UNKNOWN-MEMBER",
                                 "contract '" + rc.name + "' has no function '" +
                                     node.function + "'",
                                 e.span);
                }
                const FunctionDecl& decl = *fn->second.decl;
                if (decl.visibility == Visibility::Private &&
                    !std::holds_alternative<ThisRef>(node.receiver->node)) {
                    error("REF-VISIBILITY",
                          "'" + node.function + "' is private and callable only through 'this'",
                          e.span);
                }
                if (auto violation = checkCallConstraint(t, env.contractName, decl, e.span)) {
                    sink.push_back(*violation);
                }
                if (node.args.size() != decl.params.size()) {
                    for (const auto& a : node.args) value(a);
                    return error("REF-ARITY",
                                 "function '" + node.function + "' takes " +
                                     std::to_string(decl.params.size()) + " argument(s), got " +
                                     std::to_string(node.args.size()),
                                 e.span);
                }
                for (size_t i = 0; i < node.args.size(); ++i) {
                    ExprTyping arg = asValue(value(node.args[i]), node.args[i]);
                    if (!arg.isValue()) continue;
                    TypeRepr param = elaborateLegacy(decl.params[i].type);
                    if (!isSubtype(t, arg.type, param)) {
                        error("REF-ARG-TYPE",
                              "argument " + std::to_string(i + 1) + " to '" + node.function +
                                  "' has type " + typeName(arg.type) + ", expected " +
                                  typeName(param),
                              node.args[i].span);
                    }
                }
                if (decl.returnType)
                    return ExprTyping::value(elaborateLegacy(*decl.returnType));
                return ExprTyping::unit();
            } else if constexpr (std::is_same_v<T, TransferExpr>) {
                ExprTyping recv = asValue(value(*node.receiver), *node.receiver);
                if (recv.isValue()) {
                    if (recv.type.kind != TypeKind::RefAddress) {
                        error("REF-TRANSFER-NOFALLBACK",
                              "'transfer' requires an address receiver, got " +
                                  typeName(recv.type),
                              e.span);
                    } else if (!t.contractLe(recv.type.contractName, kTopFbName)) {
                        error("REF-TRANSFER-NOFALLBACK",
                              "cannot transfer to a receiver of type " + typeName(recv.type) +
                                  ": '" + recv.type.contractName +
                                  "' is not known to have a fallback function",
                              e.span);
                    }
                }
                ExprTyping amount = asValue(value(*node.amount), *node.amount);
                if (amount.isValue() && amount.type.kind != TypeKind::UInt) {
                    error("REF-ARG-TYPE",
                          "transfer amount must be uint, got " + typeName(amount.type),
                          node.amount->span);
                }
                return ExprTyping::unit();
            } else if constexpr (std::is_same_v<T, BalanceExpr>) {
                ExprTyping recv = asValue(value(*node.receiver), *node.receiver);
                if (recv.isValue() && !recv.type.isAddressLike() &&
                    recv.type.kind != TypeKind::Contract) {
                    return error("REF-BALANCE-RECEIVER",
                                 "'.balance' requires an address or contract receiver, got " +
                                     typeName(recv.type),
                                 e.span);
                }
                return ExprTyping::value(TypeRepr::uintType());
            } else if constexpr (std::is_same_v<T, CastExpr>) {
                ExprTyping operand = asValue(value(*node.operand), *node.operand);
                if (!operand.isValue()) return ExprTyping::error();
                switch (node.kind) {
                case CastKind::ToContract: {
                    if (!t.contains(node.contractName)) {
                        return error("REF-UNKNOWN-TYPE",
                                     "unknown contract '" + node.contractName + "' in cast",
                                     e.span);
                    }
                    if (operand.type.kind != TypeKind::RefAddress &&
                        operand.type.kind != TypeKind::Contract) {
                        return error("REF-BAD-CAST",
                                     "cannot cast " + typeName(operand.type) + " to contract " +
                                         node.contractName,
                                     e.span);
                    }
                    // Upcasts are free of message-not-understood risk;
                    // anything else is refused, never deferred to run time.
                    if (!t.contractLe(operand.type.contractName, node.contractName)) {
                        return error("REF-BAD-CAST",
                                     "cast from " + typeName(operand.type) + " to contract " +
                                         node.contractName +
                                         " is not an upcast: '" + operand.type.contractName +
                                         "' is not a subtype of '" + node.contractName + "'",
                                     e.span);
                    }
                    if (observer) {
                        observer->onContractCast(operand.type.contractName, node.contractName,
                                                 e.span);
                    }
                    return ExprTyping::value(TypeRepr::contract(node.contractName));
                }
                case CastKind::ToUInt160:
                    if (operand.type.kind == TypeKind::RefAddress ||
                        operand.type.kind == TypeKind::UInt) {
                        return ExprTyping::value(TypeRepr::uint160Type());
                    }
                    return error("REF-BAD-CAST",
                                 "cannot cast " + typeName(operand.type) + " to uint160",
                                 e.span);
                case CastKind::ToAddress:
                    // Numbers carry no promise, so the round trip through
                    // uint160 lands on the bound that allows nothing.
                    if (operand.type.kind == TypeKind::UInt160)
                        return ExprTyping::value(TypeRepr::refAddress(kTopName));
                    if (operand.type.kind == TypeKind::Contract)
                        return ExprTyping::value(TypeRepr::refAddress(operand.type.contractName));
                    if (operand.type.kind == TypeKind::RefAddress)
                        return ExprTyping::value(operand.type);
                    return error("REF-BAD-CAST",
                                 "cannot cast " + typeName(operand.type) + " to address",
                                 e.span);
                }
                return ExprTyping::error();
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                ExprTyping lhs = asValue(value(*node.lhs), *node.lhs);
                ExprTyping rhs = asValue(value(*node.rhs), *node.rhs);
                if (!lhs.isValue() || !rhs.isValue()) return ExprTyping::error();
                switch (node.op) {
                case BinaryOp::Add:
                case BinaryOp::Sub:
                case BinaryOp::Mul:
                    if (lhs.type.kind == TypeKind::UInt && rhs.type.kind == TypeKind::UInt)
                        return ExprTyping::value(TypeRepr::uintType());
                    return error("REF-BINOP-TYPE",
                                 std::string("operator '") + binaryOpToken(node.op) +
                                     "' requires uint operands, got " + typeName(lhs.type) +
                                     " and " + typeName(rhs.type),
                                 e.span);
                case BinaryOp::Lt:
                case BinaryOp::Le:
                case BinaryOp::Gt:
                case BinaryOp::Ge:
                    if (lhs.type.kind == TypeKind::UInt && rhs.type.kind == TypeKind::UInt)
                        return ExprTyping::value(TypeRepr::boolType());
                    return error("REF-BINOP-TYPE",
                                 std::string("operator '") + binaryOpToken(node.op) +
                                     "' requires uint operands, got " + typeName(lhs.type) +
                                     " and " + typeName(rhs.type),
                                 e.span);
                case BinaryOp::Eq:
                case BinaryOp::Ne:
                    if (comparableForEquality(lhs.type, rhs.type))
                        return ExprTyping::value(TypeRepr::boolType());
                    return error("REF-BINOP-TYPE",
                                 "cannot compare " + typeName(lhs.type) + " and " +
                                     typeName(rhs.type),
                                 e.span);
                case BinaryOp::And:
                case BinaryOp::Or:
                    if (lhs.type.kind == TypeKind::Bool && rhs.type.kind == TypeKind::Bool)
                        return ExprTyping::value(TypeRepr::boolType());
                    return error("REF-BINOP-TYPE",
                                 std::string("operator '") + binaryOpToken(node.op) +
                                     "' requires bool operands, got " + typeName(lhs.type) +
                                     " and " + typeName(rhs.type),
                                 e.span);
                }
                return ExprTyping::error();
            } else if constexpr (std::is_same_v<T, NotExpr>) {
                ExprTyping operand = asValue(value(*node.operand), *node.operand);
                if (!operand.isValue()) return ExprTyping::error();
                if (operand.type.kind != TypeKind::Bool) {
                    return error("REF-BINOP-TYPE",
                                 "operator '!' requires a bool operand, got " +
                                     typeName(operand.type),
                                 e.span);
                }
                return ExprTyping::value(TypeRepr::boolType());
            }
        },
        e.node);
}

std::vector<Diagnostic> checkRefined(const Program& p, const ContractTable& t,
                                     CastObserver* observer) {
    return RefinedChecker(p, t, observer).run();
}

namespace {

TypeRepr eraseType(const ContractTable& t, const TypeRepr& type) {
    if (type.kind == TypeKind::RefAddress) {
        return t.hasFallback(type.contractName) ? TypeRepr::payableAddress()
                                                : TypeRepr::bareAddress();
    }
    return type;
}

void eraseStmt(const ContractTable& t, Stmt& s) {
    std::visit(
        [&](auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, LocalDeclStmt>) {
                node.type = eraseType(t, node.type);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                for (auto& inner : node.thenBody) eraseStmt(t, inner);
                if (node.elseBody)
                    for (auto& inner : *node.elseBody) eraseStmt(t, inner);
            }
        },
        s.node);
}

} // namespace

Program eraseToLegacy(const Program& p, const ContractTable& t) {
    Program out = cloneProgram(p);
    for (auto& c : out.contracts) {
        for (auto& v : c.stateVars) v.type = eraseType(t, v.type);
        if (c.ctor) {
            for (auto& param : c.ctor->params) param.type = eraseType(t, param.type);
            for (auto& s : c.ctor->body) eraseStmt(t, s);
        }
        for (auto& f : c.functions) {
            f.callerAnn = CallerAnnotation{};
            for (auto& param : f.params) param.type = eraseType(t, param.type);
            if (f.returnType) *f.returnType = eraseType(t, *f.returnType);
            for (auto& s : f.body) eraseStmt(t, s);
        }
        if (c.fallback)
            for (auto& s : c.fallback->body) eraseStmt(t, s);
    }
    return out;
}

} // namespace fsol
