// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "fsol/check_baseline.hpp"

#include "check_util.hpp"

namespace fsol {

namespace {

// Refined spellings are rejected at their declaration; for body checking
// the declared slot is viewed at its legacy equivalent so one bad type
// does not cascade.
TypeRepr legacyView(const ContractTable& t, const TypeRepr& type) {
    if (type.kind == TypeKind::RefAddress) {
        return t.hasFallback(type.contractName) ? TypeRepr::payableAddress()
                                                : TypeRepr::bareAddress();
    }
    return type;
}

class BaselineChecker {
public:
    BaselineChecker(const Program& p, const ContractTable& t) : program_(p), table_(t) {}

    std::vector<Diagnostic> run() {
        for (const auto& c : program_.contracts) checkContract(c);
        sortDiagnostics(diags_);
        return std::move(diags_);
    }

private:
    const Program& program_;
    const ContractTable& table_;
    std::vector<Diagnostic> diags_;

    void error(std::string code, std::string message, const SourceSpan& span) {
        diags_.push_back(makeError(std::move(code), std::move(message), span));
    }

    void rejectRefinedType(const TypeRepr& type, const SourceSpan& span) {
        if (usesRefinedSyntax(type)) {
            error("BAS-REFINED-SYNTAX",
                  "type " + typeName(type) + " belongs to the refined system", span);
        }
    }

    void checkContract(const ContractDecl& c) {
        for (const auto& v : c.stateVars) rejectRefinedType(v.type, v.span);
        if (c.ctor) {
            for (const auto& p : c.ctor->params) rejectRefinedType(p.type, p.span);
            TypeEnv env = makeEnv(c.name, std::nullopt, c.ctor->params);
            checkBlock(env, c.ctor->body);
        }
        for (const auto& f : c.functions) {
            if (f.callerAnn.kind != CallerAnnotation::Kind::Default) {
                error("BAS-REFINED-SYNTAX", "caller annotations belong to the refined system",
                      f.callerAnn.span);
            }
            for (const auto& p : f.params) rejectRefinedType(p.type, p.span);
            if (f.returnType) rejectRefinedType(*f.returnType, f.nameSpan);
            std::optional<TypeRepr> ret;
            if (f.returnType) ret = legacyView(table_, *f.returnType);
            TypeEnv env = makeEnv(c.name, ret, f.params);
            checkBlock(env, f.body);
            if (ret && !blockDefinitelyReturns(f.body)) {
                error("BAS-MISSING-RETURN",
                      "function '" + f.name + "' can fall off the end without returning a value",
                      f.nameSpan);
            }
        }
        if (c.fallback) {
            TypeEnv env = makeEnv(c.name, std::nullopt, {});
            checkBlock(env, c.fallback->body);
        }
    }

    TypeEnv makeEnv(const std::string& contractName, std::optional<TypeRepr> ret,
                    const std::vector<Param>& params) {
        TypeEnv env;
        env.contractName = contractName;
        env.returnType = std::move(ret);
        env.pushScope();
        for (const auto& p : params) env.declareLocal(p.name, legacyView(table_, p.type));
        return env;
    }

    void checkBlock(TypeEnv& env, const std::vector<Stmt>& body) {
        for (const auto& s : body) checkStmt(env, s);
    }

    void checkStmt(TypeEnv& env, const Stmt& s) {
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, LocalDeclStmt>) {
                    rejectRefinedType(node.type, s.span);
                    if (node.type.kind == TypeKind::Contract &&
                        !table_.contains(node.type.contractName)) {
                        error("BAS-UNKNOWN-TYPE",
                              "unknown contract '" + node.type.contractName + "'", s.span);
                    }
                    TypeRepr bound = legacyView(table_, node.type);
                    ExprTyping init = typeOf(env, node.init);
                    if (init.kind == ExprTyping::Kind::Unit) {
                        error("BAS-NO-VALUE", "expression yields no value", node.init.span);
                    }
                    if (init.isValue() && !isSubtype(table_, init.type, bound)) {
                        error("BAS-ASSIGN-TYPE",
                              "cannot initialize '" + node.name + "' of type " +
                                  typeName(bound) + " with a value of type " +
                                  typeName(init.type),
                              s.span);
                    }
                    if (!env.declareLocal(node.name, bound)) {
                        error("BAS-DUP-LOCAL", "redeclaration of '" + node.name + "'", s.span);
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
                            targetType = legacyView(table_, field->second->type);
                            known = true;
                        }
                    }
                    if (!known) {
                        error("BAS-UNKNOWN-VAR", "undeclared identifier '" + node.target + "'",
                              s.span);
                    }
                    ExprTyping value = typeOf(env, node.value);
                    if (value.kind == ExprTyping::Kind::Unit) {
                        error("BAS-NO-VALUE", "expression yields no value", node.value.span);
                    }
                    if (known && value.isValue() &&
                        !isSubtype(table_, value.type, targetType)) {
                        error("BAS-ASSIGN-TYPE",
                              "cannot assign a value of type " + typeName(value.type) + " to '" +
                                  node.target + "' of type " + typeName(targetType),
                              s.span);
                    }
                } else if constexpr (std::is_same_v<T, ExprStmt>) {
                    typeOf(env, node.expr);
                } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                    if (!env.returnType) {
                        if (node.value) {
                            error("BAS-RETURN-TYPE",
                                  "this function does not declare a return type", s.span);
                        }
                        return;
                    }
                    if (!node.value) {
                        error("BAS-RETURN-TYPE", "missing return value", s.span);
                        return;
                    }
                    ExprTyping value = typeOf(env, *node.value);
                    if (value.kind == ExprTyping::Kind::Unit) {
                        error("BAS-NO-VALUE", "expression yields no value", node.value->span);
                    }
                    if (value.isValue() && !isSubtype(table_, value.type, *env.returnType)) {
                        error("BAS-RETURN-TYPE",
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
            error("BAS-COND-NOT-BOOL",
                  std::string(what) + " must be bool, got " + typeName(typing.type), cond.span);
        }
        if (typing.kind == ExprTyping::Kind::Unit) {
            error("BAS-COND-NOT-BOOL", std::string(what) + " must be bool, got no value",
                  cond.span);
        }
    }

    ExprTyping typeOf(TypeEnv& env, const Expr& e) {
        return baselineTypeOf(table_, env, e, diags_);
    }
};

} // namespace

ExprTyping baselineTypeOf(const ContractTable& t, TypeEnv& env, const Expr& e,
                          std::vector<Diagnostic>& sink) {
    auto error = [&sink](std::string code, std::string message, const SourceSpan& span) {
        sink.push_back(makeError(std::move(code), std::move(message), span));
        return ExprTyping::error();
    };
    auto value = [&t, &env, &sink](const Expr& sub) {
        return baselineTypeOf(t, env, sub, sink);
    };
    auto asValue = [&](const ExprTyping& typing, const Expr& at) {
        if (typing.kind == ExprTyping::Kind::Unit)
            return error("BAS-NO-VALUE", "expression yields no value", at.span);
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
                // "Address literals can be implicitly converted to address payable."
                return ExprTyping::value(TypeRepr::payableAddress());
            } else if constexpr (std::is_same_v<T, VarRef>) {
                if (const TypeRepr* local = env.lookupLocal(node.name))
                    return ExprTyping::value(*local);
                const ResolvedContract& rc = t.get(env.contractName);
                auto field = rc.fieldsByName.find(node.name);
                if (field != rc.fieldsByName.end())
                    return ExprTyping::value(legacyView(t, field->second->type));
                return error("BAS-UNKNOWN-VAR", "undeclared identifier '" + node.name + "'",
                             e.span);
            } else if constexpr (std::is_same_v<T, ThisRef>) {
                return ExprTyping::value(TypeRepr::contract(env.contractName));
            } else if constexpr (std::is_same_v<T, MsgSenderRef>) {
                // The 0.5 rule: msg.sender is an address payable, whoever calls.
                return ExprTyping::value(TypeRepr::payableAddress());
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
                    return error("BAS-CALL-RECEIVER",
                                 "call receiver must have a contract type, got " +
                                     typeName(recv.type),
                                 node.receiver->span);
                }
                const ResolvedContract& rc = t.get(recv.type.contractName);
                auto fn = rc.functions.find(node.function);
                if (fn == rc.functions.end()) {
                    for (const auto& a : node.args) value(a);
                    return error("BAS-UNKNOWN-MEMBER",
                                 "contract '" + rc.name + "' has no function '" +
                                     node.function + "'",
                                 e.span);
                }
                const FunctionDecl& decl = *fn->second.decl;
                if (decl.visibility == Visibility::Private &&
                    !std::holds_alternative<ThisRef>(node.receiver->node)) {
                    error("BAS-VISIBILITY",
                          "'" + node.function + "' is private and callable only through 'this'",
                          e.span);
                }
                if (node.args.size() != decl.params.size()) {
                    for (const auto& a : node.args) value(a);
                    return error("BAS-ARITY",
                                 "function '" + node.function + "' takes " +
                                     std::to_string(decl.params.size()) + " argument(s), got " +
                                     std::to_string(node.args.size()),
                                 e.span);
                }
                for (size_t i = 0; i < node.args.size(); ++i) {
                    ExprTyping arg = asValue(value(node.args[i]), node.args[i]);
                    if (!arg.isValue()) continue;
                    TypeRepr param = legacyView(t, decl.params[i].type);
                    // External signatures use plain address for both flavors,
                    // so payable-ness of arguments is not checked.
                    if (decl.visibility == Visibility::External &&
                        param.kind == TypeKind::PayableAddress) {
                        param = TypeRepr::bareAddress();
                    }
                    if (!isSubtype(t, arg.type, param)) {
                        error("BAS-ARG-TYPE",
                              "argument " + std::to_string(i + 1) + " to '" + node.function +
                                  "' has type " + typeName(arg.type) + ", expected " +
                                  typeName(param),
                              node.args[i].span);
                    }
                }
                if (decl.returnType)
                    return ExprTyping::value(legacyView(t, *decl.returnType));
                return ExprTyping::unit();
            } else if constexpr (std::is_same_v<T, TransferExpr>) {
                ExprTyping recv = asValue(value(*node.receiver), *node.receiver);
                if (recv.isValue() && recv.type.kind != TypeKind::PayableAddress) {
                    error("BAS-TRANSFER-NONPAYABLE",
                          "'transfer' requires a receiver of type address payable, got " +
                              typeName(recv.type),
                          e.span);
                }
                ExprTyping amount = asValue(value(*node.amount), *node.amount);
                if (amount.isValue() && amount.type.kind != TypeKind::UInt) {
                    error("BAS-ARG-TYPE",
                          "transfer amount must be uint, got " + typeName(amount.type),
                          node.amount->span);
                }
                return ExprTyping::unit();
            } else if constexpr (std::is_same_v<T, BalanceExpr>) {
                ExprTyping recv = asValue(value(*node.receiver), *node.receiver);
                if (recv.isValue() && !recv.type.isAddressLike() &&
                    recv.type.kind != TypeKind::Contract) {
                    return error("BAS-BALANCE-RECEIVER",
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
                    if (node.contractName == kTopName || node.contractName == kTopFbName) {
                        return error("BAS-REFINED-SYNTAX",
                                     "the contract '" + node.contractName +
                                         "' belongs to the refined system",
                                     e.span);
                    }
                    if (!t.contains(node.contractName)) {
                        return error("BAS-UNKNOWN-TYPE",
                                     "unknown contract '" + node.contractName + "' in cast",
                                     e.span);
                    }
                    // Neither static nor dynamic checks on address-to-contract
                    // casts; any address or contract operand is accepted.
                    if (operand.type.kind == TypeKind::BareAddress ||
                        operand.type.kind == TypeKind::PayableAddress ||
                        operand.type.kind == TypeKind::Contract) {
                        return ExprTyping::value(TypeRepr::contract(node.contractName));
                    }
                    return error("BAS-BAD-CAST",
                                 "cannot cast " + typeName(operand.type) + " to contract " +
                                     node.contractName,
                                 e.span);
                }
                case CastKind::ToUInt160:
                    if (operand.type.kind == TypeKind::BareAddress ||
                        operand.type.kind == TypeKind::PayableAddress ||
                        operand.type.kind == TypeKind::UInt) {
                        return ExprTyping::value(TypeRepr::uint160Type());
                    }
                    return error("BAS-BAD-CAST",
                                 "cannot cast " + typeName(operand.type) + " to uint160",
                                 e.span);
                case CastKind::ToAddress:
                    // The laundering step: uint160 comes back payable.
                    if (operand.type.kind == TypeKind::UInt160)
                        return ExprTyping::value(TypeRepr::payableAddress());
                    if (operand.type.kind == TypeKind::Contract)
                        return ExprTyping::value(TypeRepr::bareAddress());
                    if (operand.type.kind == TypeKind::BareAddress ||
                        operand.type.kind == TypeKind::PayableAddress)
                        return ExprTyping::value(operand.type);
                    return error("BAS-BAD-CAST",
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
                    return error("BAS-BINOP-TYPE",
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
                    return error("BAS-BINOP-TYPE",
                                 std::string("operator '") + binaryOpToken(node.op) +
                                     "' requires uint operands, got " + typeName(lhs.type) +
                                     " and " + typeName(rhs.type),
                                 e.span);
                case BinaryOp::Eq:
                case BinaryOp::Ne:
                    if (comparableForEquality(lhs.type, rhs.type))
                        return ExprTyping::value(TypeRepr::boolType());
                    return error("BAS-BINOP-TYPE",
                                 "cannot compare " + typeName(lhs.type) + " and " +
                                     typeName(rhs.type),
                                 e.span);
                case BinaryOp::And:
                case BinaryOp::Or:
                    if (lhs.type.kind == TypeKind::Bool && rhs.type.kind == TypeKind::Bool)
                        return ExprTyping::value(TypeRepr::boolType());
                    return error("BAS-BINOP-TYPE",
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
                    return error("BAS-BINOP-TYPE",
                                 "operator '!' requires a bool operand, got " +
                                     typeName(operand.type),
                                 e.span);
                }
                return ExprTyping::value(TypeRepr::boolType());
            }
        },
        e.node);
}

std::vector<Diagnostic> checkBaseline(const Program& p, const ContractTable& t) {
    return BaselineChecker(p, t).run();
}

} // namespace fsol
