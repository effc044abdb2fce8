// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "fsol/ast.hpp"

namespace fsol {

std::string typeName(const TypeRepr& t) {
    switch (t.kind) {
    case TypeKind::UInt: return "uint";
    case TypeKind::UInt160: return "uint160";
    case TypeKind::Bool: return "bool";
    case TypeKind::BareAddress: return "address";
    case TypeKind::PayableAddress: return "address payable";
    case TypeKind::RefAddress: return "address<" + t.contractName + ">";
    case TypeKind::Contract: return t.contractName;
    }
    return "?";
}

const char* binaryOpToken(BinaryOp op) {
    switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
    }
    return "?";
}

const char* visibilityKeyword(Visibility v) {
    switch (v) {
    case Visibility::External: return "external";
    case Visibility::Public: return "public";
    case Visibility::Private: return "private";
    }
    return "?";
}

std::string CallerAnnotation::boundName() const {
    switch (kind) {
    case Kind::Default: return kTopName;
    case Kind::Payback: return kTopFbName;
    case Kind::Named: return name;
    }
    return kTopName;
}

Expr makeExpr(SourceSpan span, decltype(Expr::node) node) {
    Expr e;
    e.span = std::move(span);
    e.node = std::move(node);
    return e;
}

namespace {

ExprPtr clonePtr(const ExprPtr& p) {
    if (!p) return nullptr;
    return std::make_unique<Expr>(cloneExpr(*p));
}

std::optional<std::vector<Stmt>> cloneOptBlock(const std::optional<std::vector<Stmt>>& b) {
    if (!b) return std::nullopt;
    return cloneBlock(*b);
}

} // namespace

Expr cloneExpr(const Expr& e) {
    Expr out;
    out.span = e.span;
    std::visit(
        [&out](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, IntLit> || std::is_same_v<T, BoolLit> ||
                          std::is_same_v<T, AddrLit> || std::is_same_v<T, VarRef> ||
                          std::is_same_v<T, ThisRef> || std::is_same_v<T, MsgSenderRef> ||
                          std::is_same_v<T, MsgValueRef>) {
                out.node = node;
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                CallExpr c;
                c.receiver = clonePtr(node.receiver);
                c.function = node.function;
                for (const auto& a : node.args) c.args.push_back(cloneExpr(a));
                out.node = std::move(c);
            } else if constexpr (std::is_same_v<T, TransferExpr>) {
                out.node = TransferExpr{clonePtr(node.receiver), clonePtr(node.amount)};
            } else if constexpr (std::is_same_v<T, BalanceExpr>) {
                out.node = BalanceExpr{clonePtr(node.receiver)};
            } else if constexpr (std::is_same_v<T, CastExpr>) {
                out.node = CastExpr{node.kind, node.contractName, clonePtr(node.operand)};
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                out.node = BinaryExpr{node.op, clonePtr(node.lhs), clonePtr(node.rhs)};
            } else if constexpr (std::is_same_v<T, NotExpr>) {
                out.node = NotExpr{clonePtr(node.operand)};
            }
        },
        e.node);
    return out;
}

Stmt cloneStmt(const Stmt& s) {
    Stmt out;
    out.span = s.span;
    std::visit(
        [&out](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, LocalDeclStmt>) {
                out.node = LocalDeclStmt{node.type, node.name, cloneExpr(node.init)};
            } else if constexpr (std::is_same_v<T, AssignStmt>) {
                out.node = AssignStmt{node.target, cloneExpr(node.value)};
            } else if constexpr (std::is_same_v<T, ExprStmt>) {
                out.node = ExprStmt{cloneExpr(node.expr)};
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                ReturnStmt r;
                if (node.value) r.value = cloneExpr(*node.value);
                out.node = std::move(r);
            } else if constexpr (std::is_same_v<T, RequireStmt>) {
                out.node = RequireStmt{cloneExpr(node.condition)};
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                out.node = IfStmt{cloneExpr(node.condition), cloneBlock(node.thenBody),
                                  cloneOptBlock(node.elseBody)};
            }
        },
        s.node);
    return out;
}

std::vector<Stmt> cloneBlock(const std::vector<Stmt>& body) {
    std::vector<Stmt> out;
    out.reserve(body.size());
    for (const auto& s : body) out.push_back(cloneStmt(s));
    return out;
}

FunctionDecl cloneFunction(const FunctionDecl& f) {
    FunctionDecl out;
    out.name = f.name;
    out.params = f.params;
    out.callerAnn = f.callerAnn;
    out.visibility = f.visibility;
    out.payable = f.payable;
    out.returnType = f.returnType;
    out.body = cloneBlock(f.body);
    out.span = f.span;
    out.nameSpan = f.nameSpan;
    return out;
}

ContractDecl cloneContract(const ContractDecl& c) {
    ContractDecl out;
    out.name = c.name;
    out.parent = c.parent;
    out.stateVars = c.stateVars;
    if (c.ctor) {
        ConstructorDecl ctor;
        ctor.params = c.ctor->params;
        ctor.payable = c.ctor->payable;
        ctor.body = cloneBlock(c.ctor->body);
        ctor.span = c.ctor->span;
        out.ctor = std::move(ctor);
    }
    for (const auto& f : c.functions) out.functions.push_back(cloneFunction(f));
    if (c.fallback) {
        FallbackDecl fb;
        fb.body = cloneBlock(c.fallback->body);
        fb.span = c.fallback->span;
        out.fallback = std::move(fb);
    }
    out.span = c.span;
    out.nameSpan = c.nameSpan;
    out.parentSpan = c.parentSpan;
    return out;
}

Program cloneProgram(const Program& p) {
    Program out;
    out.contracts.reserve(p.contracts.size());
    for (const auto& c : p.contracts) out.contracts.push_back(cloneContract(c));
    return out;
}

namespace {

bool equalPtr(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    return equalModuloSpans(*a, *b);
}

bool equalBlock(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!equalModuloSpans(a[i], b[i])) return false;
    return true;
}

bool equalParams(const std::vector<Param>& a, const std::vector<Param>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].type != b[i].type || a[i].name != b[i].name) return false;
    return true;
}

} // namespace

bool equalModuloSpans(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&b](const auto& na) -> bool {
            using T = std::decay_t<decltype(na)>;
            const T& nb = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, IntLit>) {
                return na.value == nb.value;
            } else if constexpr (std::is_same_v<T, BoolLit>) {
                return na.value == nb.value;
            } else if constexpr (std::is_same_v<T, AddrLit>) {
                return na.value == nb.value;
            } else if constexpr (std::is_same_v<T, VarRef>) {
                return na.name == nb.name;
            } else if constexpr (std::is_same_v<T, ThisRef> ||
                                 std::is_same_v<T, MsgSenderRef> ||
                                 std::is_same_v<T, MsgValueRef>) {
                return true;
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                if (na.function != nb.function || na.args.size() != nb.args.size()) return false;
                if (!equalPtr(na.receiver, nb.receiver)) return false;
                for (size_t i = 0; i < na.args.size(); ++i)
                    if (!equalModuloSpans(na.args[i], nb.args[i])) return false;
                return true;
            } else if constexpr (std::is_same_v<T, TransferExpr>) {
                return equalPtr(na.receiver, nb.receiver) && equalPtr(na.amount, nb.amount);
            } else if constexpr (std::is_same_v<T, BalanceExpr>) {
                return equalPtr(na.receiver, nb.receiver);
            } else if constexpr (std::is_same_v<T, CastExpr>) {
                return na.kind == nb.kind && na.contractName == nb.contractName &&
                       equalPtr(na.operand, nb.operand);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                return na.op == nb.op && equalPtr(na.lhs, nb.lhs) && equalPtr(na.rhs, nb.rhs);
            } else if constexpr (std::is_same_v<T, NotExpr>) {
                return equalPtr(na.operand, nb.operand);
            }
        },
        a.node);
}

bool equalModuloSpans(const Stmt& a, const Stmt& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&b](const auto& na) -> bool {
            using T = std::decay_t<decltype(na)>;
            const T& nb = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, LocalDeclStmt>) {
                return na.type == nb.type && na.name == nb.name &&
                       equalModuloSpans(na.init, nb.init);
            } else if constexpr (std::is_same_v<T, AssignStmt>) {
                return na.target == nb.target && equalModuloSpans(na.value, nb.value);
            } else if constexpr (std::is_same_v<T, ExprStmt>) {
                return equalModuloSpans(na.expr, nb.expr);
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                if (na.value.has_value() != nb.value.has_value()) return false;
                return !na.value || equalModuloSpans(*na.value, *nb.value);
            } else if constexpr (std::is_same_v<T, RequireStmt>) {
                return equalModuloSpans(na.condition, nb.condition);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                if (!equalModuloSpans(na.condition, nb.condition)) return false;
                if (!equalBlock(na.thenBody, nb.thenBody)) return false;
                if (na.elseBody.has_value() != nb.elseBody.has_value()) return false;
                return !na.elseBody || equalBlock(*na.elseBody, *nb.elseBody);
            }
        },
        a.node);
}

bool equalModuloSpans(const Program& a, const Program& b) {
    if (a.contracts.size() != b.contracts.size()) return false;
    for (size_t i = 0; i < a.contracts.size(); ++i) {
        const ContractDecl& ca = a.contracts[i];
        const ContractDecl& cb = b.contracts[i];
        if (ca.name != cb.name || ca.parent != cb.parent) return false;
        if (ca.stateVars.size() != cb.stateVars.size()) return false;
        for (size_t j = 0; j < ca.stateVars.size(); ++j) {
            if (ca.stateVars[j].type != cb.stateVars[j].type ||
                ca.stateVars[j].name != cb.stateVars[j].name)
                return false;
        }
        if (ca.ctor.has_value() != cb.ctor.has_value()) return false;
        if (ca.ctor) {
            if (!equalParams(ca.ctor->params, cb.ctor->params)) return false;
            if (ca.ctor->payable != cb.ctor->payable) return false;
            if (!equalBlock(ca.ctor->body, cb.ctor->body)) return false;
        }
        if (ca.functions.size() != cb.functions.size()) return false;
        for (size_t j = 0; j < ca.functions.size(); ++j) {
            const FunctionDecl& fa = ca.functions[j];
            const FunctionDecl& fb = cb.functions[j];
            if (fa.name != fb.name || !equalParams(fa.params, fb.params)) return false;
            if (fa.callerAnn.kind != fb.callerAnn.kind || fa.callerAnn.name != fb.callerAnn.name)
                return false;
            if (fa.visibility != fb.visibility || fa.payable != fb.payable) return false;
            if (fa.returnType != fb.returnType) return false;
            if (!equalBlock(fa.body, fb.body)) return false;
        }
        if (ca.fallback.has_value() != cb.fallback.has_value()) return false;
        if (ca.fallback && !equalBlock(ca.fallback->body, cb.fallback->body)) return false;
    }
    return true;
}

void forEachExpr(const Expr& e, const std::function<void(const Expr&)>& fn) {
    fn(e);
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, CallExpr>) {
                forEachExpr(*node.receiver, fn);
                for (const auto& a : node.args) forEachExpr(a, fn);
            } else if constexpr (std::is_same_v<T, TransferExpr>) {
                forEachExpr(*node.receiver, fn);
                forEachExpr(*node.amount, fn);
            } else if constexpr (std::is_same_v<T, BalanceExpr>) {
                forEachExpr(*node.receiver, fn);
            } else if constexpr (std::is_same_v<T, CastExpr>) {
                forEachExpr(*node.operand, fn);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                forEachExpr(*node.lhs, fn);
                forEachExpr(*node.rhs, fn);
            } else if constexpr (std::is_same_v<T, NotExpr>) {
                forEachExpr(*node.operand, fn);
            }
        },
        e.node);
}

void forEachExpr(const std::vector<Stmt>& body, const std::function<void(const Expr&)>& fn) {
    for (const auto& s : body) {
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, LocalDeclStmt>) {
                    forEachExpr(node.init, fn);
                } else if constexpr (std::is_same_v<T, AssignStmt>) {
                    forEachExpr(node.value, fn);
                } else if constexpr (std::is_same_v<T, ExprStmt>) {
                    forEachExpr(node.expr, fn);
                } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                    if (node.value) forEachExpr(*node.value, fn);
                } else if constexpr (std::is_same_v<T, RequireStmt>) {
                    forEachExpr(node.condition, fn);
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    forEachExpr(node.condition, fn);
                    forEachExpr(node.thenBody, fn);
                    if (node.elseBody) forEachExpr(*node.elseBody, fn);
                }
            },
            s.node);
    }
}

void forEachExpr(const Program& p, const std::function<void(const Expr&)>& fn) {
    for (const auto& c : p.contracts) {
        if (c.ctor) forEachExpr(c.ctor->body, fn);
        for (const auto& f : c.functions) forEachExpr(f.body, fn);
        if (c.fallback) forEachExpr(c.fallback->body, fn);
    }
}

} // namespace fsol
