// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "fsol/pretty.hpp"

#include <sstream>

namespace fsol {

namespace {

// Higher binds tighter. Postfix chains (calls, transfer, balance) sit between
// unary and atoms; casts print as head(operand) and never need outer parens.
int precedenceOf(const Expr& e) {
    return std::visit(
        [](const auto& node) -> int {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, BinaryExpr>) {
                switch (node.op) {
                case BinaryOp::Or: return 1;
                case BinaryOp::And: return 2;
                case BinaryOp::Eq:
                case BinaryOp::Ne: return 3;
                case BinaryOp::Lt:
                case BinaryOp::Le:
                case BinaryOp::Gt:
                case BinaryOp::Ge: return 4;
                case BinaryOp::Add:
                case BinaryOp::Sub: return 5;
                case BinaryOp::Mul: return 6;
                }
                return 1;
            } else if constexpr (std::is_same_v<T, NotExpr>) {
                return 7;
            } else if constexpr (std::is_same_v<T, CallExpr> ||
                                 std::is_same_v<T, TransferExpr> ||
                                 std::is_same_v<T, BalanceExpr>) {
                return 8;
            } else {
                return 9;
            }
        },
        e.node);
}

void writeExpr(std::ostringstream& out, const Expr& e);

void writeChild(std::ostringstream& out, const Expr& child, int minPrec) {
    if (precedenceOf(child) < minPrec) {
        out << "(";
        writeExpr(out, child);
        out << ")";
    } else {
        writeExpr(out, child);
    }
}

void writeExpr(std::ostringstream& out, const Expr& e) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, IntLit>) {
                out << formatU256(node.value);
            } else if constexpr (std::is_same_v<T, BoolLit>) {
                out << (node.value ? "true" : "false");
            } else if constexpr (std::is_same_v<T, AddrLit>) {
                out << node.value.toHex();
            } else if constexpr (std::is_same_v<T, VarRef>) {
                out << node.name;
            } else if constexpr (std::is_same_v<T, ThisRef>) {
                out << "this";
            } else if constexpr (std::is_same_v<T, MsgSenderRef>) {
                out << "msg.sender";
            } else if constexpr (std::is_same_v<T, MsgValueRef>) {
                out << "msg.value";
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                writeChild(out, *node.receiver, 8);
                out << "." << node.function << "(";
                for (size_t i = 0; i < node.args.size(); ++i) {
                    if (i > 0) out << ", ";
                    writeExpr(out, node.args[i]);
                }
                out << ")";
            } else if constexpr (std::is_same_v<T, TransferExpr>) {
                writeChild(out, *node.receiver, 8);
                out << ".transfer(";
                writeExpr(out, *node.amount);
                out << ")";
            } else if constexpr (std::is_same_v<T, BalanceExpr>) {
                writeChild(out, *node.receiver, 8);
                out << ".balance";
            } else if constexpr (std::is_same_v<T, CastExpr>) {
                switch (node.kind) {
                case CastKind::ToAddress: out << "address"; break;
                case CastKind::ToUInt160: out << "uint160"; break;
                case CastKind::ToContract: out << node.contractName; break;
                }
                out << "(";
                writeExpr(out, *node.operand);
                out << ")";
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                int prec = precedenceOf(e);
                writeChild(out, *node.lhs, prec);
                out << " " << binaryOpToken(node.op) << " ";
                writeChild(out, *node.rhs, prec + 1); // left-associative
            } else if constexpr (std::is_same_v<T, NotExpr>) {
                out << "!";
                writeChild(out, *node.operand, 7);
            }
        },
        e.node);
}

void writeIndent(std::ostringstream& out, int indent) {
    for (int i = 0; i < indent; ++i) out << "    ";
}

void writeBlock(std::ostringstream& out, const std::vector<Stmt>& body, int indent);

void writeStmt(std::ostringstream& out, const Stmt& s, int indent) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            writeIndent(out, indent);
            if constexpr (std::is_same_v<T, LocalDeclStmt>) {
                out << typeName(node.type) << " " << node.name << " = ";
                writeExpr(out, node.init);
                out << ";\n";
            } else if constexpr (std::is_same_v<T, AssignStmt>) {
                out << node.target << " = ";
                writeExpr(out, node.value);
                out << ";\n";
            } else if constexpr (std::is_same_v<T, ExprStmt>) {
                writeExpr(out, node.expr);
                out << ";\n";
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                out << "return";
                if (node.value) {
                    out << " ";
                    writeExpr(out, *node.value);
                }
                out << ";\n";
            } else if constexpr (std::is_same_v<T, RequireStmt>) {
                out << "require(";
                writeExpr(out, node.condition);
                out << ");\n";
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                out << "if (";
                writeExpr(out, node.condition);
                out << ") {\n";
                writeBlock(out, node.thenBody, indent + 1);
                writeIndent(out, indent);
                out << "}";
                if (node.elseBody) {
                    out << " else {\n";
                    writeBlock(out, *node.elseBody, indent + 1);
                    writeIndent(out, indent);
                    out << "}";
                }
                out << "\n";
            }
        },
        s.node);
}

void writeBlock(std::ostringstream& out, const std::vector<Stmt>& body, int indent) {
    for (const auto& s : body) writeStmt(out, s, indent);
}

void writeParams(std::ostringstream& out, const std::vector<Param>& params) {
    out << "(";
    for (size_t i = 0; i < params.size(); ++i) {
        if (i > 0) out << ", ";
        out << typeName(params[i].type) << " " << params[i].name;
    }
    out << ")";
}

void writeBody(std::ostringstream& out, const std::vector<Stmt>& body, int indent) {
    out << " {\n";
    writeBlock(out, body, indent + 1);
    writeIndent(out, indent);
    out << "}\n";
}

void writeContract(std::ostringstream& out, const ContractDecl& c) {
    out << "contract " << c.name;
    if (c.parent) out << " is " << *c.parent;
    out << " {";
    bool anyMember = false;
    auto separator = [&] {
        out << "\n";
        anyMember = true;
    };
    for (const auto& var : c.stateVars) {
        separator();
        writeIndent(out, 1);
        out << typeName(var.type) << " " << var.name << ";\n";
    }
    if (c.ctor) {
        separator();
        writeIndent(out, 1);
        out << "constructor";
        writeParams(out, c.ctor->params);
        if (c.ctor->payable) out << " payable";
        writeBody(out, c.ctor->body, 1);
    }
    for (const auto& fn : c.functions) {
        separator();
        writeIndent(out, 1);
        out << "function " << fn.name;
        writeParams(out, fn.params);
        switch (fn.callerAnn.kind) {
        case CallerAnnotation::Kind::Default: break;
        case CallerAnnotation::Kind::Payback: out << " payback"; break;
        case CallerAnnotation::Kind::Named: out << " <" << fn.callerAnn.name << ">"; break;
        }
        out << " " << visibilityKeyword(fn.visibility);
        if (fn.payable) out << " payable";
        if (fn.returnType) out << " returns (" << typeName(*fn.returnType) << ")";
        writeBody(out, fn.body, 1);
    }
    if (c.fallback) {
        separator();
        writeIndent(out, 1);
        out << "function() external payable";
        writeBody(out, c.fallback->body, 1);
    }
    if (!anyMember) {
        out << "\n}\n";
    } else {
        out << "}\n";
    }
}

} // namespace

std::string prettyPrint(const Program& p) {
    std::ostringstream out;
    for (size_t i = 0; i < p.contracts.size(); ++i) {
        if (i > 0) out << "\n";
        writeContract(out, p.contracts[i]);
    }
    return out.str();
}

std::string printExpr(const Expr& e) {
    std::ostringstream out;
    writeExpr(out, e);
    return out.str();
}

std::string printStmt(const Stmt& s, int indent) {
    std::ostringstream out;
    writeStmt(out, s, indent);
    return out.str();
}

} // namespace fsol
