// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FSOL_AST_HPP
#define FSOL_AST_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fsol/diagnostics.hpp"
#include "fsol/numeric.hpp"

namespace fsol {

// Names of the two synthetic contracts topping the hierarchy. Users may not
// declare or inherit from them; hierarchy resolution adds them to the table.
inline constexpr const char* kTopName = "Top";
inline constexpr const char* kTopFbName = "Top_fb";

enum class TypeKind {
    UInt,
    UInt160,
    Bool,
    BareAddress,
    PayableAddress,
    RefAddress, // address<C>
    Contract,   // C
};

struct TypeRepr {
    TypeKind kind = TypeKind::UInt;
    std::string contractName; // RefAddress and Contract only

    static TypeRepr uintType() { return {TypeKind::UInt, {}}; }
    static TypeRepr uint160Type() { return {TypeKind::UInt160, {}}; }
    static TypeRepr boolType() { return {TypeKind::Bool, {}}; }
    static TypeRepr bareAddress() { return {TypeKind::BareAddress, {}}; }
    static TypeRepr payableAddress() { return {TypeKind::PayableAddress, {}}; }
    static TypeRepr refAddress(std::string name) {
        return {TypeKind::RefAddress, std::move(name)};
    }
    static TypeRepr contract(std::string name) {
        return {TypeKind::Contract, std::move(name)};
    }

    bool operator==(const TypeRepr&) const = default;

    bool isAddressLike() const {
        return kind == TypeKind::BareAddress || kind == TypeKind::PayableAddress ||
               kind == TypeKind::RefAddress;
    }
};

// Source-syntax spelling, used in diagnostics and by the pretty-printer.
std::string typeName(const TypeRepr& t);

enum class BinaryOp { Add, Sub, Mul, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

const char* binaryOpToken(BinaryOp op);

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct IntLit {
    U256 value;
};
struct BoolLit {
    bool value = false;
};
struct AddrLit {
    Address value;
};
struct VarRef {
    std::string name;
};
struct ThisRef {};
struct MsgSenderRef {};
struct MsgValueRef {};
struct CallExpr {
    ExprPtr receiver;
    std::string function;
    std::vector<Expr> args;
};
struct TransferExpr {
    ExprPtr receiver;
    ExprPtr amount;
};
struct BalanceExpr {
    ExprPtr receiver;
};

enum class CastKind { ToAddress, ToUInt160, ToContract };

struct CastExpr {
    CastKind kind = CastKind::ToAddress;
    std::string contractName; // ToContract only
    ExprPtr operand;
};
struct BinaryExpr {
    BinaryOp op = BinaryOp::Add;
    ExprPtr lhs;
    ExprPtr rhs;
};
struct NotExpr {
    ExprPtr operand;
};

struct Expr {
    SourceSpan span;
    std::variant<IntLit, BoolLit, AddrLit, VarRef, ThisRef, MsgSenderRef, MsgValueRef,
                 CallExpr, TransferExpr, BalanceExpr, CastExpr, BinaryExpr, NotExpr>
        node;

    template <typename T> bool is() const { return std::holds_alternative<T>(node); }
    template <typename T> const T& as() const { return std::get<T>(node); }
    template <typename T> T& as() { return std::get<T>(node); }
};

Expr makeExpr(SourceSpan span, decltype(Expr::node) node);

struct Stmt;

struct LocalDeclStmt {
    TypeRepr type;
    std::string name;
    Expr init;
};
struct AssignStmt {
    std::string target;
    Expr value;
};
struct ExprStmt {
    Expr expr;
};
struct ReturnStmt {
    std::optional<Expr> value;
};
struct RequireStmt {
    Expr condition;
};
struct IfStmt {
    Expr condition;
    std::vector<Stmt> thenBody;
    std::optional<std::vector<Stmt>> elseBody;
};

struct Stmt {
    SourceSpan span;
    std::variant<LocalDeclStmt, AssignStmt, ExprStmt, ReturnStmt, RequireStmt, IfStmt> node;

    template <typename T> bool is() const { return std::holds_alternative<T>(node); }
    template <typename T> const T& as() const { return std::get<T>(node); }
    template <typename T> T& as() { return std::get<T>(node); }
};

struct Param {
    TypeRepr type;
    std::string name;
    SourceSpan span;
};

struct CallerAnnotation {
    enum class Kind {
        Default, // unannotated, bound = Top
        Payback, // sugar for bound = Top_fb
        Named,   // <Ident>
    };
    Kind kind = Kind::Default;
    std::string name; // Named only
    SourceSpan span;  // empty for Default

    // The contract name this annotation constrains callers to.
    std::string boundName() const;
};

enum class Visibility { External, Public, Private };

const char* visibilityKeyword(Visibility v);

struct FunctionDecl {
    std::string name;
    std::vector<Param> params;
    CallerAnnotation callerAnn;
    Visibility visibility = Visibility::External;
    bool payable = false;
    std::optional<TypeRepr> returnType;
    std::vector<Stmt> body;
    SourceSpan span;
    SourceSpan nameSpan;
};

struct ConstructorDecl {
    std::vector<Param> params;
    bool payable = false;
    std::vector<Stmt> body;
    SourceSpan span;
};

// Fallbacks are implicitly payable and take no parameters.
struct FallbackDecl {
    std::vector<Stmt> body;
    SourceSpan span;
};

struct StateVarDecl {
    TypeRepr type;
    std::string name;
    SourceSpan span;
};

struct ContractDecl {
    std::string name;
    std::optional<std::string> parent;
    std::vector<StateVarDecl> stateVars;
    std::optional<ConstructorDecl> ctor;
    std::vector<FunctionDecl> functions;
    std::optional<FallbackDecl> fallback;
    SourceSpan span;
    SourceSpan nameSpan;
    SourceSpan parentSpan;
};

struct Program {
    std::vector<ContractDecl> contracts;
};

// The AST is move-only (unique_ptr children); copying is explicit.
Expr cloneExpr(const Expr& e);
Stmt cloneStmt(const Stmt& s);
std::vector<Stmt> cloneBlock(const std::vector<Stmt>& body);
FunctionDecl cloneFunction(const FunctionDecl& f);
ContractDecl cloneContract(const ContractDecl& c);
Program cloneProgram(const Program& p);

// Structural equality ignoring every SourceSpan. Annotation spellings are
// distinguished (`payback` is not equal to `<Top_fb>`), so a round-trip
// through the pretty-printer is exact.
bool equalModuloSpans(const Expr& a, const Expr& b);
bool equalModuloSpans(const Stmt& a, const Stmt& b);
bool equalModuloSpans(const Program& a, const Program& b);

// Pre-order visit of every expression node, including subexpressions.
void forEachExpr(const Expr& e, const std::function<void(const Expr&)>& fn);
void forEachExpr(const std::vector<Stmt>& body, const std::function<void(const Expr&)>& fn);
void forEachExpr(const Program& p, const std::function<void(const Expr&)>& fn);

} // namespace fsol

#endif
