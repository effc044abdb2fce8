// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include <string>

#include "doctest.h"
#include "fsol/parser.hpp"
#include "fsol/pretty.hpp"

using namespace fsol;

namespace {

Program parseOk(const std::string& src) {
    ParseResult pr = parse(src, "test.fsol");
    CAPTURE(renderDiagnostics(pr.diagnostics));
    REQUIRE(!hasErrors(pr.diagnostics));
    return std::move(pr.program);
}

std::vector<Diagnostic> parseErrors(const std::string& src) {
    ParseResult pr = parse(src, "test.fsol");
    REQUIRE(hasErrors(pr.diagnostics));
    return pr.diagnostics;
}

} // namespace

TEST_CASE("empty program and empty contract") {
    Program p = parseOk("");
    CHECK(p.contracts.empty());

    p = parseOk("contract C {}");
    REQUIRE(p.contracts.size() == 1);
    CHECK(p.contracts[0].name == "C");
    CHECK(!p.contracts[0].parent);
    CHECK(p.contracts[0].stateVars.empty());
    CHECK(p.contracts[0].functions.empty());
    CHECK(!p.contracts[0].ctor);
    CHECK(!p.contracts[0].fallback);
}

TEST_CASE("inheritance clause") {
    Program p = parseOk("contract A {} contract B is A {}");
    REQUIRE(p.contracts.size() == 2);
    CHECK(!p.contracts[0].parent);
    REQUIRE(p.contracts[1].parent);
    CHECK(*p.contracts[1].parent == "A");
}

TEST_CASE("state variables of every type") {
    Program p = parseOk(R"(contract C {
        uint a;
        uint160 b;
        bool c;
        address d;
        address payable e;
        address<C> f;
        C g;
    })");
    const auto& vars = p.contracts[0].stateVars;
    REQUIRE(vars.size() == 7);
    CHECK(vars[0].type == TypeRepr::uintType());
    CHECK(vars[1].type == TypeRepr::uint160Type());
    CHECK(vars[2].type == TypeRepr::boolType());
    CHECK(vars[3].type == TypeRepr::bareAddress());
    CHECK(vars[4].type == TypeRepr::payableAddress());
    CHECK(vars[5].type == TypeRepr::refAddress("C"));
    CHECK(vars[6].type == TypeRepr::contract("C"));
    CHECK(vars[5].name == "f");
}

TEST_CASE("constructor, fallback, and function headers") {
    Program p = parseOk(R"(contract C {
        constructor(uint a, address payable b) payable { }
        function f() external { }
        function g(bool x) public payable returns (uint) { return 1; }
        function h() private returns (bool) { return true; }
        function() external payable { }
    })");
    const ContractDecl& c = p.contracts[0];
    REQUIRE(c.ctor);
    CHECK(c.ctor->payable);
    REQUIRE(c.ctor->params.size() == 2);
    CHECK(c.ctor->params[1].type == TypeRepr::payableAddress());
    REQUIRE(c.fallback);
    REQUIRE(c.functions.size() == 3);
    CHECK(c.functions[0].visibility == Visibility::External);
    CHECK(!c.functions[0].payable);
    CHECK(!c.functions[0].returnType);
    CHECK(c.functions[1].visibility == Visibility::Public);
    CHECK(c.functions[1].payable);
    REQUIRE(c.functions[1].returnType);
    CHECK(*c.functions[1].returnType == TypeRepr::uintType());
    CHECK(c.functions[2].visibility == Visibility::Private);
}

TEST_CASE("caller annotations sit between parameter list and visibility") {
    Program p = parseOk(R"(contract D {
        function plain() external { }
        function pb() payback external { }
        function nm() <D> public { }
    })");
    const auto& fns = p.contracts[0].functions;
    CHECK(fns[0].callerAnn.kind == CallerAnnotation::Kind::Default);
    CHECK(fns[1].callerAnn.kind == CallerAnnotation::Kind::Payback);
    CHECK(fns[2].callerAnn.kind == CallerAnnotation::Kind::Named);
    CHECK(fns[2].callerAnn.name == "D");
    CHECK(fns[0].callerAnn.boundName() == kTopName);
    CHECK(fns[1].callerAnn.boundName() == kTopFbName);
    CHECK(fns[2].callerAnn.boundName() == "D");
}

TEST_CASE("statements") {
    Program p = parseOk(R"(contract C {
        uint s;
        function f(uint n) external returns (uint) {
            uint x = 1 + 2 * 3;
            bool b = x < n;
            x = x - 1;
            s = x;
            require(b);
            if (b) { x = 0; } else { x = 1; }
            if (x == 0) { return x; }
            return n;
        }
    })");
    const auto& body = p.contracts[0].functions[0].body;
    REQUIRE(body.size() == 8);
    CHECK(body[0].is<LocalDeclStmt>());
    CHECK(body[1].is<LocalDeclStmt>());
    CHECK(body[2].is<AssignStmt>());
    CHECK(body[3].is<AssignStmt>());
    CHECK(body[4].is<RequireStmt>());
    CHECK(body[5].is<IfStmt>());
    REQUIRE(body[5].as<IfStmt>().elseBody);
    CHECK(!body[6].as<IfStmt>().elseBody);
    CHECK(body[7].is<ReturnStmt>());

    // precedence: 1 + 2 * 3 parses as 1 + (2 * 3)
    const Expr& init = body[0].as<LocalDeclStmt>().init;
    REQUIRE(init.is<BinaryExpr>());
    CHECK(init.as<BinaryExpr>().op == BinaryOp::Add);
    CHECK(init.as<BinaryExpr>().rhs->is<BinaryExpr>());
    CHECK(init.as<BinaryExpr>().rhs->as<BinaryExpr>().op == BinaryOp::Mul);
}

TEST_CASE("expressions") {
    Program p = parseOk(R"(contract C {
        function f() external payable {
            address a = address(this);
            uint160 n = uint160(a);
            address payable pa = address(n);
            C c = C(a);
            c.g(1, true);
            pa.transfer(msg.value);
            uint b = a.balance;
            bool t = !(1 >= 2) && msg.sender == pa || false;
        }
        function g(uint x, bool y) external { }
    })");
    const auto& body = p.contracts[0].functions[0].body;
    CHECK(body[0].as<LocalDeclStmt>().init.is<CastExpr>());
    CHECK(body[0].as<LocalDeclStmt>().init.as<CastExpr>().kind == CastKind::ToAddress);
    CHECK(body[1].as<LocalDeclStmt>().init.as<CastExpr>().kind == CastKind::ToUInt160);
    CHECK(body[2].as<LocalDeclStmt>().init.as<CastExpr>().kind == CastKind::ToAddress);
    const CastExpr& toC = body[3].as<LocalDeclStmt>().init.as<CastExpr>();
    CHECK(toC.kind == CastKind::ToContract);
    CHECK(toC.contractName == "C");
    const Expr& call = body[4].as<ExprStmt>().expr;
    REQUIRE(call.is<CallExpr>());
    CHECK(call.as<CallExpr>().function == "g");
    CHECK(call.as<CallExpr>().args.size() == 2);
    CHECK(body[5].as<ExprStmt>().expr.is<TransferExpr>());
    CHECK(body[6].as<LocalDeclStmt>().init.is<BalanceExpr>());
    // || binds looser than &&
    const Expr& logic = body[7].as<LocalDeclStmt>().init;
    REQUIRE(logic.is<BinaryExpr>());
    CHECK(logic.as<BinaryExpr>().op == BinaryOp::Or);
    CHECK(logic.as<BinaryExpr>().lhs->as<BinaryExpr>().op == BinaryOp::And);
}

TEST_CASE("address literals and msg keywords") {
    Program p = parseOk(R"(contract C {
        function f() external {
            address payable a = 0x00000000000000000000000000000000DeaDBeef;
            a.transfer(1);
        }
    })");
    const Expr& lit = p.contracts[0].functions[0].body[0].as<LocalDeclStmt>().init;
    REQUIRE(lit.is<AddrLit>());
    CHECK(lit.as<AddrLit>().value.toHex() == "0x00000000000000000000000000000000deadbeef");
}

TEST_CASE("decimal literals up to 2^256-1") {
    std::string max =
        "115792089237316195423570985008687907853269984665640564039457584007913129639935";
    Program p = parseOk("contract C { function f() external { uint x = " + max + "; } }");
    const Expr& lit = p.contracts[0].functions[0].body[0].as<LocalDeclStmt>().init;
    REQUIRE(lit.is<IntLit>());
    CHECK(formatU256(lit.as<IntLit>().value) == max);

    auto diags = parseErrors(
        "contract C { function f() external { uint x = " + max + "0; } }");
    CHECK(diags[0].code == "PAR-SYNTAX");
}

TEST_CASE("syntax errors carry positions and the parser recovers") {
    auto diags = parseErrors(R"(contract C {
        function f() external {
            uint x = ;
            uint y = 2;
        }
        function g() external {
            y 3;
        }
    })");
    CHECK(diags.size() >= 2);
    CHECK(diags[0].code == "PAR-SYNTAX");
    CHECK(diags[0].span.startLine == 3);
    // second error found after recovery
    bool second = false;
    for (const auto& d : diags)
        if (d.span.startLine >= 6) second = true;
    CHECK(second);
}

TEST_CASE("reserved words are not identifiers") {
    parseErrors("contract contract {}");
    parseErrors("contract C { uint require; }");
    parseErrors("contract C { function f() external { uint msg = 1; } }");
}

TEST_CASE("comments and whitespace") {
    Program p = parseOk("// leading\ncontract C { // trailing\n\t uint x; // note\n}\n// eof");
    REQUIRE(p.contracts.size() == 1);
    CHECK(p.contracts[0].stateVars.size() == 1);
    // block comments are not part of the language
    parseErrors("contract C { /* nope */ }");
}

TEST_CASE("spans are 1-based and point at the construct") {
    Program p = parseOk("contract C {\n    uint abc;\n}");
    const StateVarDecl& v = p.contracts[0].stateVars[0];
    CHECK(v.span.startLine == 2);
    CHECK(v.span.startColumn == 5);
    CHECK(p.contracts[0].nameSpan.startLine == 1);
}

TEST_CASE("fallback must be external payable with empty parameter list") {
    parseErrors("contract C { function() public payable { } }");
    parseErrors("contract C { function(uint x) external payable { } }");
}

TEST_CASE("clone and structural equality") {
    Program p = parseOk(R"(contract C {
        uint s;
        function f(uint n) payback external returns (uint) {
            if (n > 0) { s = n; } else { require(false); }
            return s + msg.value;
        }
    })");
    Program q = cloneProgram(p);
    CHECK(equalModuloSpans(p, q));
    q.contracts[0].functions[0].name = "other";
    CHECK(!equalModuloSpans(p, q));
}
