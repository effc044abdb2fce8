// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <string>

#include "doctest.h"
#include "fsol/contract_table.hpp"
#include "fsol/parser.hpp"

using namespace fsol;

namespace {

ResolveResult resolveSource(const std::string& src) {
    ParseResult pr = parse(src, "test.fsol");
    REQUIRE(!hasErrors(pr.diagnostics));
    static std::vector<Program> keepAlive; // tables borrow their program
    keepAlive.push_back(std::move(pr.program));
    return resolveHierarchy(keepAlive.back());
}

bool hasCode(const std::vector<Diagnostic>& diags, const std::string& code) {
    return std::any_of(diags.begin(), diags.end(),
                       [&](const Diagnostic& d) { return d.code == code; });
}

} // namespace

TEST_CASE("duplicate contract names are rejected") {
    auto rr = resolveSource("contract C {} contract C {}");
    CHECK(!rr.table);
    CHECK(hasCode(rr.diagnostics, "HIER-DUP-CONTRACT"));
}

TEST_CASE("unknown parent is rejected") {
    auto rr = resolveSource("contract C is Missing {}");
    CHECK(!rr.table);
    CHECK(hasCode(rr.diagnostics, "HIER-UNKNOWN-PARENT"));
}

TEST_CASE("inheritance cycles are rejected") {
    auto rr = resolveSource("contract A is B {} contract B is A {}");
    CHECK(!rr.table);
    CHECK(hasCode(rr.diagnostics, "HIER-CYCLE"));

    rr = resolveSource("contract A is A {}");
    CHECK(hasCode(rr.diagnostics, "HIER-CYCLE"));
}

TEST_CASE("the synthetic roots cannot be declared or named as parent") {
    CHECK(hasCode(resolveSource("contract Top {}").diagnostics, "HIER-RESERVED-NAME"));
    CHECK(hasCode(resolveSource("contract Top_fb {}").diagnostics, "HIER-RESERVED-NAME"));
    CHECK(hasCode(resolveSource("contract C is Top {}").diagnostics, "HIER-RESERVED-NAME"));
}

TEST_CASE("duplicate members and parameters are rejected") {
    CHECK(hasCode(resolveSource("contract C { uint x; bool x; }").diagnostics,
                  "HIER-DUP-MEMBER"));
    CHECK(hasCode(resolveSource(
                      "contract C { uint f; function f() external { } }")
                      .diagnostics,
                  "HIER-DUP-MEMBER"));
    CHECK(hasCode(resolveSource(
                      "contract C { function f(uint a, bool a) external { } }")
                      .diagnostics,
                  "HIER-DUP-PARAM"));
}

TEST_CASE("overriding an inherited member is rejected") {
    CHECK(hasCode(resolveSource(
                      "contract A { function f() external { } }"
                      "contract B is A { function f() external { } }")
                      .diagnostics,
                  "HIER-OVERRIDE"));
    CHECK(hasCode(resolveSource("contract A { uint x; } contract B is A { bool x; }")
                      .diagnostics,
                  "HIER-OVERRIDE"));
}

TEST_CASE("type references must name declared contracts") {
    CHECK(hasCode(resolveSource("contract C { Missing m; }").diagnostics,
                  "HIER-UNKNOWN-TYPE"));
    CHECK(hasCode(resolveSource("contract C { address<Missing> a; }").diagnostics,
                  "HIER-UNKNOWN-TYPE"));
    CHECK(hasCode(resolveSource(
                      "contract C { function f() external returns (Missing) { } }")
                      .diagnostics,
                  "HIER-UNKNOWN-TYPE"));
    // the synthetic roots resolve as types; which checker admits them is a
    // typing question, not a hierarchy one
    auto rr = resolveSource("contract C { address<Top> a; address<Top_fb> b; }");
    CHECK(!hasErrors(rr.diagnostics));
    CHECK(!hasErrors(resolveSource("contract C { Top t; }").diagnostics));
}

TEST_CASE("caller bounds must name declared contracts") {
    CHECK(hasCode(resolveSource("contract C { function f() <Missing> external { } }")
                      .diagnostics,
                  "HIER-UNKNOWN-CALLER-BOUND"));
    auto rr = resolveSource(
        "contract D {} contract C { function f() <D> external { } function g() payback external { } }");
    CHECK(!hasErrors(rr.diagnostics));
}

TEST_CASE("forward references resolve") {
    auto rr = resolveSource("contract C { D d; address<D> a; } contract D {}");
    REQUIRE(rr.table);
    CHECK(rr.table->contains("D"));
}

TEST_CASE("fields and functions are inherited in declaration order") {
    auto rr = resolveSource(R"(
        contract A { uint a1; function fa() external { } }
        contract B is A { uint b1; function fb() public { } }
        contract C is B { bool c1; }
    )");
    REQUIRE(rr.table);
    const ResolvedContract& c = rr.table->get("C");
    REQUIRE(c.fields.size() == 3);
    CHECK(c.fields[0]->name == "a1"); // ancestors first
    CHECK(c.fields[1]->name == "b1");
    CHECK(c.fields[2]->name == "c1");
    CHECK(c.fieldsByName.count("a1") == 1);
    REQUIRE(c.functions.count("fa") == 1);
    CHECK(c.functions.at("fa").owner == "A");
    CHECK(c.functions.at("fb").owner == "B");
    CHECK(c.functions.count("missing") == 0);
}

TEST_CASE("constructors are own-only, fallbacks inherit") {
    auto rr = resolveSource(R"(
        contract A { constructor() { } function() external payable { } }
        contract B is A { }
    )");
    REQUIRE(rr.table);
    CHECK(rr.table->get("A").constructorDecl != nullptr);
    CHECK(rr.table->get("B").constructorDecl == nullptr);
    CHECK(rr.table->get("B").fallbackDecl != nullptr); // nearest on the chain
    CHECK(rr.table->get("B").hasFallback);
}

TEST_CASE("find and get agree; contains covers synthetics") {
    auto rr = resolveSource("contract C {}");
    REQUIRE(rr.table);
    CHECK(rr.table->find("C") != nullptr);
    CHECK(rr.table->find("Nope") == nullptr);
    CHECK(rr.table->contains(kTopName));
    CHECK(rr.table->contains(kTopFbName));
    CHECK(&rr.table->get("C") == rr.table->find("C"));
}
