// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include <string>
#include <vector>

#include "doctest.h"
#include "fsol/contract_table.hpp"
#include "fsol/parser.hpp"

using namespace fsol;

namespace {

// A is fallback-less root; B adds a fallback; C inherits it; D is a second
// fallback-less root; E declares its own fallback.
const char* kHierarchy = R"(
contract A { }
contract B is A { function() external payable { } }
contract C is B { }
contract D { }
contract E is D { function() external payable { } }
)";

struct Fixture {
    Program program;
    ContractTable table;

    Fixture() {
        ParseResult pr = parse(kHierarchy, "hier.fsol");
        REQUIRE(!hasErrors(pr.diagnostics));
        program = std::move(pr.program);
        ResolveResult rr = resolveHierarchy(program);
        REQUIRE(!hasErrors(rr.diagnostics));
        REQUIRE(rr.table);
        table = std::move(*rr.table);
    }

    std::vector<TypeRepr> universe() const {
        std::vector<TypeRepr> types = {
            TypeRepr::uintType(),    TypeRepr::uint160Type(),    TypeRepr::boolType(),
            TypeRepr::bareAddress(), TypeRepr::payableAddress(),
        };
        for (const auto& name : table.names()) {
            types.push_back(TypeRepr::refAddress(name));
            types.push_back(TypeRepr::contract(name));
        }
        return types;
    }
};

} // namespace

TEST_CASE_FIXTURE(Fixture, "synthetic roots are present, user contracts in order") {
    REQUIRE(table.names().size() == 7);
    CHECK(table.names()[0] == kTopName);
    CHECK(table.names()[1] == kTopFbName);
    CHECK(table.userNames() == std::vector<std::string>{"A", "B", "C", "D", "E"});
    CHECK(table.get(kTopName).synthetic);
    CHECK(!table.get("A").synthetic);
}

TEST_CASE_FIXTURE(Fixture, "contract order follows the parent chain") {
    CHECK(table.contractLe("C", "B"));
    CHECK(table.contractLe("C", "A"));
    CHECK(table.contractLe("B", "A"));
    CHECK(!table.contractLe("A", "B"));
    CHECK(!table.contractLe("C", "D"));
    CHECK(!table.contractLe("D", "C"));
    CHECK(!table.contractLe("A", "E"));
}

TEST_CASE_FIXTURE(Fixture, "every contract sits below Top") {
    for (const auto& name : table.names()) CHECK(table.contractLe(name, kTopName));
    CHECK(!table.contractLe(kTopName, "A"));
}

TEST_CASE_FIXTURE(Fixture, "below Top_fb exactly when a fallback is on the chain") {
    for (const auto& name : table.names()) {
        CAPTURE(name);
        CHECK(table.contractLe(name, kTopFbName) == table.hasFallback(name));
    }
    CHECK(!table.hasFallback("A"));
    CHECK(table.hasFallback("B"));
    CHECK(table.hasFallback("C")); // inherited
    CHECK(!table.hasFallback("D"));
    CHECK(table.hasFallback("E"));
    CHECK(!table.hasFallback(kTopName));
    CHECK(table.hasFallback(kTopFbName));
}

TEST_CASE_FIXTURE(Fixture, "ancestry lists nearest parent first and ends at Top") {
    const auto& anc = table.get("C").ancestry;
    CHECK(anc == std::vector<std::string>{"B", "A", kTopName});
    CHECK(table.get("A").ancestry == std::vector<std::string>{kTopName});
    CHECK(table.get(kTopName).ancestry.empty());
    CHECK(table.get(kTopFbName).ancestry == std::vector<std::string>{kTopName});
}

TEST_CASE_FIXTURE(Fixture, "subtyping is a preorder over the whole universe") {
    auto types = universe();
    for (const auto& a : types) {
        CAPTURE(typeName(a));
        CHECK(isSubtype(table, a, a));
    }
    for (const auto& a : types)
        for (const auto& b : types)
            for (const auto& c : types) {
                if (isSubtype(table, a, b) && isSubtype(table, b, c)) {
                    CAPTURE(typeName(a));
                    CAPTURE(typeName(b));
                    CAPTURE(typeName(c));
                    CHECK(isSubtype(table, a, c));
                }
            }
}

TEST_CASE_FIXTURE(Fixture, "the full relation matches an explicit oracle") {
    auto types = universe();
    auto oracle = [&](const TypeRepr& a, const TypeRepr& b) {
        if (a == b) return true;
        if (a.kind == TypeKind::Contract && b.kind == TypeKind::Contract)
            return table.contractLe(a.contractName, b.contractName);
        if (a.kind == TypeKind::RefAddress && b.kind == TypeKind::RefAddress)
            return table.contractLe(a.contractName, b.contractName);
        if (a.kind == TypeKind::PayableAddress && b.kind == TypeKind::BareAddress) return true;
        return false;
    };
    for (const auto& a : types)
        for (const auto& b : types) {
            CAPTURE(typeName(a));
            CAPTURE(typeName(b));
            CHECK(isSubtype(table, a, b) == oracle(a, b));
        }
}

TEST_CASE_FIXTURE(Fixture, "address flavors do not collapse") {
    CHECK(isSubtype(table, TypeRepr::payableAddress(), TypeRepr::bareAddress()));
    CHECK(!isSubtype(table, TypeRepr::bareAddress(), TypeRepr::payableAddress()));
    CHECK(!isSubtype(table, TypeRepr::uint160Type(), TypeRepr::bareAddress()));
    CHECK(!isSubtype(table, TypeRepr::bareAddress(), TypeRepr::uint160Type()));
    CHECK(!isSubtype(table, TypeRepr::uintType(), TypeRepr::uint160Type()));
    // bounded addresses do not mix with the legacy flavors
    CHECK(!isSubtype(table, TypeRepr::refAddress("B"), TypeRepr::payableAddress()));
    CHECK(!isSubtype(table, TypeRepr::bareAddress(), TypeRepr::refAddress(kTopName)));
    // contract references are not addresses
    CHECK(!isSubtype(table, TypeRepr::contract("B"), TypeRepr::refAddress("B")));
}

TEST_CASE_FIXTURE(Fixture, "bounded addresses are covariant in the bound") {
    CHECK(isSubtype(table, TypeRepr::refAddress("C"), TypeRepr::refAddress("A")));
    CHECK(isSubtype(table, TypeRepr::refAddress("B"), TypeRepr::refAddress(kTopFbName)));
    CHECK(!isSubtype(table, TypeRepr::refAddress("A"), TypeRepr::refAddress(kTopFbName)));
    CHECK(isSubtype(table, TypeRepr::refAddress("A"), TypeRepr::refAddress(kTopName)));
    CHECK(!isSubtype(table, TypeRepr::refAddress("A"), TypeRepr::refAddress("C")));
}
