// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include <string>
#include <vector>

#include "doctest.h"
#include "fsol/parser.hpp"
#include "fsol/vm.hpp"

using namespace fsol;

namespace {

const Address kEoa = Address::fromU256(0xE01);
const Address kAt1 = Address::fromU256(0xA01);
const Address kAt2 = Address::fromU256(0xA02);

struct World {
    Program program;
    ContractTable table;
    ChainState state;

    explicit World(const std::string& src) {
        ParseResult pr = parse(src, "vm.fsol");
        REQUIRE_MESSAGE(!hasErrors(pr.diagnostics), renderDiagnostics(pr.diagnostics));
        program = std::move(pr.program);
        ResolveResult rr = resolveHierarchy(program);
        REQUIRE(rr.table);
        table = std::move(*rr.table);
        state.accounts[kEoa] = Account::external(1000);
    }

    void deployOk(const std::string& name, const Address& at, U256 balance = 100,
                  std::vector<Value> args = {}) {
        auto err = deploy(state, table, name, std::move(args), at, balance, kEoa);
        REQUIRE_MESSAGE(!err, err->message);
    }

    Outcome run(const std::string& fn, std::vector<Value> args = {}, U256 value = 0,
                const Address& to = kAt1, const Address& from = kEoa) {
        return execTransaction(state, table, Transaction{from, to, fn, std::move(args), value});
    }
};

} // namespace

TEST_CASE("deploy creates the account, credits the genesis balance, runs the constructor") {
    World w(R"(contract C {
        uint _n;
        uint _startBalance;
        constructor(uint n) { _n = n + 1; _startBalance = address(this).balance; }
    })");
    w.deployOk("C", kAt1, 77, {Value(UIntValue{41})});
    const Account& acct = w.state.accounts.at(kAt1);
    CHECK(acct.isContract());
    CHECK(acct.contractName == "C");
    CHECK(acct.balance == 77);
    CHECK(acct.fields.at("_n").as<UIntValue>().value == 42);
    // balance is credited before the constructor body runs
    CHECK(acct.fields.at("_startBalance").as<UIntValue>().value == 77);
}

TEST_CASE("inherited fields exist on the deployed instance") {
    World w("contract A { uint a; } contract B is A { bool b; }");
    w.deployOk("B", kAt1);
    const Account& acct = w.state.accounts.at(kAt1);
    CHECK(acct.fields.count("a") == 1);
    CHECK(acct.fields.count("b") == 1);
}

TEST_CASE("deploy failures leave the state untouched") {
    World w(R"(contract C {
        constructor(uint n) { require(n > 0); }
    })");
    ChainState before = w.state;

    auto err = deploy(w.state, w.table, "Nope", {}, kAt1, 0, kEoa);
    REQUIRE(err);
    CHECK(err->kind == DeployError::Kind::UnknownContract);
    CHECK(w.state == before);

    err = deploy(w.state, w.table, kTopName, {}, kAt1, 0, kEoa);
    REQUIRE(err);
    CHECK(err->kind == DeployError::Kind::ReservedContract);

    err = deploy(w.state, w.table, "C", {}, kAt1, 0, kEoa);
    REQUIRE(err);
    CHECK(err->kind == DeployError::Kind::ArityMismatch);

    err = deploy(w.state, w.table, "C", {Value(BoolValue{true})}, kAt1, 0, kEoa);
    REQUIRE(err);
    CHECK(err->kind == DeployError::Kind::BadArgument);

    err = deploy(w.state, w.table, "C", {Value(UIntValue{0})}, kAt1, 0, kEoa);
    REQUIRE(err);
    CHECK(err->kind == DeployError::Kind::ConstructorReverted);
    REQUIRE(err->revert);
    CHECK(err->revert->kind == RevertReason::Kind::RequirementFailed);
    CHECK(w.state == before);

    w.deployOk("C", kAt1, 0, {Value(UIntValue{5})});
    err = deploy(w.state, w.table, "C", {Value(UIntValue{5})}, kAt1, 0, kEoa);
    REQUIRE(err);
    CHECK(err->kind == DeployError::Kind::AddressOccupied);
}

TEST_CASE("a revert rolls the state back exactly") {
    World w(R"(contract C {
        uint _n;
        function bump(uint k) external {
            _n = _n + k;
            require(k < 10);
        }
    })");
    w.deployOk("C", kAt1);
    Outcome ok = w.run("bump", {Value(UIntValue{3})});
    REQUIRE(ok.success());
    CHECK(w.state.accounts.at(kAt1).fields.at("_n").as<UIntValue>().value == 3);

    ChainState before = w.state;
    Outcome bad = w.run("bump", {Value(UIntValue{10})});
    REQUIRE(!bad.success());
    CHECK(bad.reason.kind == RevertReason::Kind::RequirementFailed);
    CHECK(w.state == before);
    // the trace survives the rollback
    CHECK(!bad.trace.empty());
}

TEST_CASE("unknown function and zero address give message-not-understood") {
    World w(R"(contract C {
        function f() external { }
        function broken() external {
            C ghost = C(address(uint160(0)));
            ghost.f();
        }
    })");
    w.deployOk("C", kAt1);
    Outcome o = w.run("nosuch");
    REQUIRE(!o.success());
    CHECK(o.reason.kind == RevertReason::Kind::MessageNotUnderstood);
    CHECK(o.reason.functionName == "nosuch");

    o = w.run("broken");
    REQUIRE(!o.success());
    CHECK(o.reason.kind == RevertReason::Kind::MessageNotUnderstood);
    CHECK(o.reason.address == Address::zero());
}

TEST_CASE("private functions are invisible to other instances") {
    World w(R"(contract C {
        function go(C other) external { other.hidden(); }
        function viaThis() external { this.hidden(); }
        function hidden() private { }
    })");
    w.deployOk("C", kAt1);
    w.deployOk("C", kAt2);
    CHECK(w.run("viaThis").success());
    ChainState s = w.state;
    Outcome o = execTransaction(
        s, w.table, Transaction{kEoa, kAt1, "go", {Value(ContractRefValue{kAt2, "C"})}, 0});
    REQUIRE(!o.success());
    CHECK(o.reason.kind == RevertReason::Kind::MessageNotUnderstood);
}

TEST_CASE("value transfers respect payability and balances") {
    World w(R"(contract C {
        function pay() external payable { }
        function free() external { }
    })");
    w.deployOk("C", kAt1, 0);

    Outcome o = w.run("pay", {}, 60);
    REQUIRE(o.success());
    CHECK(w.state.balanceOf(kAt1) == 60);
    CHECK(w.state.balanceOf(kEoa) == 940);

    o = w.run("free", {}, 1);
    REQUIRE(!o.success());
    CHECK(o.reason.kind == RevertReason::Kind::NonPayable);

    o = w.run("pay", {}, 100000);
    REQUIRE(!o.success());
    CHECK(o.reason.kind == RevertReason::Kind::InsufficientBalance);
}

TEST_CASE("transfer moves wei and runs the receiving fallback, even for zero") {
    World w(R"(contract Sink {
        uint _pokes;
        function() external payable { _pokes = _pokes + 1; }
    }
    contract C {
        function send(address payable to, uint amount) external { to.transfer(amount); }
    })");
    w.deployOk("Sink", kAt1, 0);
    w.deployOk("C", kAt2, 50);

    Outcome o = w.run("send", {Value(AddrValue{kAt1, AddrTag::payable()}), Value(UIntValue{20})},
                      0, kAt2);
    REQUIRE_MESSAGE(o.success(), o.reason.describe());
    CHECK(w.state.balanceOf(kAt1) == 20);
    CHECK(w.state.balanceOf(kAt2) == 30);
    CHECK(w.state.accounts.at(kAt1).fields.at("_pokes").as<UIntValue>().value == 1);

    o = w.run("send", {Value(AddrValue{kAt1, AddrTag::payable()}), Value(UIntValue{0})}, 0, kAt2);
    REQUIRE(o.success());
    CHECK(w.state.accounts.at(kAt1).fields.at("_pokes").as<UIntValue>().value == 2);
    bool sawFallback = false;
    for (const auto& ev : o.trace)
        if (ev.is<FallbackEvent>()) sawFallback = true;
    CHECK(sawFallback);
}

TEST_CASE("transfer to an unfunded fresh address creates the account") {
    World w(R"(contract C {
        function send(address payable to) external { to.transfer(7); }
    })");
    w.deployOk("C", kAt1, 50);
    Address fresh = Address::fromU256(0xFFF);
    CHECK(w.state.accounts.count(fresh) == 0);
    Outcome o = w.run("send", {Value(AddrValue{fresh, AddrTag::payable()})});
    REQUIRE(o.success());
    CHECK(w.state.balanceOf(fresh) == 7);
    CHECK(!w.state.accounts.at(fresh).isContract());
}

TEST_CASE("transfer to a fallback-less contract reverts with no-fallback") {
    World w(R"(contract Mute { }
    contract C {
        function send(address payable to) external { to.transfer(7); }
    })");
    w.deployOk("Mute", kAt1, 0);
    w.deployOk("C", kAt2, 50);
    ChainState before = w.state;
    Outcome o = w.run("send", {Value(AddrValue{kAt1, AddrTag::payable()})}, 0, kAt2);
    REQUIRE(!o.success());
    CHECK(o.reason.kind == RevertReason::Kind::NoFallback);
    CHECK(o.reason.address == kAt1);
    CHECK(w.state == before);
}

TEST_CASE("insufficient balance beats the fallback") {
    World w(R"(contract Sink { function() external payable { } }
    contract C {
        function send(address payable to) external { to.transfer(999); }
    })");
    w.deployOk("Sink", kAt1, 0);
    w.deployOk("C", kAt2, 5);
    Outcome o = w.run("send", {Value(AddrValue{kAt1, AddrTag::payable()})}, 0, kAt2);
    REQUIRE(!o.success());
    CHECK(o.reason.kind == RevertReason::Kind::InsufficientBalance);
}

TEST_CASE("argument claims are enforced at the call boundary") {
    World w(R"(contract C {
        function wantPayable(address payable p) external { }
        function wantBare(address p) external { }
    })");
    w.deployOk("C", kAt1);
    // a bare claim does not satisfy an address payable parameter
    Outcome o = w.run("wantPayable", {Value(AddrValue{kEoa, AddrTag::bare()})});
    REQUIRE(!o.success());
    CHECK(o.reason.kind == RevertReason::Kind::TypeConfusion);
    // the payable claim satisfies both flavors
    CHECK(w.run("wantPayable", {Value(AddrValue{kEoa, AddrTag::payable()})}).success());
    CHECK(w.run("wantBare", {Value(AddrValue{kEoa, AddrTag::payable()})}).success());
    // arity is checked dynamically too
    o = w.run("wantBare", {});
    REQUIRE(!o.success());
    CHECK(o.reason.kind == RevertReason::Kind::TypeConfusion);
}

TEST_CASE("msg.sender is tagged with what the chain knows") {
    World w(R"(contract Probe {
        address _last;
        function note() external { _last = msg.sender; }
    }
    contract C {
        function go(Probe p) external { p.note(); }
    })");
    w.deployOk("Probe", kAt1);
    w.deployOk("C", kAt2);

    REQUIRE(w.run("note").success());
    const Value& fromEoa = w.state.accounts.at(kAt1).fields.at("_last");
    CHECK(fromEoa.as<AddrValue>().address == kEoa);
    CHECK(fromEoa.as<AddrValue>().tag == AddrTag::payable());

    REQUIRE(w.run("go", {Value(ContractRefValue{kAt1, "Probe"})}, 0, kAt2).success());
    const Value& fromC = w.state.accounts.at(kAt1).fields.at("_last");
    CHECK(fromC.as<AddrValue>().address == kAt2);
    CHECK(fromC.as<AddrValue>().tag == AddrTag::ref("C"));
}

TEST_CASE("casts retag without checking") {
    // the baseline-typed path may pin a wrong claim on an address; the VM
    // only discovers it when the claim is relied on
    World w(R"(contract Mute { }
    contract C {
        function laundered(address a) external {
            uint160 n = uint160(a);
            address payable p = address(n);
            p.transfer(5);
        }
    })");
    w.deployOk("Mute", kAt1, 0);
    w.deployOk("C", kAt2, 50);
    Outcome o = w.run("laundered", {Value(AddrValue{kAt1, AddrTag::bare()})}, 0, kAt2);
    REQUIRE(!o.success());
    CHECK(o.reason.kind == RevertReason::Kind::NoFallback);
}

TEST_CASE("the call depth is capped") {
    World w(R"(contract C {
        function spin() public { this.spin(); }
    })");
    w.deployOk("C", kAt1);
    Outcome o = w.run("spin");
    REQUIRE(!o.success());
    CHECK(o.reason.kind == RevertReason::Kind::CallDepthExceeded);
}

TEST_CASE("mutual transfer fallbacks also hit the depth cap") {
    World w(R"(contract A {
        function() external payable { msg.sender.transfer(1); }
        function kick(address payable to) external { to.transfer(1); }
    })");
    w.deployOk("A", kAt1, 500);
    w.deployOk("A", kAt2, 500);
    Outcome o = w.run("kick", {Value(AddrValue{kAt2, AddrTag::payable()})}, 0, kAt1);
    REQUIRE(!o.success());
    CHECK(o.reason.kind == RevertReason::Kind::CallDepthExceeded);
}

TEST_CASE("wei is conserved by transactions, successful or not") {
    World w(R"(contract Sink { function() external payable { } }
    contract C {
        function mix(address payable to) external payable {
            to.transfer(msg.value);
            require(msg.value < 100);
        }
    })");
    w.deployOk("Sink", kAt1, 30);
    w.deployOk("C", kAt2, 11);
    U256 total = w.state.totalWei();
    Outcome o = w.run("mix", {Value(AddrValue{kAt1, AddrTag::payable()})}, 5, kAt2);
    CHECK(o.success());
    CHECK(w.state.totalWei() == total);
    o = w.run("mix", {Value(AddrValue{kAt1, AddrTag::payable()})}, 900, kAt2);
    CHECK(!o.success());
    CHECK(w.state.totalWei() == total);
}

TEST_CASE("return values come back through the outcome") {
    World w(R"(contract C {
        function add(uint a, uint b) external returns (uint) { return a + b; }
        function yes() external returns (bool) { return true; }
    })");
    w.deployOk("C", kAt1);
    Outcome o = w.run("add", {Value(UIntValue{2}), Value(UIntValue{40})});
    REQUIRE(o.success());
    REQUIRE(o.returnValue);
    CHECK(o.returnValue->as<UIntValue>().value == 42);
    o = w.run("yes");
    REQUIRE(o.success());
    CHECK(o.returnValue->as<BoolValue>().value);
}

TEST_CASE("arithmetic wraps modulo 2^256 at run time") {
    World w(R"(contract C {
        uint _r;
        function addTo(uint a, uint b) external { _r = a + b; }
        function subFrom(uint a, uint b) external { _r = a - b; }
    })");
    w.deployOk("C", kAt1);
    U256 max = std::numeric_limits<U256>::max();
    REQUIRE(w.run("addTo", {Value(UIntValue{max}), Value(UIntValue{3})}).success());
    CHECK(w.state.accounts.at(kAt1).fields.at("_r").as<UIntValue>().value == 2);
    REQUIRE(w.run("subFrom", {Value(UIntValue{0}), Value(UIntValue{1})}).success());
    CHECK(w.state.accounts.at(kAt1).fields.at("_r").as<UIntValue>().value == max);
}

TEST_CASE("the trace records calls, transfers, writes, and bubbles") {
    World w(R"(contract Sink { function() external payable { } }
    contract C {
        uint _n;
        function go(address payable to) external {
            _n = 1;
            to.transfer(2);
        }
        function bad() external { require(false); }
    })");
    w.deployOk("Sink", kAt1, 0);
    w.deployOk("C", kAt2, 50);
    Outcome o = w.run("go", {Value(AddrValue{kAt1, AddrTag::payable()})}, 0, kAt2);
    REQUIRE(o.success());
    REQUIRE(!o.trace.empty());
    CHECK(o.trace[0].is<CallEvent>());
    CHECK(o.trace[0].as<CallEvent>().function == "go");
    bool sawWrite = false, sawTransfer = false, sawFallback = false;
    for (const auto& ev : o.trace) {
        if (ev.is<StateWriteEvent>()) sawWrite = true;
        if (ev.is<TransferEvent>()) sawTransfer = true;
        if (ev.is<FallbackEvent>()) sawFallback = true;
    }
    CHECK(sawWrite);
    CHECK(sawTransfer);
    CHECK(sawFallback);

    o = w.run("bad", {}, 0, kAt2);
    REQUIRE(!o.success());
    bool sawBubble = false;
    for (const auto& ev : o.trace)
        if (ev.is<RevertBubbleEvent>()) sawBubble = true;
    CHECK(sawBubble);
    // JSONL rendering tags every event
    std::string lines = traceToJsonLines(o.trace);
    CHECK(lines.find("\"ev\"") != std::string::npos);
}
