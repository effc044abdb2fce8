// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include <boost/multiprecision/cpp_int.hpp>
#include <limits>

#include "doctest.h"
#include "fsol/fuzz.hpp"
#include "fsol/numeric.hpp"

using namespace fsol;

namespace {

using BigInt = boost::multiprecision::cpp_int;

const BigInt kModulus = BigInt(1) << 256;
const U256 kMaxU256 = std::numeric_limits<U256>::max();

// Unbounded-integer oracle for the wrapping arithmetic.
BigInt toBig(const U256& v) { return BigInt(v); }

U256 fromBig(BigInt v) {
    v %= kModulus;
    if (v < 0) v += kModulus;
    return U256(v);
}

} // namespace

TEST_CASE("word arithmetic wraps modulo 2^256") {
    Rng rng(2024);
    for (int i = 0; i < 2000; ++i) {
        U256 a = U256(rng.next());
        U256 b = U256(rng.next());
        // Mix in huge operands so the wrap cases actually fire.
        if (rng.chance(50)) a = U256(kMaxU256) - a;
        if (rng.chance(30)) b = U256(kMaxU256) - b;

        CHECK(U256(a + b) == fromBig(toBig(a) + toBig(b)));
        CHECK(U256(a - b) == fromBig(toBig(a) - toBig(b)));
        CHECK(U256(a * b) == fromBig(toBig(a) * toBig(b)));
    }
}

TEST_CASE("wrap boundary cases") {
    const U256 max = kMaxU256;
    CHECK(U256(max + U256(1)) == U256(0));
    CHECK(U256(U256(0) - U256(1)) == max);
    CHECK(U256(max * max) == U256(1)); // (-1)^2 mod 2^256
    CHECK(U256(max + max) == max - U256(1));
}

TEST_CASE("decimal parse and format round-trip") {
    CHECK(parseU256Decimal("0") == U256(0));
    CHECK(parseU256Decimal("42") == U256(42));
    CHECK(formatU256(U256(42)) == "42");
    CHECK(parseU256Decimal(formatU256(kMaxU256)) == kMaxU256);
    CHECK(!parseU256Decimal("").has_value());
    CHECK(!parseU256Decimal("12a").has_value());
    CHECK(!parseU256Decimal("-1").has_value());
    // One beyond the largest word must be rejected, not wrapped.
    CHECK(!parseU256Decimal("115792089237316195423570985008687907853269984665640564039457584007913129639936")
               .has_value());
}

TEST_CASE("uint160 truncation keeps the low 160 bits") {
    CHECK(truncateToU160(U256(5)) == U256(5));
    const U256 high = U256(1) << 200;
    CHECK(truncateToU160(high) == U256(0));
    CHECK(truncateToU160(high + U256(7)) == U256(7));
    const U256 all160 = (U256(1) << 160) - 1;
    CHECK(truncateToU160(kMaxU256) == all160);
}

TEST_CASE("addresses embed into words and back") {
    Address a = Address::fromU256(U256(0xABCDEF));
    CHECK(Address::fromU256(a.toU256()) == a);
    CHECK(a.toU256() == U256(0xABCDEF));
    CHECK(Address::zero().toU256() == U256(0));

    auto parsed = Address::fromHex("0x0000000000000000000000000000000000abcdef");
    REQUIRE(parsed.has_value());
    CHECK(*parsed == a);
    CHECK(a.toHex() == "0x0000000000000000000000000000000000abcdef");

    CHECK(!Address::fromHex("0x123").has_value());
    CHECK(!Address::fromHex("00000000000000000000000000000000000abcdef").has_value());
}
