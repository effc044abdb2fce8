// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FSOL_NUMERIC_HPP
#define FSOL_NUMERIC_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fsol {

// All arithmetic is unsigned 256-bit with silent wraparound, matching the
// EVM word. boost's checked/saturating variants are deliberately avoided.
using U256 = boost::multiprecision::uint256_t;

// 160-bit account identifier, big-endian bytes.
struct Address {
    std::array<uint8_t, 20> bytes{};

    auto operator<=>(const Address&) const = default;

    static Address zero() { return Address{}; }
    bool isZero() const;

    // Accepts exactly "0x" + 40 hex digits, case-insensitive.
    static std::optional<Address> fromHex(std::string_view text);
    // Lowercase "0x"-prefixed rendering.
    std::string toHex() const;

    U256 toU256() const;
    // Keeps the low 160 bits.
    static Address fromU256(const U256& value);
};

std::optional<U256> parseU256Decimal(std::string_view text);
std::string formatU256(const U256& value);

// Low 160 bits of a word, i.e. the uint160(x) conversion.
U256 truncateToU160(const U256& value);

} // namespace fsol

#endif
