// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "fsol/numeric.hpp"

#include <sstream>

namespace fsol {

namespace {

int hexDigitValue(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

const char* kHexDigits = "0123456789abcdef";

} // namespace

bool Address::isZero() const {
    for (uint8_t b : bytes)
        if (b != 0) return false;
    return true;
}

std::optional<Address> Address::fromHex(std::string_view text) {
    if (text.size() != 42 || text[0] != '0' || text[1] != 'x') return std::nullopt;
    Address out;
    for (size_t i = 0; i < 20; ++i) {
        int hi = hexDigitValue(text[2 + 2 * i]);
        int lo = hexDigitValue(text[3 + 2 * i]);
        if (hi < 0 || lo < 0) return std::nullopt;
        out.bytes[i] = static_cast<uint8_t>(hi * 16 + lo);
    }
    return out;
}

std::string Address::toHex() const {
    std::string out = "0x";
    out.reserve(42);
    for (uint8_t b : bytes) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0xF]);
    }
    return out;
}

U256 Address::toU256() const {
    U256 v = 0;
    for (uint8_t b : bytes) {
        v <<= 8;
        v |= b;
    }
    return v;
}

Address Address::fromU256(const U256& value) {
    Address out;
    U256 v = value;
    for (int i = 19; i >= 0; --i) {
        out.bytes[static_cast<size_t>(i)] = static_cast<uint8_t>(v & 0xFF);
        v >>= 8;
    }
    return out;
}

std::optional<U256> parseU256Decimal(std::string_view text) {
    if (text.empty()) return std::nullopt;
    const U256 max = ~U256(0);
    U256 value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') return std::nullopt;
        unsigned digit = static_cast<unsigned>(c - '0');
        if (value > (max - digit) / 10) return std::nullopt; // would wrap
        value = value * 10 + digit;
    }
    return value;
}

std::string formatU256(const U256& value) {
    std::ostringstream out;
    out << value;
    return out.str();
}

U256 truncateToU160(const U256& value) {
    const U256 mask = (U256(1) << 160) - 1;
    return value & mask;
}

} // namespace fsol
