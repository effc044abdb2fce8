// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FSOL_SRC_LEXER_HPP
#define FSOL_SRC_LEXER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "fsol/diagnostics.hpp"
#include "fsol/numeric.hpp"

namespace fsol {

enum class TokenKind {
    Eof,
    Identifier,
    IntLiteral,
    AddressLiteral,
    KwContract,
    KwIs,
    KwConstructor,
    KwFunction,
    KwReturns,
    KwExternal,
    KwPublic,
    KwPrivate,
    KwPayable,
    KwPayback,
    KwAddress,
    KwUInt,
    KwUInt160,
    KwBool,
    KwTrue,
    KwFalse,
    KwThis,
    KwMsg,
    KwReturn,
    KwRequire,
    KwIf,
    KwElse,
    KwTransfer,
    KwBalance,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semicolon,
    Comma,
    Dot,
    Assign,
    Lt,
    Gt,
    Le,
    Ge,
    EqEq,
    NotEq,
    Plus,
    Minus,
    Star,
    Not,
    AndAnd,
    OrOr,
};

struct Token {
    TokenKind kind = TokenKind::Eof;
    std::string text;
    U256 intValue = 0;
    Address addrValue;
    SourceSpan span;
};

const char* tokenKindName(TokenKind kind);

struct LexResult {
    std::vector<Token> tokens; // always ends with an Eof token
    std::vector<Diagnostic> diagnostics;
};

LexResult lex(std::string_view source, const std::string& fileName);

} // namespace fsol

#endif
