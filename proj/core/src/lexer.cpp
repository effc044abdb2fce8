// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "lexer.hpp"

#include <cctype>
#include <map>

namespace fsol {

const char* tokenKindName(TokenKind kind) {
    switch (kind) {
    case TokenKind::Eof: return "end of input";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::IntLiteral: return "integer literal";
    case TokenKind::AddressLiteral: return "address literal";
    case TokenKind::KwContract: return "'contract'";
    case TokenKind::KwIs: return "'is'";
    case TokenKind::KwConstructor: return "'constructor'";
    case TokenKind::KwFunction: return "'function'";
    case TokenKind::KwReturns: return "'returns'";
    case TokenKind::KwExternal: return "'external'";
    case TokenKind::KwPublic: return "'public'";
    case TokenKind::KwPrivate: return "'private'";
    case TokenKind::KwPayable: return "'payable'";
    case TokenKind::KwPayback: return "'payback'";
    case TokenKind::KwAddress: return "'address'";
    case TokenKind::KwUInt: return "'uint'";
    case TokenKind::KwUInt160: return "'uint160'";
    case TokenKind::KwBool: return "'bool'";
    case TokenKind::KwTrue: return "'true'";
    case TokenKind::KwFalse: return "'false'";
    case TokenKind::KwThis: return "'this'";
    case TokenKind::KwMsg: return "'msg'";
    case TokenKind::KwReturn: return "'return'";
    case TokenKind::KwRequire: return "'require'";
    case TokenKind::KwIf: return "'if'";
    case TokenKind::KwElse: return "'else'";
    case TokenKind::KwTransfer: return "'transfer'";
    case TokenKind::KwBalance: return "'balance'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Comma: return "','";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Assign: return "'='";
    case TokenKind::Lt: return "'<'";
    case TokenKind::Gt: return "'>'";
    case TokenKind::Le: return "'<='";
    case TokenKind::Ge: return "'>='";
    case TokenKind::EqEq: return "'=='";
    case TokenKind::NotEq: return "'!='";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Not: return "'!'";
    case TokenKind::AndAnd: return "'&&'";
    case TokenKind::OrOr: return "'||'";
    }
    return "?";
}

namespace {

const std::map<std::string, TokenKind, std::less<>>& keywordTable() {
    static const std::map<std::string, TokenKind, std::less<>> table = {
        {"contract", TokenKind::KwContract},
        {"is", TokenKind::KwIs},
        {"constructor", TokenKind::KwConstructor},
        {"function", TokenKind::KwFunction},
        {"returns", TokenKind::KwReturns},
        {"external", TokenKind::KwExternal},
        {"public", TokenKind::KwPublic},
        {"private", TokenKind::KwPrivate},
        {"payable", TokenKind::KwPayable},
        {"payback", TokenKind::KwPayback},
        {"address", TokenKind::KwAddress},
        {"uint", TokenKind::KwUInt},
        {"uint160", TokenKind::KwUInt160},
        {"bool", TokenKind::KwBool},
        {"true", TokenKind::KwTrue},
        {"false", TokenKind::KwFalse},
        {"this", TokenKind::KwThis},
        {"msg", TokenKind::KwMsg},
        {"return", TokenKind::KwReturn},
        {"require", TokenKind::KwRequire},
        {"if", TokenKind::KwIf},
        {"else", TokenKind::KwElse},
        {"transfer", TokenKind::KwTransfer},
        {"balance", TokenKind::KwBalance},
    };
    return table;
}

bool isIdentStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool isIdentChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool isHexDigit(char c) { return std::isxdigit(static_cast<unsigned char>(c)); }
bool isDigit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
public:
    Lexer(std::string_view source, std::string fileName)
        : src_(source), file_(std::move(fileName)) {}

    LexResult run() {
        while (true) {
            skipTrivia();
            if (pos_ >= src_.size()) break;
            lexToken();
        }
        Token eof;
        eof.kind = TokenKind::Eof;
        eof.span = spanFrom(markStart());
        result_.tokens.push_back(std::move(eof));
        return std::move(result_);
    }

private:
    struct Mark {
        size_t pos;
        int line;
        int column;
    };

    std::string_view src_;
    std::string file_;
    size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    LexResult result_;

    char peek(size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    Mark markStart() const { return Mark{pos_, line_, column_}; }

    SourceSpan spanFrom(const Mark& m) const {
        SourceSpan s;
        s.file = file_;
        s.startLine = m.line;
        s.startColumn = m.column;
        s.endLine = line_;
        s.endColumn = column_;
        s.startOffset = m.pos;
        s.endOffset = pos_;
        return s;
    }

    void skipTrivia() {
        while (pos_ < src_.size()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    void push(TokenKind kind, const Mark& m) {
        Token t;
        t.kind = kind;
        t.span = spanFrom(m);
        t.text = std::string(src_.substr(m.pos, pos_ - m.pos));
        result_.tokens.push_back(std::move(t));
    }

    void error(const Mark& m, std::string message) {
        result_.diagnostics.push_back(
            makeError("PAR-SYNTAX", std::move(message), spanFrom(m)));
    }

    void lexToken() {
        Mark m = markStart();
        char c = peek();
        if (isIdentStart(c)) {
            while (pos_ < src_.size() && isIdentChar(peek())) advance();
            std::string_view text = src_.substr(m.pos, pos_ - m.pos);
            auto it = keywordTable().find(text);
            if (it != keywordTable().end()) {
                push(it->second, m);
            } else {
                push(TokenKind::Identifier, m);
            }
            return;
        }
        if (c == '0' && peek(1) == 'x') {
            advance();
            advance();
            size_t digitsStart = pos_;
            while (pos_ < src_.size() && isHexDigit(peek())) advance();
            size_t digits = pos_ - digitsStart;
            if (digits != 40) {
                error(m, "address literal must be 0x followed by exactly 40 hex digits");
                return;
            }
            Token t;
            t.kind = TokenKind::AddressLiteral;
            t.span = spanFrom(m);
            t.text = std::string(src_.substr(m.pos, pos_ - m.pos));
            t.addrValue = *Address::fromHex(t.text);
            result_.tokens.push_back(std::move(t));
            return;
        }
        if (isDigit(c)) {
            while (pos_ < src_.size() && isDigit(peek())) advance();
            std::string_view text = src_.substr(m.pos, pos_ - m.pos);
            auto value = parseU256Decimal(text);
            if (!value) {
                error(m, "integer literal does not fit in 256 bits");
                return;
            }
            Token t;
            t.kind = TokenKind::IntLiteral;
            t.span = spanFrom(m);
            t.text = std::string(text);
            t.intValue = *value;
            result_.tokens.push_back(std::move(t));
            return;
        }
        advance();
        switch (c) {
        case '{': push(TokenKind::LBrace, m); return;
        case '}': push(TokenKind::RBrace, m); return;
        case '(': push(TokenKind::LParen, m); return;
        case ')': push(TokenKind::RParen, m); return;
        case ';': push(TokenKind::Semicolon, m); return;
        case ',': push(TokenKind::Comma, m); return;
        case '.': push(TokenKind::Dot, m); return;
        case '+': push(TokenKind::Plus, m); return;
        case '-': push(TokenKind::Minus, m); return;
        case '*': push(TokenKind::Star, m); return;
        case '=':
            if (peek() == '=') {
                advance();
                push(TokenKind::EqEq, m);
            } else {
                push(TokenKind::Assign, m);
            }
            return;
        case '!':
            if (peek() == '=') {
                advance();
                push(TokenKind::NotEq, m);
            } else {
                push(TokenKind::Not, m);
            }
            return;
        case '<':
            if (peek() == '=') {
                advance();
                push(TokenKind::Le, m);
            } else {
                push(TokenKind::Lt, m);
            }
            return;
        case '>':
            if (peek() == '=') {
                advance();
                push(TokenKind::Ge, m);
            } else {
                push(TokenKind::Gt, m);
            }
            return;
        case '&':
            if (peek() == '&') {
                advance();
                push(TokenKind::AndAnd, m);
                return;
            }
            error(m, "stray '&'; did you mean '&&'?");
            return;
        case '|':
            if (peek() == '|') {
                advance();
                push(TokenKind::OrOr, m);
                return;
            }
            error(m, "stray '|'; did you mean '||'?");
            return;
        default:
            error(m, std::string("unexpected character '") + c + "'");
            return;
        }
    }
};

} // namespace

LexResult lex(std::string_view source, const std::string& fileName) {
    return Lexer(source, fileName).run();
}

} // namespace fsol
