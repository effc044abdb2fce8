// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "fsol/parser.hpp"

#include <algorithm>

#include "lexer.hpp"

namespace fsol {

namespace {

class Parser {
public:
    Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
        : toks_(std::move(tokens)), diags_(diags) {}

    Program run() {
        Program program;
        while (!at(TokenKind::Eof)) {
            if (!at(TokenKind::KwContract)) {
                report(cur().span, expectedMessage("'contract'"));
                skipToNextContract();
                continue;
            }
            try {
                program.contracts.push_back(parseContract());
            } catch (const Bail&) {
                skipToNextContract();
            }
        }
        return program;
    }

private:
    struct Bail {};

    std::vector<Token> toks_;
    std::vector<Diagnostic>& diags_;
    size_t pos_ = 0;

    const Token& cur() const { return toks_[pos_]; }
    const Token& peekAhead(size_t n) const {
        return toks_[std::min(pos_ + n, toks_.size() - 1)];
    }
    bool at(TokenKind kind) const { return cur().kind == kind; }

    Token take() {
        Token t = cur();
        if (!at(TokenKind::Eof)) ++pos_;
        return t;
    }

    void report(const SourceSpan& span, std::string message) {
        diags_.push_back(makeError("PAR-SYNTAX", std::move(message), span));
    }

    [[noreturn]] void fail(std::string message) {
        report(cur().span, std::move(message));
        throw Bail{};
    }

    std::string expectedMessage(const std::string& what) const {
        if (at(TokenKind::Eof)) return "unexpected end of input; expected " + what;
        return "expected " + what + ", got " + tokenKindName(cur().kind);
    }

    Token expect(TokenKind kind, const std::string& what) {
        if (!at(kind)) fail(expectedMessage(what));
        return take();
    }

    Token expectIdent(const std::string& what) { return expect(TokenKind::Identifier, what); }

    void skipBalancedBraces() {
        if (!at(TokenKind::LBrace)) return;
        take();
        int depth = 1;
        while (!at(TokenKind::Eof) && depth > 0) {
            if (at(TokenKind::LBrace)) ++depth;
            if (at(TokenKind::RBrace)) --depth;
            take();
        }
    }

    void skipToNextContract() {
        while (!at(TokenKind::Eof) && !at(TokenKind::KwContract)) take();
    }

    void skipToStmtBoundary() {
        while (!at(TokenKind::Eof)) {
            if (at(TokenKind::Semicolon)) {
                take();
                return;
            }
            if (at(TokenKind::RBrace)) return;
            if (at(TokenKind::LBrace)) {
                skipBalancedBraces();
                continue;
            }
            take();
        }
    }

    void skipToMemberBoundary() {
        while (!at(TokenKind::Eof)) {
            if (at(TokenKind::Semicolon)) {
                take();
                return;
            }
            if (at(TokenKind::RBrace)) return;
            if (at(TokenKind::LBrace)) {
                skipBalancedBraces();
                return;
            }
            take();
        }
    }

    ContractDecl parseContract() {
        Token kw = expect(TokenKind::KwContract, "'contract'");
        ContractDecl decl;
        Token name = expectIdent("a contract name");
        decl.name = name.text;
        decl.nameSpan = name.span;
        if (at(TokenKind::KwIs)) {
            take();
            Token parent = expectIdent("a parent contract name");
            decl.parent = parent.text;
            decl.parentSpan = parent.span;
        }
        expect(TokenKind::LBrace, "'{'");
        while (!at(TokenKind::RBrace) && !at(TokenKind::Eof)) {
            try {
                parseMember(decl);
            } catch (const Bail&) {
                skipToMemberBoundary();
            }
        }
        Token rb = expect(TokenKind::RBrace, "'}'");
        decl.span = mergeSpans(kw.span, rb.span);
        return decl;
    }

    void parseMember(ContractDecl& decl) {
        if (at(TokenKind::KwConstructor)) {
            ConstructorDecl ctor = parseConstructor();
            if (decl.ctor) {
                report(ctor.span, "duplicate constructor; a contract has at most one");
            } else {
                decl.ctor = std::move(ctor);
            }
            return;
        }
        if (at(TokenKind::KwFunction)) {
            if (peekAhead(1).kind == TokenKind::LParen) {
                FallbackDecl fb = parseFallback();
                if (decl.fallback) {
                    report(fb.span, "duplicate fallback; a contract has at most one");
                } else {
                    decl.fallback = std::move(fb);
                }
                return;
            }
            decl.functions.push_back(parseFunction());
            return;
        }
        switch (cur().kind) {
        case TokenKind::KwUInt:
        case TokenKind::KwUInt160:
        case TokenKind::KwBool:
        case TokenKind::KwAddress:
        case TokenKind::Identifier: {
            Token first = cur();
            StateVarDecl var;
            var.type = parseType();
            Token name = expectIdent("a state variable name");
            var.name = name.text;
            Token semi = expect(TokenKind::Semicolon, "';'");
            var.span = mergeSpans(first.span, semi.span);
            decl.stateVars.push_back(std::move(var));
            return;
        }
        default:
            fail(expectedMessage("a member declaration"));
        }
    }

    ConstructorDecl parseConstructor() {
        Token kw = expect(TokenKind::KwConstructor, "'constructor'");
        ConstructorDecl ctor;
        expect(TokenKind::LParen, "'('");
        ctor.params = parseParams();
        expect(TokenKind::RParen, "')'");
        if (at(TokenKind::KwPayable)) {
            take();
            ctor.payable = true;
        }
        SourceSpan bodyEnd;
        ctor.body = parseBlock(bodyEnd);
        ctor.span = mergeSpans(kw.span, bodyEnd);
        return ctor;
    }

    FallbackDecl parseFallback() {
        Token kw = expect(TokenKind::KwFunction, "'function'");
        FallbackDecl fb;
        expect(TokenKind::LParen, "'('");
        expect(TokenKind::RParen, "')'");
        expect(TokenKind::KwExternal, "'external'");
        if (at(TokenKind::KwPayable)) take(); // implicitly payable either way
        SourceSpan bodyEnd;
        fb.body = parseBlock(bodyEnd);
        fb.span = mergeSpans(kw.span, bodyEnd);
        return fb;
    }

    FunctionDecl parseFunction() {
        Token kw = expect(TokenKind::KwFunction, "'function'");
        FunctionDecl fn;
        Token name = expectIdent("a function name");
        fn.name = name.text;
        fn.nameSpan = name.span;
        expect(TokenKind::LParen, "'('");
        fn.params = parseParams();
        expect(TokenKind::RParen, "')'");
        if (at(TokenKind::Lt)) {
            Token open = take();
            Token bound = expectIdent("a contract name in the caller annotation");
            Token close = expect(TokenKind::Gt, "'>'");
            fn.callerAnn.kind = CallerAnnotation::Kind::Named;
            fn.callerAnn.name = bound.text;
            fn.callerAnn.span = mergeSpans(open.span, close.span);
        } else if (at(TokenKind::KwPayback)) {
            Token pb = take();
            fn.callerAnn.kind = CallerAnnotation::Kind::Payback;
            fn.callerAnn.span = pb.span;
        }
        switch (cur().kind) {
        case TokenKind::KwExternal: fn.visibility = Visibility::External; break;
        case TokenKind::KwPublic: fn.visibility = Visibility::Public; break;
        case TokenKind::KwPrivate: fn.visibility = Visibility::Private; break;
        default: fail(expectedMessage("a visibility ('external', 'public' or 'private')"));
        }
        take();
        if (at(TokenKind::KwPayable)) {
            take();
            fn.payable = true;
        }
        if (at(TokenKind::KwReturns)) {
            take();
            expect(TokenKind::LParen, "'('");
            fn.returnType = parseType();
            expect(TokenKind::RParen, "')'");
        }
        SourceSpan bodyEnd;
        fn.body = parseBlock(bodyEnd);
        fn.span = mergeSpans(kw.span, bodyEnd);
        return fn;
    }

    std::vector<Param> parseParams() {
        std::vector<Param> params;
        if (at(TokenKind::RParen)) return params;
        while (true) {
            Param p;
            Token first = cur();
            p.type = parseType();
            Token name = expectIdent("a parameter name");
            p.name = name.text;
            p.span = mergeSpans(first.span, name.span);
            params.push_back(std::move(p));
            if (!at(TokenKind::Comma)) break;
            take();
        }
        return params;
    }

    TypeRepr parseType() {
        switch (cur().kind) {
        case TokenKind::KwUInt: take(); return TypeRepr::uintType();
        case TokenKind::KwUInt160: take(); return TypeRepr::uint160Type();
        case TokenKind::KwBool: take(); return TypeRepr::boolType();
        case TokenKind::KwAddress: {
            take();
            if (at(TokenKind::KwPayable)) {
                take();
                return TypeRepr::payableAddress();
            }
            if (at(TokenKind::Lt)) {
                take();
                Token name = expectIdent("a contract name");
                expect(TokenKind::Gt, "'>'");
                return TypeRepr::refAddress(name.text);
            }
            return TypeRepr::bareAddress();
        }
        case TokenKind::Identifier: {
            Token name = take();
            return TypeRepr::contract(name.text);
        }
        default: fail(expectedMessage("a type"));
        }
    }

    std::vector<Stmt> parseBlock(SourceSpan& closeSpan) {
        expect(TokenKind::LBrace, "'{'");
        std::vector<Stmt> body;
        while (!at(TokenKind::RBrace) && !at(TokenKind::Eof)) {
            try {
                body.push_back(parseStmt());
            } catch (const Bail&) {
                skipToStmtBoundary();
            }
        }
        Token rb = expect(TokenKind::RBrace, "'}'");
        closeSpan = rb.span;
        return body;
    }

    Stmt parseStmt() {
        switch (cur().kind) {
        case TokenKind::KwReturn: {
            Token kw = take();
            ReturnStmt ret;
            if (!at(TokenKind::Semicolon)) ret.value = parseExpr();
            Token semi = expect(TokenKind::Semicolon, "';'");
            Stmt s;
            s.span = mergeSpans(kw.span, semi.span);
            s.node = std::move(ret);
            return s;
        }
        case TokenKind::KwRequire: {
            Token kw = take();
            expect(TokenKind::LParen, "'('");
            Expr cond = parseExpr();
            expect(TokenKind::RParen, "')'");
            Token semi = expect(TokenKind::Semicolon, "';'");
            Stmt s;
            s.span = mergeSpans(kw.span, semi.span);
            s.node = RequireStmt{std::move(cond)};
            return s;
        }
        case TokenKind::KwIf: {
            Token kw = take();
            expect(TokenKind::LParen, "'('");
            Expr cond = parseExpr();
            expect(TokenKind::RParen, "')'");
            SourceSpan thenEnd;
            IfStmt node;
            node.condition = std::move(cond);
            node.thenBody = parseBlock(thenEnd);
            SourceSpan end = thenEnd;
            if (at(TokenKind::KwElse)) {
                take();
                SourceSpan elseEnd;
                node.elseBody = parseBlock(elseEnd);
                end = elseEnd;
            }
            Stmt s;
            s.span = mergeSpans(kw.span, end);
            s.node = std::move(node);
            return s;
        }
        case TokenKind::KwUInt:
        case TokenKind::KwBool:
            return parseLocalDecl();
        case TokenKind::KwUInt160:
        case TokenKind::KwAddress:
            if (peekAhead(1).kind == TokenKind::LParen) return parseExprStmt();
            return parseLocalDecl();
        case TokenKind::Identifier:
            if (peekAhead(1).kind == TokenKind::Identifier) return parseLocalDecl();
            if (peekAhead(1).kind == TokenKind::Assign) {
                Token name = take();
                take(); // '='
                Expr value = parseExpr();
                Token semi = expect(TokenKind::Semicolon, "';'");
                Stmt s;
                s.span = mergeSpans(name.span, semi.span);
                s.node = AssignStmt{name.text, std::move(value)};
                return s;
            }
            return parseExprStmt();
        default:
            return parseExprStmt();
        }
    }

    Stmt parseLocalDecl() {
        Token first = cur();
        LocalDeclStmt decl;
        decl.type = parseType();
        Token name = expectIdent("a local variable name");
        decl.name = name.text;
        expect(TokenKind::Assign, "'=' (local declarations require an initializer)");
        decl.init = parseExpr();
        Token semi = expect(TokenKind::Semicolon, "';'");
        Stmt s;
        s.span = mergeSpans(first.span, semi.span);
        s.node = std::move(decl);
        return s;
    }

    Stmt parseExprStmt() {
        Expr e = parseExpr();
        Token semi = expect(TokenKind::Semicolon, "';'");
        Stmt s;
        s.span = mergeSpans(e.span, semi.span);
        s.node = ExprStmt{std::move(e)};
        return s;
    }

    Expr parseExpr() { return parseOr(); }

    Expr parseOr() {
        Expr e = parseAnd();
        while (at(TokenKind::OrOr)) {
            take();
            Expr rhs = parseAnd();
            e = makeBinary(BinaryOp::Or, std::move(e), std::move(rhs));
        }
        return e;
    }

    Expr parseAnd() {
        Expr e = parseEquality();
        while (at(TokenKind::AndAnd)) {
            take();
            Expr rhs = parseEquality();
            e = makeBinary(BinaryOp::And, std::move(e), std::move(rhs));
        }
        return e;
    }

    Expr parseEquality() {
        Expr e = parseRelational();
        while (at(TokenKind::EqEq) || at(TokenKind::NotEq)) {
            BinaryOp op = at(TokenKind::EqEq) ? BinaryOp::Eq : BinaryOp::Ne;
            take();
            Expr rhs = parseRelational();
            e = makeBinary(op, std::move(e), std::move(rhs));
        }
        return e;
    }

    Expr parseRelational() {
        Expr e = parseAdditive();
        while (at(TokenKind::Lt) || at(TokenKind::Le) || at(TokenKind::Gt) ||
               at(TokenKind::Ge)) {
            BinaryOp op = BinaryOp::Lt;
            if (at(TokenKind::Le)) op = BinaryOp::Le;
            if (at(TokenKind::Gt)) op = BinaryOp::Gt;
            if (at(TokenKind::Ge)) op = BinaryOp::Ge;
            take();
            Expr rhs = parseAdditive();
            e = makeBinary(op, std::move(e), std::move(rhs));
        }
        return e;
    }

    Expr parseAdditive() {
        Expr e = parseMultiplicative();
        while (at(TokenKind::Plus) || at(TokenKind::Minus)) {
            BinaryOp op = at(TokenKind::Plus) ? BinaryOp::Add : BinaryOp::Sub;
            take();
            Expr rhs = parseMultiplicative();
            e = makeBinary(op, std::move(e), std::move(rhs));
        }
        return e;
    }

    Expr parseMultiplicative() {
        Expr e = parseUnary();
        while (at(TokenKind::Star)) {
            take();
            Expr rhs = parseUnary();
            e = makeBinary(BinaryOp::Mul, std::move(e), std::move(rhs));
        }
        return e;
    }

    Expr makeBinary(BinaryOp op, Expr lhs, Expr rhs) {
        SourceSpan span = mergeSpans(lhs.span, rhs.span);
        BinaryExpr node;
        node.op = op;
        node.lhs = std::make_unique<Expr>(std::move(lhs));
        node.rhs = std::make_unique<Expr>(std::move(rhs));
        return makeExpr(std::move(span), std::move(node));
    }

    Expr parseUnary() {
        if (at(TokenKind::Not)) {
            Token bang = take();
            Expr operand = parseUnary();
            SourceSpan span = mergeSpans(bang.span, operand.span);
            return makeExpr(std::move(span), NotExpr{std::make_unique<Expr>(std::move(operand))});
        }
        return parsePostfix();
    }

    Expr parsePostfix() {
        Expr e = parsePrimary();
        while (at(TokenKind::Dot)) {
            take();
            if (at(TokenKind::KwTransfer)) {
                take();
                expect(TokenKind::LParen, "'('");
                Expr amount = parseExpr();
                Token rp = expect(TokenKind::RParen, "')'");
                SourceSpan span = mergeSpans(e.span, rp.span);
                TransferExpr node;
                node.receiver = std::make_unique<Expr>(std::move(e));
                node.amount = std::make_unique<Expr>(std::move(amount));
                e = makeExpr(std::move(span), std::move(node));
            } else if (at(TokenKind::KwBalance)) {
                Token b = take();
                SourceSpan span = mergeSpans(e.span, b.span);
                e = makeExpr(std::move(span), BalanceExpr{std::make_unique<Expr>(std::move(e))});
            } else if (at(TokenKind::Identifier)) {
                Token name = take();
                expect(TokenKind::LParen, "'('");
                CallExpr node;
                node.function = name.text;
                if (!at(TokenKind::RParen)) {
                    while (true) {
                        node.args.push_back(parseExpr());
                        if (!at(TokenKind::Comma)) break;
                        take();
                    }
                }
                Token rp = expect(TokenKind::RParen, "')'");
                SourceSpan span = mergeSpans(e.span, rp.span);
                node.receiver = std::make_unique<Expr>(std::move(e));
                e = makeExpr(std::move(span), std::move(node));
            } else {
                fail(expectedMessage("a function name, 'transfer' or 'balance' after '.'"));
            }
        }
        return e;
    }

    Expr parsePrimary() {
        switch (cur().kind) {
        case TokenKind::IntLiteral: {
            Token t = take();
            return makeExpr(t.span, IntLit{t.intValue});
        }
        case TokenKind::AddressLiteral: {
            Token t = take();
            return makeExpr(t.span, AddrLit{t.addrValue});
        }
        case TokenKind::KwTrue: {
            Token t = take();
            return makeExpr(t.span, BoolLit{true});
        }
        case TokenKind::KwFalse: {
            Token t = take();
            return makeExpr(t.span, BoolLit{false});
        }
        case TokenKind::KwThis: {
            Token t = take();
            return makeExpr(t.span, ThisRef{});
        }
        case TokenKind::KwMsg: {
            Token t = take();
            expect(TokenKind::Dot, "'.' after 'msg'");
            Token member = expectIdent("'sender' or 'value' after 'msg.'");
            if (member.text == "sender")
                return makeExpr(mergeSpans(t.span, member.span), MsgSenderRef{});
            if (member.text == "value")
                return makeExpr(mergeSpans(t.span, member.span), MsgValueRef{});
            report(member.span, "expected 'sender' or 'value' after 'msg.'");
            throw Bail{};
        }
        case TokenKind::LParen: {
            Token lp = take();
            Expr inner = parseExpr();
            Token rp = expect(TokenKind::RParen, "')'");
            inner.span = mergeSpans(lp.span, rp.span);
            return inner;
        }
        case TokenKind::KwAddress: {
            Token t = take();
            expect(TokenKind::LParen, "'(' ('address' in an expression is a cast)");
            Expr operand = parseExpr();
            Token rp = expect(TokenKind::RParen, "')'");
            CastExpr node;
            node.kind = CastKind::ToAddress;
            node.operand = std::make_unique<Expr>(std::move(operand));
            return makeExpr(mergeSpans(t.span, rp.span), std::move(node));
        }
        case TokenKind::KwUInt160: {
            Token t = take();
            expect(TokenKind::LParen, "'(' ('uint160' in an expression is a cast)");
            Expr operand = parseExpr();
            Token rp = expect(TokenKind::RParen, "')'");
            CastExpr node;
            node.kind = CastKind::ToUInt160;
            node.operand = std::make_unique<Expr>(std::move(operand));
            return makeExpr(mergeSpans(t.span, rp.span), std::move(node));
        }
        case TokenKind::Identifier: {
            Token name = take();
            if (at(TokenKind::LParen)) {
                take();
                Expr operand = parseExpr();
                Token rp = expect(TokenKind::RParen, "')'");
                CastExpr node;
                node.kind = CastKind::ToContract;
                node.contractName = name.text;
                node.operand = std::make_unique<Expr>(std::move(operand));
                return makeExpr(mergeSpans(name.span, rp.span), std::move(node));
            }
            return makeExpr(name.span, VarRef{name.text});
        }
        default:
            fail(expectedMessage("an expression"));
        }
    }
};

} // namespace

ParseResult parse(std::string_view source, const std::string& fileName) {
    ParseResult result;
    LexResult lexed = lex(source, fileName);
    result.diagnostics = std::move(lexed.diagnostics);
    Parser parser(std::move(lexed.tokens), result.diagnostics);
    result.program = parser.run();
    return result;
}

} // namespace fsol
