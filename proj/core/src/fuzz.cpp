// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "fsol/fuzz.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "fsol/check_baseline.hpp"
#include "fsol/check_refined.hpp"
#include "fsol/contract_table.hpp"
#include "fsol/pretty.hpp"
#include "fsol/vm.hpp"
#include "json.hpp"

namespace fsol {

uint64_t Rng::below(uint64_t n) {
    if (n <= 1) return 0;
    const uint64_t limit =
        std::numeric_limits<uint64_t>::max() - std::numeric_limits<uint64_t>::max() % n;
    uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
}

uint64_t deriveCaseSeed(uint64_t campaignSeed, uint64_t index) {
    // splitmix64 finalizer; decorrelates neighbouring indices.
    uint64_t z = campaignSeed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace {

constexpr uint64_t kProgramStream = 0x50524F47; // distinct sub-streams per phase
constexpr uint64_t kScenarioStream = 0x5343454E;

SourceSpan noSpan() { return SourceSpan{}; }

Expr intLit(U256 v) { return makeExpr(noSpan(), IntLit{std::move(v)}); }
Expr boolLit(bool v) { return makeExpr(noSpan(), BoolLit{v}); }
Expr varRef(std::string name) { return makeExpr(noSpan(), VarRef{std::move(name)}); }
Expr thisRef() { return makeExpr(noSpan(), ThisRef{}); }
Expr senderRef() { return makeExpr(noSpan(), MsgSenderRef{}); }
Expr valueRef() { return makeExpr(noSpan(), MsgValueRef{}); }

ExprPtr box(Expr e) { return std::make_unique<Expr>(std::move(e)); }

Expr castTo(CastKind kind, std::string contractName, Expr operand) {
    return makeExpr(noSpan(), CastExpr{kind, std::move(contractName), box(std::move(operand))});
}

Expr launder(Expr inner) {
    return castTo(CastKind::ToAddress, {}, castTo(CastKind::ToUInt160, {}, std::move(inner)));
}

Expr binary(BinaryOp op, Expr lhs, Expr rhs) {
    return makeExpr(noSpan(), BinaryExpr{op, box(std::move(lhs)), box(std::move(rhs))});
}

Stmt exprStmt(Expr e) { return Stmt{noSpan(), ExprStmt{std::move(e)}}; }

Stmt localDecl(TypeRepr type, std::string name, Expr init) {
    return Stmt{noSpan(), LocalDeclStmt{std::move(type), std::move(name), std::move(init)}};
}

Stmt assignStmt(std::string target, Expr value) {
    return Stmt{noSpan(), AssignStmt{std::move(target), std::move(value)}};
}

struct VarInfo {
    std::string name;
    TypeRepr type;
};

struct BodyCtx {
    size_t contractIdx = 0;
    std::string callerBound = kTopName;
    bool payableFn = false;
    std::vector<VarInfo> vars; // fields, then params, then locals
    int localCount = 0;

    std::string freshLocal() { return "x" + std::to_string(localCount++); }
};

struct ContractPlan {
    std::string name;
    std::optional<size_t> parent;
    bool ownFallback = false;
    bool hasFallback = false;
};

class Generator {
public:
    Generator(const GenConfig& cfg)
        : cfg_(cfg),
          rng_(deriveCaseSeed(cfg.seed, kProgramStream)),
          budget_(cfg.sizeBudget),
          refined_(cfg.mode == GenConfig::Mode::RefinedSound) {}

    Program run() {
        if (budget_ <= 0) return {};
        const size_t n = 1 + rng_.below(static_cast<uint64_t>(std::max(1, cfg_.maxContracts)));
        for (size_t i = 0; i < n; ++i) {
            ContractPlan pl;
            pl.name = "C" + std::to_string(i);
            if (i > 0 && rng_.chance(35)) pl.parent = rng_.below(i);
            pl.ownFallback = rng_.chance(45);
            pl.hasFallback = pl.ownFallback || (pl.parent && plan_[*pl.parent].hasFallback);
            plan_.push_back(pl);
        }
        for (size_t i = 0; i < n; ++i) buildContract(i);
        Program p;
        p.contracts = std::move(decls_);
        return p;
    }

private:
    GenConfig cfg_;
    Rng rng_;
    int budget_;
    bool refined_;
    std::vector<ContractPlan> plan_;
    std::vector<ContractDecl> decls_;

    void spend() { --budget_; }

    // ---- hierarchy queries over the plan (the table does not exist yet) ----

    std::optional<size_t> indexOf(const std::string& name) const {
        for (size_t i = 0; i < plan_.size(); ++i)
            if (plan_[i].name == name) return i;
        return std::nullopt;
    }

    bool idxLe(size_t a, size_t b) const {
        for (std::optional<size_t> cur = a; cur; cur = plan_[*cur].parent)
            if (*cur == b) return true;
        return false;
    }

    // Generator-side subtype check over bound names (Top, Top_fb, or contract).
    bool nameLe(const std::string& a, const std::string& b) const {
        if (a == b) return true;
        if (b == kTopName) return true;
        if (b == kTopFbName) {
            auto ia = indexOf(a);
            return ia && plan_[*ia].hasFallback;
        }
        if (a == kTopName || a == kTopFbName) return false;
        auto ia = indexOf(a), ib = indexOf(b);
        return ia && ib && idxLe(*ia, *ib);
    }

    std::string boundOf(const TypeRepr& t) const {
        switch (t.kind) {
        case TypeKind::BareAddress: return kTopName;
        case TypeKind::PayableAddress: return kTopFbName;
        case TypeKind::RefAddress: return t.contractName;
        default: return kTopName;
        }
    }

    std::vector<size_t> selfAndAncestors(size_t i) const {
        std::vector<size_t> out;
        for (std::optional<size_t> cur = i; cur; cur = plan_[*cur].parent) out.push_back(*cur);
        return out;
    }

    std::vector<const FunctionDecl*> callableFunctions(size_t i) const {
        std::vector<const FunctionDecl*> out;
        for (size_t idx : selfAndAncestors(i)) {
            // Forward references (a parameter bound on a later contract) are
            // legal source; that contract just has nothing callable yet.
            if (idx >= decls_.size()) continue;
            for (const FunctionDecl& f : decls_[idx].functions) out.push_back(&f);
        }
        return out;
    }

    std::vector<VarInfo> inheritedFields(size_t i) const {
        std::vector<VarInfo> out;
        auto chain = selfAndAncestors(i);
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            if (*it >= decls_.size()) continue;
            for (const StateVarDecl& sv : decls_[*it].stateVars) out.push_back({sv.name, sv.type});
        }
        return out;
    }

    // ---- typed expression synthesis ----

    std::vector<const VarInfo*> varsWhere(const BodyCtx& c,
                                          const std::function<bool(const TypeRepr&)>& pred) const {
        std::vector<const VarInfo*> out;
        for (const VarInfo& v : c.vars)
            if (pred(v.type)) out.push_back(&v);
        return out;
    }

    Expr uintExpr(BodyCtx& c, int depth) {
        auto uintVars = varsWhere(c, [](const TypeRepr& t) { return t.kind == TypeKind::UInt; });
        auto addrVars = varsWhere(c, [](const TypeRepr& t) { return t.isAddressLike(); });
        for (;;) {
            switch (rng_.below(6)) {
            case 0:
            case 1: return intLit(U256(rng_.below(100)));
            case 2:
                if (!uintVars.empty()) return varRef(rng_.pick(uintVars)->name);
                break;
            case 3:
                if (rng_.chance(50)) return valueRef();
                return makeExpr(noSpan(), BalanceExpr{box(thisRef())});
            case 4:
                if (!addrVars.empty())
                    return makeExpr(noSpan(), BalanceExpr{box(varRef(rng_.pick(addrVars)->name))});
                break;
            case 5:
                if (depth > 0) {
                    BinaryOp op = rng_.chance(60) ? BinaryOp::Add
                                                  : (rng_.chance(50) ? BinaryOp::Sub : BinaryOp::Mul);
                    return binary(op, uintExpr(c, depth - 1), uintExpr(c, depth - 1));
                }
                break;
            }
        }
    }

    Expr boolExpr(BodyCtx& c, int depth) {
        auto boolVars = varsWhere(c, [](const TypeRepr& t) { return t.kind == TypeKind::Bool; });
        auto addrVars = varsWhere(c, [](const TypeRepr& t) { return t.isAddressLike(); });
        for (;;) {
            switch (rng_.below(6)) {
            case 0: return boolLit(rng_.chance(50));
            case 1:
                if (!boolVars.empty()) return varRef(rng_.pick(boolVars)->name);
                break;
            case 2: {
                static const BinaryOp cmps[] = {BinaryOp::Lt, BinaryOp::Le, BinaryOp::Gt,
                                                BinaryOp::Ge, BinaryOp::Eq, BinaryOp::Ne};
                BinaryOp op = cmps[rng_.below(6)];
                return binary(op, uintExpr(c, 0), uintExpr(c, 0));
            }
            case 3:
                if (!addrVars.empty()) {
                    Expr lhs = varRef(rng_.pick(addrVars)->name);
                    Expr rhs = rng_.chance(40) ? senderRef() : varRef(rng_.pick(addrVars)->name);
                    return binary(rng_.chance(50) ? BinaryOp::Eq : BinaryOp::Ne, std::move(lhs),
                                  std::move(rhs));
                }
                break;
            case 4:
                if (depth > 0) return makeExpr(noSpan(), NotExpr{box(boolExpr(c, depth - 1))});
                break;
            case 5:
                if (depth > 0)
                    return binary(rng_.chance(50) ? BinaryOp::And : BinaryOp::Or,
                                  boolExpr(c, depth - 1), boolExpr(c, depth - 1));
                break;
            }
        }
    }

    // Refined mode: an address expression whose static bound is <= target.
    // Laundering, address(this) and address(contract) only feed bare slots so
    // that erasing the program to legacy types never creates a type error.
    std::optional<Expr> refinedAddrExpr(BodyCtx& c, const std::string& target) {
        struct Cand {
            int tag;
            const VarInfo* var = nullptr;
        };
        std::vector<Cand> cands;
        for (const VarInfo& v : c.vars) {
            if (v.type.isAddressLike() && nameLe(boundOf(v.type), target)) cands.push_back({0, &v});
            if (target == kTopName && v.type.kind == TypeKind::Contract) cands.push_back({4, &v});
        }
        if (nameLe(c.callerBound, target)) cands.push_back({1});
        if (target == kTopName) {
            cands.push_back({2});
            cands.push_back({3});
        }
        if (cands.empty()) return std::nullopt;
        const Cand& pick = cands[rng_.below(cands.size())];
        switch (pick.tag) {
        case 0: return varRef(pick.var->name);
        case 1: return senderRef();
        case 2: {
            auto addrVars = varsWhere(c, [](const TypeRepr& t) { return t.isAddressLike(); });
            Expr inner = addrVars.empty() ? senderRef() : varRef(rng_.pick(addrVars)->name);
            return launder(std::move(inner));
        }
        case 3: return castTo(CastKind::ToAddress, {}, thisRef());
        default: return castTo(CastKind::ToAddress, {}, varRef(pick.var->name));
        }
    }

    // Baseline mode: payable-typed or bare-typed address expression.
    Expr baselineAddrExpr(BodyCtx& c, bool needPayable) {
        struct Cand {
            int tag;
            const VarInfo* var = nullptr;
        };
        std::vector<Cand> cands;
        for (const VarInfo& v : c.vars) {
            bool ok = needPayable ? v.type.kind == TypeKind::PayableAddress : v.type.isAddressLike();
            if (ok) cands.push_back({0, &v});
            if (!needPayable && v.type.kind == TypeKind::Contract) cands.push_back({4, &v});
        }
        cands.push_back({1});
        cands.push_back({2});
        if (!needPayable) cands.push_back({3});
        const Cand& pick = cands[rng_.below(cands.size())];
        switch (pick.tag) {
        case 0: return varRef(pick.var->name);
        case 1: return senderRef();
        case 2: {
            auto addrVars = varsWhere(c, [](const TypeRepr& t) { return t.isAddressLike(); });
            Expr inner = addrVars.empty() ? senderRef() : varRef(rng_.pick(addrVars)->name);
            return launder(std::move(inner));
        }
        case 3: return castTo(CastKind::ToAddress, {}, thisRef());
        default: return castTo(CastKind::ToAddress, {}, varRef(pick.var->name));
        }
    }

    bool canSynthesizeArg(BodyCtx& c, const TypeRepr& param, Visibility vis) {
        switch (param.kind) {
        case TypeKind::UInt:
        case TypeKind::Bool: return true;
        case TypeKind::BareAddress: return true;
        case TypeKind::PayableAddress:
            if (!refined_ && vis == Visibility::External) return true; // erased to bare
            if (!refined_) return true;                                // msg.sender is payable
            return refinedAddrExprFeasible(c, kTopFbName);
        case TypeKind::RefAddress: return refined_ && refinedAddrExprFeasible(c, param.contractName);
        default: return false;
        }
    }

    bool refinedAddrExprFeasible(BodyCtx& c, const std::string& target) {
        for (const VarInfo& v : c.vars)
            if (v.type.isAddressLike() && nameLe(boundOf(v.type), target)) return true;
        if (nameLe(c.callerBound, target)) return true;
        return target == kTopName;
    }

    Expr synthesizeArg(BodyCtx& c, const TypeRepr& param, Visibility vis) {
        switch (param.kind) {
        case TypeKind::UInt: return uintExpr(c, 1);
        case TypeKind::Bool: return boolExpr(c, 1);
        case TypeKind::BareAddress:
            if (refined_) return *refinedAddrExpr(c, kTopName);
            return baselineAddrExpr(c, false);
        case TypeKind::PayableAddress:
            if (refined_) return *refinedAddrExpr(c, kTopFbName);
            // External callees erase payable params to bare at the call site.
            return baselineAddrExpr(c, vis != Visibility::External);
        case TypeKind::RefAddress: return *refinedAddrExpr(c, param.contractName);
        default: return intLit(U256(0));
        }
    }

    // ---- statements ----

    bool emitCallStmt(BodyCtx& c, std::vector<Stmt>& out) {
        struct Target {
            bool viaThis;
            std::string viaVar;
            std::string viaVarContract;
            const FunctionDecl* fn;
        };
        std::vector<Target> targets;
        auto consider = [&](bool viaThis, const std::string& var, const std::string& contractName,
                            size_t cIdx) {
            for (const FunctionDecl* f : callableFunctions(cIdx)) {
                if (f->visibility == Visibility::Private && !viaThis) continue;
                if (refined_ && !nameLe(plan_[c.contractIdx].name, f->callerAnn.boundName()))
                    continue;
                bool ok = true;
                for (const Param& p : f->params)
                    if (!canSynthesizeArg(c, p.type, f->visibility)) ok = false;
                if (ok) targets.push_back({viaThis, var, contractName, f});
            }
        };
        consider(true, {}, plan_[c.contractIdx].name, c.contractIdx);
        for (const VarInfo& v : c.vars)
            if (v.type.kind == TypeKind::Contract)
                if (auto idx = indexOf(v.type.contractName)) consider(false, v.name, v.type.contractName, *idx);
        if (targets.empty()) return false;
        const Target& t = targets[rng_.below(targets.size())];
        CallExpr call;
        call.receiver = box(t.viaThis ? thisRef() : varRef(t.viaVar));
        call.function = t.fn->name;
        for (const Param& p : t.fn->params)
            call.args.push_back(synthesizeArg(c, p.type, t.fn->visibility));
        Expr e = makeExpr(noSpan(), CallExpr{std::move(call.receiver), call.function,
                                             std::move(call.args)});
        if (t.fn->returnType && rng_.chance(50)) {
            std::string name = c.freshLocal();
            out.push_back(localDecl(*t.fn->returnType, name, std::move(e)));
            c.vars.push_back({name, *t.fn->returnType});
        } else {
            out.push_back(exprStmt(std::move(e)));
        }
        return true;
    }

    Expr transferAmount(BodyCtx& c) {
        if (c.payableFn && rng_.chance(20)) return valueRef();
        // Occasionally ask for more than anyone holds, to exercise the
        // insufficient-balance rollback.
        if (rng_.chance(15)) return intLit(U256(1 + rng_.below(100000)));
        return intLit(U256(1 + rng_.below(30)));
    }

    bool emitTransferStmt(BodyCtx& c, std::vector<Stmt>& out) {
        Expr amount = transferAmount(c);
        if (refined_) {
            auto recv = refinedAddrExpr(c, kTopFbName);
            if (!recv) return false;
            out.push_back(exprStmt(
                makeExpr(noSpan(), TransferExpr{box(std::move(*recv)), box(std::move(amount))})));
            return true;
        }
        Expr recv = baselineAddrExpr(c, true);
        out.push_back(
            exprStmt(makeExpr(noSpan(), TransferExpr{box(std::move(recv)), box(std::move(amount))})));
        return true;
    }

    void emitLocalUInt(BodyCtx& c, std::vector<Stmt>& out) {
        std::string name = c.freshLocal();
        out.push_back(localDecl(TypeRepr::uintType(), name, uintExpr(c, 1)));
        c.vars.push_back({name, TypeRepr::uintType()});
    }

    void emitLocalBool(BodyCtx& c, std::vector<Stmt>& out) {
        std::string name = c.freshLocal();
        out.push_back(localDecl(TypeRepr::boolType(), name, boolExpr(c, 1)));
        c.vars.push_back({name, TypeRepr::boolType()});
    }

    void emitLocalAddr(BodyCtx& c, std::vector<Stmt>& out) {
        std::string name = c.freshLocal();
        if (refined_) {
            if (rng_.chance(30)) {
                // Closed loophole: uint160 round-trips land on the top bound.
                Expr src = *refinedAddrExpr(c, kTopName);
                out.push_back(localDecl(TypeRepr::bareAddress(), name, std::move(src)));
                c.vars.push_back({name, TypeRepr::bareAddress()});
                return;
            }
            // Pick a source, then declare the local at any supertype spelling.
            struct Src {
                std::string bound;
                bool sender;
                const VarInfo* var = nullptr;
            };
            std::vector<Src> srcs;
            for (const VarInfo& v : c.vars)
                if (v.type.isAddressLike()) srcs.push_back({boundOf(v.type), false, &v});
            srcs.push_back({c.callerBound, true});
            const Src& s = srcs[rng_.below(srcs.size())];
            std::vector<TypeRepr> spellings;
            spellings.push_back(TypeRepr::bareAddress());
            if (nameLe(s.bound, kTopFbName)) spellings.push_back(TypeRepr::payableAddress());
            if (auto idx = indexOf(s.bound))
                for (size_t anc : selfAndAncestors(*idx))
                    spellings.push_back(TypeRepr::refAddress(plan_[anc].name));
            TypeRepr declared = spellings[rng_.below(spellings.size())];
            Expr src = s.sender ? senderRef() : varRef(s.var->name);
            out.push_back(localDecl(declared, name, std::move(src)));
            c.vars.push_back({name, declared});
            return;
        }
        bool payable = rng_.chance(45);
        TypeRepr declared = payable ? TypeRepr::payableAddress() : TypeRepr::bareAddress();
        out.push_back(localDecl(declared, name, baselineAddrExpr(c, payable)));
        c.vars.push_back({name, declared});
    }

    bool emitLocalContract(BodyCtx& c, std::vector<Stmt>& out) {
        // Upcast an address or contract value into a contract-typed local.
        struct Src {
            bool fromContract;
            const VarInfo* var = nullptr;
            bool sender = false;
            std::string bound;
        };
        std::vector<Src> srcs;
        for (const VarInfo& v : c.vars) {
            if (v.type.kind == TypeKind::Contract) srcs.push_back({true, &v, false, v.type.contractName});
            if (refined_ && v.type.kind == TypeKind::RefAddress)
                srcs.push_back({false, &v, false, v.type.contractName});
        }
        if (refined_ && indexOf(c.callerBound)) srcs.push_back({false, nullptr, true, c.callerBound});
        if (!refined_) {
            // Unchecked in the baseline: any contract over any address.
            if (plan_.empty()) return false;
            size_t j = rng_.below(plan_.size());
            std::string name = c.freshLocal();
            TypeRepr ty = TypeRepr::contract(plan_[j].name);
            out.push_back(
                localDecl(ty, name, castTo(CastKind::ToContract, plan_[j].name, baselineAddrExpr(c, false))));
            c.vars.push_back({name, ty});
            return true;
        }
        if (srcs.empty()) return false;
        const Src& s = srcs[rng_.below(srcs.size())];
        auto idx = indexOf(s.bound);
        if (!idx) return false;
        auto chain = selfAndAncestors(*idx);
        size_t targetIdx = chain[rng_.below(chain.size())];
        const std::string& targetName = plan_[targetIdx].name;
        Expr operand = s.sender ? senderRef() : varRef(s.var->name);
        std::string name = c.freshLocal();
        TypeRepr ty = TypeRepr::contract(targetName);
        out.push_back(localDecl(ty, name, castTo(CastKind::ToContract, targetName, std::move(operand))));
        c.vars.push_back({name, ty});
        return true;
    }

    void emitAssign(BodyCtx& c, std::vector<Stmt>& out) {
        std::vector<const VarInfo*> targets;
        for (const VarInfo& v : c.vars)
            if (v.type.kind == TypeKind::UInt || v.type.kind == TypeKind::Bool) targets.push_back(&v);
        if (targets.empty()) {
            emitLocalUInt(c, out);
            return;
        }
        const VarInfo* t = rng_.pick(targets);
        Expr value = t->type.kind == TypeKind::UInt ? uintExpr(c, 1) : boolExpr(c, 1);
        out.push_back(assignStmt(t->name, std::move(value)));
    }

    void emitRequire(BodyCtx& c, std::vector<Stmt>& out) {
        Expr cond = rng_.chance(60) ? boolLit(true) : boolExpr(c, 1);
        out.push_back(Stmt{noSpan(), RequireStmt{std::move(cond)}});
    }

    void emitIf(BodyCtx& c, std::vector<Stmt>& out) {
        IfStmt node;
        node.condition = boolExpr(c, 1);
        size_t thenN = 1 + rng_.below(2);
        for (size_t i = 0; i < thenN && budget_ > 0; ++i) emitSimple(c, node.thenBody);
        if (node.thenBody.empty()) node.thenBody.push_back(exprStmt(uintExpr(c, 0)));
        if (rng_.chance(40)) {
            node.elseBody.emplace();
            if (budget_ > 0) emitSimple(c, *node.elseBody);
            if (node.elseBody->empty()) node.elseBody->push_back(exprStmt(uintExpr(c, 0)));
        }
        out.push_back(Stmt{noSpan(), std::move(node)});
    }

    // Branch bodies: no nested ifs, no new locals that escape anyway.
    void emitSimple(BodyCtx& c, std::vector<Stmt>& out) {
        spend();
        size_t before = c.vars.size();
        switch (rng_.below(4)) {
        case 0: emitAssign(c, out); break;
        case 1: emitRequire(c, out); break;
        case 2:
            if (emitTransferStmt(c, out)) break;
            emitAssign(c, out);
            break;
        default:
            emitLocalUInt(c, out);
            break;
        }
        // Locals declared inside a branch go out of scope with it.
        c.vars.resize(before);
    }

    void emitStmt(BodyCtx& c, std::vector<Stmt>& out) {
        spend();
        if (refined_) {
            uint64_t roll = rng_.below(100);
            if (roll < 14) emitLocalUInt(c, out);
            else if (roll < 22) emitLocalBool(c, out);
            else if (roll < 34) emitLocalAddr(c, out);
            else if (roll < 42) {
                if (!emitLocalContract(c, out)) emitLocalUInt(c, out);
            } else if (roll < 52) emitAssign(c, out);
            else if (roll < 60) emitRequire(c, out);
            else if (roll < 67) emitIf(c, out);
            else if (roll < 84) {
                if (!emitCallStmt(c, out)) emitLocalUInt(c, out);
            } else {
                if (!emitTransferStmt(c, out)) emitLocalUInt(c, out);
            }
            return;
        }
        uint64_t roll = rng_.below(100);
        if (roll < 16) {
            // The classic hole: launder an arbitrary address into payable, send to it.
            std::string name = c.freshLocal();
            out.push_back(localDecl(TypeRepr::payableAddress(), name,
                                    launder(baselineAddrExpr(c, false))));
            c.vars.push_back({name, TypeRepr::payableAddress()});
            out.push_back(exprStmt(
                makeExpr(noSpan(), TransferExpr{box(varRef(name)), box(transferAmount(c))})));
        } else if (roll < 26) {
            out.push_back(exprStmt(
                makeExpr(noSpan(), TransferExpr{box(senderRef()), box(transferAmount(c))})));
        } else if (roll < 42) {
            if (!emitBaselineCastCall(c, out)) emitLocalUInt(c, out);
        } else if (roll < 54) {
            if (!emitCallStmt(c, out)) emitLocalUInt(c, out);
        } else if (roll < 64) emitLocalUInt(c, out);
        else if (roll < 70) emitLocalBool(c, out);
        else if (roll < 80) emitLocalAddr(c, out);
        else if (roll < 86) {
            if (!emitLocalContract(c, out)) emitLocalUInt(c, out);
        } else if (roll < 92) emitAssign(c, out);
        else if (roll < 97) emitRequire(c, out);
        else emitIf(c, out);
    }

    bool emitBaselineCastCall(BodyCtx& c, std::vector<Stmt>& out) {
        // Cast a random address to a contract type, then call through it: the
        // static side is happy, the dynamic side may not speak the function.
        struct Target {
            size_t contractIdx;
            const FunctionDecl* fn;
        };
        std::vector<Target> targets;
        for (size_t j = 0; j < decls_.size(); ++j)
            for (const FunctionDecl* f : callableFunctions(j))
                if (f->visibility != Visibility::Private) targets.push_back({j, f});
        if (targets.empty()) return false;
        const Target& t = targets[rng_.below(targets.size())];
        Expr recv = castTo(CastKind::ToContract, plan_[t.contractIdx].name,
                           baselineAddrExpr(c, false));
        std::vector<Expr> args;
        for (const Param& p : t.fn->params) args.push_back(synthesizeArg(c, p.type, t.fn->visibility));
        out.push_back(exprStmt(
            makeExpr(noSpan(), CallExpr{box(std::move(recv)), t.fn->name, std::move(args)})));
        return true;
    }

    // ---- declarations ----

    TypeRepr pickFieldType(size_t i) {
        const bool haveEarlier = i > 0;
        for (;;) {
            uint64_t roll = rng_.below(100);
            if (roll < 30) return TypeRepr::uintType();
            if (roll < 45) return TypeRepr::boolType();
            if (roll < 55) return TypeRepr::bareAddress();
            if (roll < 65) return TypeRepr::payableAddress();
            if (!haveEarlier) continue;
            size_t j = rng_.below(i);
            if (refined_ && roll < 85) return TypeRepr::refAddress(plan_[j].name);
            if (!refined_ && roll < 85) continue; // no refined spellings in baseline programs
            return TypeRepr::contract(plan_[j].name);
        }
    }

    void buildContract(size_t i) {
        ContractDecl decl;
        decl.name = plan_[i].name;
        if (plan_[i].parent) decl.parent = plan_[*plan_[i].parent].name;

        size_t nFields = rng_.below(3);
        for (size_t k = 0; k < nFields; ++k) {
            StateVarDecl sv;
            sv.type = pickFieldType(i);
            sv.name = "v" + std::to_string(i) + "_" + std::to_string(k);
            decl.stateVars.push_back(std::move(sv));
        }

        decls_.push_back(std::move(decl));
        ContractDecl& self = decls_.back();

        buildConstructor(i, self);
        if (plan_[i].ownFallback) buildFallback(i, self);

        size_t nFns = rng_.below(static_cast<uint64_t>(std::max(1, cfg_.maxFunctions)) + 1);
        for (size_t k = 0; k < nFns; ++k) buildFunction(i, k, self);
    }

    // Constructors only bind parameters to fields, so deployment never
    // reverts and every address-typed field starts out meaningful. They
    // cover the inherited fields too: constructors do not chain, so the
    // deployed contract's own constructor is the only chance to give an
    // ancestor's contract-typed field a real account.
    void buildConstructor(size_t i, ContractDecl& self) {
        ConstructorDecl ctor;
        int argCount = 0;
        for (const VarInfo& sv : inheritedFields(i)) {
            std::string pname = "a" + std::to_string(argCount);
            switch (sv.type.kind) {
            case TypeKind::UInt:
                if (rng_.chance(50)) {
                    ctor.body.push_back(assignStmt(sv.name, intLit(U256(rng_.below(1000)))));
                    continue;
                }
                ctor.params.push_back({sv.type, pname, noSpan()});
                ctor.body.push_back(assignStmt(sv.name, varRef(pname)));
                break;
            case TypeKind::Bool:
                if (rng_.chance(50)) {
                    ctor.body.push_back(assignStmt(sv.name, boolLit(rng_.chance(50))));
                    continue;
                }
                ctor.params.push_back({sv.type, pname, noSpan()});
                ctor.body.push_back(assignStmt(sv.name, varRef(pname)));
                break;
            case TypeKind::Contract: {
                TypeRepr pty = refined_ ? TypeRepr::refAddress(sv.type.contractName)
                                        : TypeRepr::bareAddress();
                ctor.params.push_back({pty, pname, noSpan()});
                ctor.body.push_back(assignStmt(
                    sv.name, castTo(CastKind::ToContract, sv.type.contractName, varRef(pname))));
                break;
            }
            default:
                ctor.params.push_back({sv.type, pname, noSpan()});
                ctor.body.push_back(assignStmt(sv.name, varRef(pname)));
                break;
            }
            ++argCount;
        }
        if (!ctor.params.empty() || !ctor.body.empty()) self.ctor = std::move(ctor);
    }

    void buildFallback(size_t i, ContractDecl& self) {
        FallbackDecl fb;
        if (refined_) {
            if (rng_.chance(30))
                fb.body.push_back(localDecl(TypeRepr::uintType(), "x0",
                                            makeExpr(noSpan(), BalanceExpr{box(thisRef())})));
        } else {
            uint64_t roll = rng_.below(100);
            if (roll < 20)
                fb.body.push_back(localDecl(TypeRepr::uintType(), "x0", valueRef()));
            else if (roll < 45)
                fb.body.push_back(exprStmt(makeExpr(
                    noSpan(), TransferExpr{box(senderRef()), box(intLit(U256(1 + rng_.below(5))))})));
        }
        self.fallback = std::move(fb);
        (void)i;
    }

    void buildFunction(size_t i, size_t k, ContractDecl& self) {
        FunctionDecl fn;
        fn.name = "f" + std::to_string(i) + "_" + std::to_string(k);

        uint64_t vroll = rng_.below(100);
        fn.visibility = vroll < 45   ? Visibility::External
                        : vroll < 90 ? Visibility::Public
                                     : Visibility::Private;
        fn.payable = rng_.chance(30);
        if (refined_) {
            uint64_t aroll = rng_.below(100);
            if (aroll < 50) fn.callerAnn.kind = CallerAnnotation::Kind::Default;
            else if (aroll < 75) fn.callerAnn.kind = CallerAnnotation::Kind::Payback;
            else {
                fn.callerAnn.kind = CallerAnnotation::Kind::Named;
                fn.callerAnn.name = plan_[rng_.below(plan_.size())].name;
            }
        }

        size_t nParams = rng_.below(4);
        for (size_t p = 0; p < nParams; ++p) {
            TypeRepr pty;
            uint64_t roll = rng_.below(100);
            if (roll < 40) pty = TypeRepr::uintType();
            else if (roll < 60) pty = TypeRepr::boolType();
            else if (roll < 75) pty = TypeRepr::bareAddress();
            else if (roll < 85) pty = TypeRepr::payableAddress();
            else if (refined_) pty = TypeRepr::refAddress(plan_[rng_.below(plan_.size())].name);
            else pty = rng_.chance(50) ? TypeRepr::bareAddress() : TypeRepr::payableAddress();
            fn.params.push_back({pty, "p" + std::to_string(p), noSpan()});
        }

        uint64_t rroll = rng_.below(100);
        if (rroll < 60) fn.returnType = std::nullopt;
        else if (rroll < 85) fn.returnType = TypeRepr::uintType();
        else fn.returnType = TypeRepr::boolType();

        BodyCtx ctx;
        ctx.contractIdx = i;
        ctx.callerBound = refined_ ? fn.callerAnn.boundName() : std::string(kTopName);
        ctx.payableFn = fn.payable;
        ctx.vars = inheritedFields(i);
        for (const Param& p : fn.params) ctx.vars.push_back({p.name, p.type});

        size_t nStmts = 1 + rng_.below(5);
        for (size_t s = 0; s < nStmts && budget_ > 0; ++s) emitStmt(ctx, fn.body);
        if (fn.returnType) {
            Expr ret = fn.returnType->kind == TypeKind::UInt ? uintExpr(ctx, 1) : boolExpr(ctx, 1);
            fn.body.push_back(Stmt{noSpan(), ReturnStmt{std::move(ret)}});
        }
        self.functions.push_back(std::move(fn));
    }
};

// ---- scenario generation ----

bool scenarioExpressible(const TypeRepr& t) {
    switch (t.kind) {
    case TypeKind::UInt:
    case TypeKind::Bool:
    case TypeKind::BareAddress:
    case TypeKind::PayableAddress:
    case TypeKind::RefAddress: return true;
    default: return false;
    }
}

} // namespace

Program generateProgram(const GenConfig& cfg) { return Generator(cfg).run(); }

Scenario generateScenario(const GenConfig& cfg, const Program& p, const ContractTable& t) {
    Rng rng(deriveCaseSeed(cfg.seed, kScenarioStream));
    const bool refined = cfg.mode == GenConfig::Mode::RefinedSound;
    Scenario sc;

    size_t nEoas = 1 + rng.below(2);
    for (size_t e = 0; e < nEoas; ++e)
        sc.eoas.push_back({Address::fromU256(U256(0xE00 + e)), U256(1000 + rng.below(9000))});

    const size_t nc = p.contracts.size();
    auto deploymentAddr = [](size_t d) { return Address::fromU256(U256(0xA00 + d)); };

    auto eoaAddr = [&](Rng& r) { return sc.eoas[r.below(sc.eoas.size())].address; };

    // Constructor arguments may only reference already-deployed instances.
    auto makeCtorArgs = [&](const std::string& contractName, size_t limit) {
        std::vector<ScenarioValue> args;
        const ResolvedContract* rc = t.find(contractName);
        if (!rc || !rc->constructorDecl) return args;
        for (const Param& prm : rc->constructorDecl->params) {
            switch (prm.type.kind) {
            case TypeKind::UInt: args.push_back(ScenarioValue::ofUInt(U256(rng.below(1000)))); break;
            case TypeKind::Bool: args.push_back(ScenarioValue::ofBool(rng.chance(50))); break;
            case TypeKind::RefAddress: {
                std::vector<Address> cands;
                for (size_t d = 0; d < limit; ++d)
                    if (t.contractLe(sc.deployments[d].contract, prm.type.contractName))
                        cands.push_back(sc.deployments[d].address);
                args.push_back(ScenarioValue::ofAddr(cands.empty() ? eoaAddr(rng)
                                                                   : cands[rng.below(cands.size())]));
                break;
            }
            case TypeKind::PayableAddress: {
                std::vector<Address> cands;
                for (size_t d = 0; d < limit; ++d)
                    if (t.hasFallback(sc.deployments[d].contract))
                        cands.push_back(sc.deployments[d].address);
                if (refined || cands.empty() || rng.chance(60))
                    args.push_back(ScenarioValue::ofAddr(eoaAddr(rng)));
                else
                    args.push_back(ScenarioValue::ofAddr(cands[rng.below(cands.size())]));
                break;
            }
            default: {
                // Bare address: anything goes.
                if (limit > 0 && rng.chance(55))
                    args.push_back(ScenarioValue::ofAddr(sc.deployments[rng.below(limit)].address));
                else
                    args.push_back(ScenarioValue::ofAddr(eoaAddr(rng)));
                break;
            }
            }
        }
        return args;
    };

    for (size_t i = 0; i < nc; ++i) {
        ScenarioDeployment dep;
        dep.contract = p.contracts[i].name;
        dep.address = deploymentAddr(i);
        dep.balance = U256(50 + rng.below(950));
        dep.args = makeCtorArgs(dep.contract, sc.deployments.size());
        sc.deployments.push_back(std::move(dep));
    }
    size_t extras = 0;
    while (nc > 0 && extras < 2 && rng.chance(30)) {
        ScenarioDeployment dep;
        dep.contract = p.contracts[rng.below(nc)].name;
        dep.address = deploymentAddr(nc + extras);
        dep.balance = U256(50 + rng.below(950));
        dep.args = makeCtorArgs(dep.contract, sc.deployments.size());
        sc.deployments.push_back(std::move(dep));
        ++extras;
    }

    // Entry points: non-private, scenario-expressible parameters, and in
    // refined mode a caller bound an external account can satisfy.
    struct Entry {
        size_t depIdx;
        const FunctionDecl* fn;
    };
    std::vector<Entry> entries;
    for (size_t d = 0; d < sc.deployments.size(); ++d) {
        const ResolvedContract* rc = t.find(sc.deployments[d].contract);
        if (!rc) continue;
        for (const auto& [name, rf] : rc->functions) {
            const FunctionDecl* fn = rf.decl;
            if (fn->visibility == Visibility::Private) continue;
            if (refined) {
                std::string bound = fn->callerAnn.boundName();
                if (bound != kTopName && bound != kTopFbName) continue;
            }
            bool ok = true;
            for (const Param& prm : fn->params)
                if (!scenarioExpressible(prm.type)) ok = false;
            if (ok) entries.push_back({d, fn});
        }
    }

    if (!entries.empty() && !sc.eoas.empty()) {
        size_t nTxs = 1 + rng.below(static_cast<uint64_t>(std::max(1, cfg.maxTxs)));
        for (size_t i = 0; i < nTxs; ++i) {
            const Entry& en = entries[rng.below(entries.size())];
            ScenarioTx tx;
            tx.from = eoaAddr(rng);
            tx.to = sc.deployments[en.depIdx].address;
            tx.function = en.fn->name;
            tx.value = en.fn->payable ? U256(rng.below(100)) : U256(0);
            for (const Param& prm : en.fn->params) {
                switch (prm.type.kind) {
                case TypeKind::UInt: tx.args.push_back(ScenarioValue::ofUInt(U256(rng.below(1000)))); break;
                case TypeKind::Bool: tx.args.push_back(ScenarioValue::ofBool(rng.chance(50))); break;
                case TypeKind::RefAddress: {
                    std::vector<Address> cands;
                    for (const ScenarioDeployment& dep : sc.deployments)
                        if (t.contractLe(dep.contract, prm.type.contractName))
                            cands.push_back(dep.address);
                    tx.args.push_back(ScenarioValue::ofAddr(
                        cands.empty() ? eoaAddr(rng) : cands[rng.below(cands.size())]));
                    break;
                }
                case TypeKind::PayableAddress: {
                    if (refined) {
                        std::vector<Address> cands;
                        for (const ScenarioDeployment& dep : sc.deployments)
                            if (t.hasFallback(dep.contract)) cands.push_back(dep.address);
                        if (cands.empty() || rng.chance(60))
                            tx.args.push_back(ScenarioValue::ofAddr(eoaAddr(rng)));
                        else
                            tx.args.push_back(ScenarioValue::ofAddr(cands[rng.below(cands.size())]));
                    } else if (rng.chance(70) || sc.deployments.empty()) {
                        tx.args.push_back(ScenarioValue::ofAddr(eoaAddr(rng)));
                    } else {
                        // Hole probe: a contract address may not accept funds.
                        tx.args.push_back(ScenarioValue::ofAddr(
                            sc.deployments[rng.below(sc.deployments.size())].address));
                    }
                    break;
                }
                default: {
                    if (!sc.deployments.empty() && rng.chance(55))
                        tx.args.push_back(ScenarioValue::ofAddr(
                            sc.deployments[rng.below(sc.deployments.size())].address));
                    else
                        tx.args.push_back(ScenarioValue::ofAddr(eoaAddr(rng)));
                    break;
                }
                }
            }
            sc.transactions.push_back(std::move(tx));
        }
    }
    return sc;
}

// ---- evaluation ----

namespace {

std::string firstErrorText(const std::vector<Diagnostic>& diags) {
    for (const Diagnostic& d : diags)
        if (d.severity == Severity::Error) return d.code + ": " + d.message;
    return "unknown error";
}

bool forbiddenInRefined(RevertReason::Kind k) {
    return k == RevertReason::Kind::MessageNotUnderstood || k == RevertReason::Kind::NoFallback ||
           k == RevertReason::Kind::TypeConfusion;
}

} // namespace

CaseResult evaluateCase(const Program& p, const Scenario& sc, GenConfig::Mode mode) {
    CaseResult r;
    ResolveResult res = resolveHierarchy(p);
    if (!res.table) {
        r.violationKind = "resolve-failed";
        r.violationDetail = firstErrorText(res.diagnostics);
        return r;
    }
    r.resolved = true;
    const ContractTable& table = *res.table;

    std::vector<Diagnostic> diags = mode == GenConfig::Mode::RefinedSound
                                        ? checkRefined(p, table)
                                        : checkBaseline(p, table);
    if (hasErrors(diags)) {
        r.violationKind = "checker-rejected";
        r.violationDetail = firstErrorText(diags);
        return r;
    }
    r.accepted = true;

    if (mode == GenConfig::Mode::RefinedSound) {
        std::vector<Diagnostic> entry = validateEntryConstraints(sc, p, table, TypingMode::Refined);
        if (hasErrors(entry)) {
            r.violationKind = "entry-invalid";
            r.violationDetail = firstErrorText(entry);
            return r;
        }
    }
    r.entryValid = true;

    ChainState state;
    if (auto err = applyScenarioSetup(state, table, sc)) {
        r.violationKind = "deploy-failed";
        r.violationDetail = *err;
        return r;
    }
    r.deployOk = true;

    for (size_t i = 0; i < sc.transactions.size(); ++i) {
        const ScenarioTx& stx = sc.transactions[i];
        ChainState before = state;
        const U256 weiBefore = state.totalWei();
        Outcome out = execTransaction(state, table, buildTransaction(state, stx));
        ++r.txExecuted;
        if (out.success()) {
            ++r.successes;
        } else {
            ++r.revertHistogram[out.reason.name()];
            if (state != before) {
                r.violationKind = "rollback";
                r.violationDetail = "tx " + std::to_string(i) + " (" + stx.function +
                                    "): state changed across a revert with reason " +
                                    out.reason.name();
                return r;
            }
        }
        if (state.totalWei() != weiBefore) {
            r.violationKind = "wei";
            r.violationDetail = "tx " + std::to_string(i) + " (" + stx.function +
                                "): total wei changed from " + formatU256(weiBefore) + " to " +
                                formatU256(state.totalWei());
            return r;
        }
        if (mode == GenConfig::Mode::RefinedSound && !out.success() &&
            forbiddenInRefined(out.reason.kind)) {
            r.violationKind = "forbidden-revert";
            r.violationReason = out.reason.name();
            r.violationDetail = "tx " + std::to_string(i) + " (" + stx.function +
                                ") reverted: " + out.reason.describe();
            return r;
        }
    }
    return r;
}

// ---- shrinking ----

namespace {

bool stillViolates(const Program& p, const Scenario& sc, GenConfig::Mode mode,
                   const std::string& kind, const std::string& reason) {
    CaseResult r = evaluateCase(p, sc, mode);
    if (!r.accepted) return false; // a shrink must stay well-typed
    return r.violationKind == kind && r.violationReason == reason;
}

Scenario copyScenario(const Scenario& sc) { return sc; }

} // namespace

void shrinkCase(Program& p, Scenario& sc, GenConfig::Mode mode, const std::string& kind,
                const std::string& reason) {
    bool changed = true;
    while (changed) {
        changed = false;

        for (size_t i = 0; i < sc.transactions.size(); ++i) {
            Scenario cand = copyScenario(sc);
            cand.transactions.erase(cand.transactions.begin() + static_cast<long>(i));
            if (stillViolates(p, cand, mode, kind, reason)) {
                sc = std::move(cand);
                changed = true;
                break;
            }
        }
        if (changed) continue;

        for (size_t i = 0; i < sc.deployments.size(); ++i) {
            Scenario cand = copyScenario(sc);
            cand.deployments.erase(cand.deployments.begin() + static_cast<long>(i));
            if (stillViolates(p, cand, mode, kind, reason)) {
                sc = std::move(cand);
                changed = true;
                break;
            }
        }
        if (changed) continue;

        for (size_t i = 0; i < p.contracts.size(); ++i) {
            Program cand = cloneProgram(p);
            cand.contracts.erase(cand.contracts.begin() + static_cast<long>(i));
            if (stillViolates(cand, sc, mode, kind, reason)) {
                p = std::move(cand);
                changed = true;
                break;
            }
        }
        if (changed) continue;

        for (size_t ci = 0; ci < p.contracts.size() && !changed; ++ci) {
            for (size_t fi = 0; fi < p.contracts[ci].functions.size(); ++fi) {
                Program cand = cloneProgram(p);
                auto& fns = cand.contracts[ci].functions;
                fns.erase(fns.begin() + static_cast<long>(fi));
                if (stillViolates(cand, sc, mode, kind, reason)) {
                    p = std::move(cand);
                    changed = true;
                    break;
                }
            }
        }
        if (changed) continue;

        // Individual statements, innermost structure left intact.
        for (size_t ci = 0; ci < p.contracts.size() && !changed; ++ci) {
            ContractDecl& cd = p.contracts[ci];
            std::vector<std::vector<Stmt>*> bodies;
            for (FunctionDecl& f : cd.functions) bodies.push_back(&f.body);
            if (cd.ctor) bodies.push_back(&cd.ctor->body);
            if (cd.fallback) bodies.push_back(&cd.fallback->body);
            for (std::vector<Stmt>* body : bodies) {
                for (size_t si = 0; si < body->size(); ++si) {
                    Stmt saved = cloneStmt((*body)[si]);
                    body->erase(body->begin() + static_cast<long>(si));
                    if (stillViolates(p, sc, mode, kind, reason)) {
                        changed = true;
                        break;
                    }
                    body->insert(body->begin() + static_cast<long>(si), std::move(saved));
                }
                if (changed) break;
            }
        }
    }
}

// ---- campaign driver ----

namespace {

const char* modeLabel(GenConfig::Mode m) {
    return m == GenConfig::Mode::RefinedSound ? "refined-sound" : "baseline-holes";
}

struct PerCase {
    CaseResult result;
    uint64_t caseSeed = 0;
    Program program;
    Scenario scenario;
};

} // namespace

CampaignReport runCampaign(const GenConfig& base, size_t count, int jobs,
                           const std::string& reproducerDir) {
    CampaignReport rep;
    rep.mode = base.mode;
    rep.seed = base.seed;
    rep.count = count;

    std::vector<PerCase> cases(count);
    auto worker = [&](size_t start, size_t stride) {
        for (size_t i = start; i < count; i += stride) {
            GenConfig cfg = base;
            cfg.seed = deriveCaseSeed(base.seed, i);
            PerCase pc;
            pc.caseSeed = cfg.seed;
            pc.program = generateProgram(cfg);
            ResolveResult res = resolveHierarchy(pc.program);
            if (res.table) pc.scenario = generateScenario(cfg, pc.program, *res.table);
            pc.result = evaluateCase(pc.program, pc.scenario, cfg.mode);
            cases[i] = std::move(pc);
        }
    };

    const size_t nThreads = jobs > 1 ? std::min<size_t>(static_cast<size_t>(jobs), count ? count : 1)
                                     : 1;
    if (nThreads <= 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (size_t k = 0; k < nThreads; ++k) pool.emplace_back(worker, k, nThreads);
        for (std::thread& th : pool) th.join();
    }

    for (size_t i = 0; i < count; ++i) {
        PerCase& pc = cases[i];
        ++rep.programsGenerated;
        if (pc.result.accepted) ++rep.programsAccepted;
        rep.transactionsExecuted += pc.result.txExecuted;
        rep.successes += pc.result.successes;
        for (const auto& [reason, n] : pc.result.revertHistogram) rep.revertHistogram[reason] += n;

        if (!pc.result.violated()) continue;

        const std::string& kind = pc.result.violationKind;
        if (kind == "forbidden-revert" || kind == "rollback" || kind == "wei")
            shrinkCase(pc.program, pc.scenario, base.mode, kind, pc.result.violationReason);

        ViolationRecord rec;
        rec.caseIndex = i;
        rec.caseSeed = pc.caseSeed;
        rec.kind = kind;
        rec.reason = pc.result.violationReason;
        rec.detail = pc.result.violationDetail;
        rec.program = prettyPrint(pc.program);
        rec.scenarioJson = scenarioToJson(pc.scenario);

        if (!reproducerDir.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(reproducerDir, ec);
            const std::string stem = reproducerDir + "/seed-" + std::to_string(pc.caseSeed);
            std::ofstream(stem + ".fsol") << rec.program;
            std::ofstream(stem + ".scenario.json") << rec.scenarioJson;
        }
        rep.violations.push_back(std::move(rec));
    }
    return rep;
}

std::string renderCampaignReport(const CampaignReport& report) {
    std::ostringstream os;
    os << "fuzz campaign: mode=" << modeLabel(report.mode) << " seed=" << report.seed
       << " count=" << report.count << "\n";
    os << "programs generated: " << report.programsGenerated << "\n";
    os << "programs accepted:  " << report.programsAccepted << "\n";
    os << "transactions executed: " << report.transactionsExecuted << "\n";
    os << "successes: " << report.successes << "\n";
    os << "revert histogram:\n";
    if (report.revertHistogram.empty()) os << "  (none)\n";
    for (const auto& [reason, n] : report.revertHistogram)
        os << "  " << reason << ": " << n << "\n";
    os << "violations: " << report.violations.size() << "\n";
    for (size_t i = 0; i < report.violations.size(); ++i) {
        const ViolationRecord& v = report.violations[i];
        os << "violation " << i << ": case " << v.caseIndex << " seed " << v.caseSeed
           << " kind=" << v.kind;
        if (!v.reason.empty()) os << " reason=" << v.reason;
        os << "\n  " << v.detail << "\n";
    }
    return os.str();
}

std::string campaignReportToJson(const CampaignReport& report) {
    nlohmann::json j;
    j["mode"] = modeLabel(report.mode);
    j["seed"] = report.seed;
    j["count"] = report.count;
    j["programsGenerated"] = report.programsGenerated;
    j["programsAccepted"] = report.programsAccepted;
    j["transactionsExecuted"] = report.transactionsExecuted;
    j["successes"] = report.successes;
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [reason, n] : report.revertHistogram) hist[reason] = n;
    j["revertHistogram"] = std::move(hist);
    nlohmann::json viols = nlohmann::json::array();
    for (const ViolationRecord& v : report.violations) {
        nlohmann::json vj;
        vj["caseIndex"] = v.caseIndex;
        vj["caseSeed"] = v.caseSeed;
        vj["kind"] = v.kind;
        vj["reason"] = v.reason;
        vj["detail"] = v.detail;
        vj["program"] = v.program;
        vj["scenario"] = v.scenarioJson;
        viols.push_back(std::move(vj));
    }
    j["violations"] = std::move(viols);
    return j.dump(2) + "\n";
}

} // namespace fsol
