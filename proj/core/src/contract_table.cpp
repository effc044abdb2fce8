// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "fsol/contract_table.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace fsol {

const ResolvedContract* ContractTable::find(const std::string& name) const {
    auto it = byName_.find(name);
    return it == byName_.end() ? nullptr : &it->second;
}

const ResolvedContract& ContractTable::get(const std::string& name) const {
    const ResolvedContract* c = find(name);
    assert(c && "contract name not in table");
    return *c;
}

bool ContractTable::contains(const std::string& name) const {
    return byName_.count(name) != 0;
}

bool ContractTable::contractLe(const std::string& c, const std::string& d) const {
    if (!contains(c) || !contains(d)) return false;
    if (c == d) return true;
    if (d == kTopName) return true;
    if (d == kTopFbName) return hasFallback(c);
    const ResolvedContract& rc = get(c);
    return std::find(rc.ancestry.begin(), rc.ancestry.end(), d) != rc.ancestry.end();
}

bool ContractTable::hasFallback(const std::string& name) const {
    const ResolvedContract* c = find(name);
    return c && c->hasFallback;
}

std::vector<std::string> ContractTable::userNames() const {
    std::vector<std::string> out;
    for (const auto& n : order_)
        if (!get(n).synthetic) out.push_back(n);
    return out;
}

namespace {

bool validTypeRef(const std::map<std::string, const ContractDecl*>& known, const TypeRepr& t) {
    if (t.kind != TypeKind::RefAddress && t.kind != TypeKind::Contract) return true;
    if (t.contractName == kTopName || t.contractName == kTopFbName) return true;
    return known.count(t.contractName) != 0;
}

} // namespace

struct TableBuilder {
    const Program& program;
    std::vector<Diagnostic> diags;
    std::map<std::string, const ContractDecl*> decls;

    explicit TableBuilder(const Program& p) : program(p) {}

    void error(std::string code, std::string message, const SourceSpan& span) {
        diags.push_back(makeError(std::move(code), std::move(message), span));
    }

    void checkTypeRef(const TypeRepr& t, const SourceSpan& span) {
        if (!validTypeRef(decls, t)) {
            error("HIER-UNKNOWN-TYPE",
                  "type " + typeName(t) + " names an undeclared contract", span);
        }
    }

    void collectDecls() {
        for (const auto& c : program.contracts) {
            if (c.name == kTopName || c.name == kTopFbName) {
                error("HIER-RESERVED-NAME",
                      "'" + c.name + "' is a reserved contract name", c.nameSpan);
                continue;
            }
            auto [it, inserted] = decls.emplace(c.name, &c);
            (void)it;
            if (!inserted) {
                error("HIER-DUP-CONTRACT", "duplicate contract name '" + c.name + "'",
                      c.nameSpan);
            }
        }
    }

    void checkParents() {
        for (const auto& c : program.contracts) {
            if (!c.parent) continue;
            if (*c.parent == kTopName || *c.parent == kTopFbName) {
                error("HIER-RESERVED-NAME",
                      "cannot inherit from the reserved contract '" + *c.parent + "'",
                      c.parentSpan);
                continue;
            }
            if (!decls.count(*c.parent)) {
                error("HIER-UNKNOWN-PARENT", "unknown parent contract '" + *c.parent + "'",
                      c.parentSpan);
            }
        }
        // Cycle detection over the declared (possibly partial) parent map.
        for (const auto& c : program.contracts) {
            std::set<std::string> seen{c.name};
            const ContractDecl* cur = &c;
            while (cur->parent && decls.count(*cur->parent)) {
                if (seen.count(*cur->parent)) {
                    error("HIER-CYCLE",
                          "inheritance cycle through contract '" + c.name + "'", c.nameSpan);
                    break;
                }
                seen.insert(*cur->parent);
                cur = decls.at(*cur->parent);
            }
        }
    }

    void checkMembers() {
        for (const auto& c : program.contracts) {
            std::set<std::string> own;
            for (const auto& v : c.stateVars) {
                if (!own.insert(v.name).second) {
                    error("HIER-DUP-MEMBER",
                          "duplicate member '" + v.name + "' in contract '" + c.name + "'",
                          v.span);
                }
                checkTypeRef(v.type, v.span);
            }
            for (const auto& f : c.functions) {
                if (!own.insert(f.name).second) {
                    error("HIER-DUP-MEMBER",
                          "duplicate member '" + f.name + "' in contract '" + c.name + "'",
                          f.nameSpan);
                }
                checkParamList(f.params);
                if (f.returnType) checkTypeRef(*f.returnType, f.nameSpan);
                checkAnnotation(f);
            }
            if (c.ctor) checkParamList(c.ctor->params);
        }
    }

    void checkParamList(const std::vector<Param>& params) {
        std::set<std::string> names;
        for (const auto& p : params) {
            if (!names.insert(p.name).second) {
                error("HIER-DUP-PARAM", "duplicate parameter name '" + p.name + "'", p.span);
            }
            checkTypeRef(p.type, p.span);
        }
    }

    void checkAnnotation(const FunctionDecl& f) {
        if (f.callerAnn.kind != CallerAnnotation::Kind::Named) return;
        const std::string& n = f.callerAnn.name;
        if (n == kTopName) {
            error("HIER-UNKNOWN-CALLER-BOUND",
                  "caller annotation <Top> is not written explicitly; omit the annotation",
                  f.callerAnn.span);
            return;
        }
        if (n != kTopFbName && !decls.count(n)) {
            error("HIER-UNKNOWN-CALLER-BOUND",
                  "caller annotation names undeclared contract '" + n + "'", f.callerAnn.span);
        }
    }

    // Child shadowing of anything inherited is rejected (no overriding).
    void checkShadowing(const std::map<std::string, ResolvedContract>& partial) {
        for (const auto& c : program.contracts) {
            auto it = partial.find(c.name);
            if (it == partial.end() || it->second.ancestry.size() <= 1) continue;
            std::set<std::string> inherited;
            for (const auto& ancestorName : it->second.ancestry) {
                if (ancestorName == kTopName) continue;
                const ContractDecl* a = decls.at(ancestorName);
                for (const auto& v : a->stateVars) inherited.insert(v.name);
                for (const auto& f : a->functions) inherited.insert(f.name);
            }
            for (const auto& v : c.stateVars) {
                if (inherited.count(v.name)) {
                    error("HIER-OVERRIDE",
                          "member '" + v.name + "' shadows an inherited member (overriding is not supported)",
                          v.span);
                }
            }
            for (const auto& f : c.functions) {
                if (inherited.count(f.name)) {
                    error("HIER-OVERRIDE",
                          "function '" + f.name + "' redeclares an inherited member (overriding is not supported)",
                          f.nameSpan);
                }
            }
        }
    }

    ResolveResult build() {
        collectDecls();
        checkParents();
        checkMembers();
        if (hasErrors(diags)) return {std::nullopt, std::move(diags)};

        ContractTable table;

        auto topDecl = std::make_unique<ContractDecl>();
        topDecl->name = kTopName;
        auto topFbDecl = std::make_unique<ContractDecl>();
        topFbDecl->name = kTopFbName;
        topFbDecl->fallback = FallbackDecl{};

        ResolvedContract top;
        top.name = kTopName;
        top.synthetic = true;
        top.decl = topDecl.get();

        ResolvedContract topFb;
        topFb.name = kTopFbName;
        topFb.ancestry = {kTopName};
        topFb.synthetic = true;
        topFb.hasFallback = true;
        topFb.fallbackDecl = &*topFbDecl->fallback;
        topFb.decl = topFbDecl.get();

        table.byName_.emplace(kTopName, std::move(top));
        table.byName_.emplace(kTopFbName, std::move(topFb));
        table.order_ = {kTopName, kTopFbName};
        table.synthesized_.push_back(std::move(topDecl));
        table.synthesized_.push_back(std::move(topFbDecl));

        for (const auto& c : program.contracts) {
            ResolvedContract rc;
            rc.name = c.name;
            rc.decl = &c;
            const ContractDecl* cur = &c;
            while (cur->parent) {
                rc.ancestry.push_back(*cur->parent);
                cur = decls.at(*cur->parent);
            }
            rc.ancestry.push_back(kTopName);

            // Fields: root ancestor first, own last.
            for (auto it = rc.ancestry.rbegin(); it != rc.ancestry.rend(); ++it) {
                if (*it == kTopName) continue;
                for (const auto& v : decls.at(*it)->stateVars) {
                    rc.fields.push_back(&v);
                    rc.fieldsByName.emplace(v.name, &v);
                }
            }
            for (const auto& v : c.stateVars) {
                rc.fields.push_back(&v);
                rc.fieldsByName.emplace(v.name, &v);
            }

            for (auto it = rc.ancestry.rbegin(); it != rc.ancestry.rend(); ++it) {
                if (*it == kTopName) continue;
                for (const auto& f : decls.at(*it)->functions) {
                    rc.functions[f.name] = ResolvedFunction{&f, *it};
                }
            }
            for (const auto& f : c.functions) {
                rc.functions[f.name] = ResolvedFunction{&f, c.name};
            }

            if (c.ctor) rc.constructorDecl = &*c.ctor;

            if (c.fallback) {
                rc.fallbackDecl = &*c.fallback;
            } else {
                for (const auto& ancestorName : rc.ancestry) {
                    if (ancestorName == kTopName) continue;
                    const ContractDecl* a = decls.at(ancestorName);
                    if (a->fallback) {
                        rc.fallbackDecl = &*a->fallback;
                        break;
                    }
                }
            }
            rc.hasFallback = rc.fallbackDecl != nullptr;

            table.order_.push_back(c.name);
            table.byName_.emplace(c.name, std::move(rc));
        }

        // Shadowing needs resolved ancestry, so it runs on the built table.
        checkShadowing(table.byName_);
        if (hasErrors(diags)) return {std::nullopt, std::move(diags)};

        return {std::move(table), std::move(diags)};
    }
};

ResolveResult resolveHierarchy(const Program& p) {
    return TableBuilder(p).build();
}

bool isSubtype(const ContractTable& t, const TypeRepr& a, const TypeRepr& b) {
    if (a == b) return true;
    if (a.kind == TypeKind::Contract && b.kind == TypeKind::Contract)
        return t.contractLe(a.contractName, b.contractName);
    if (a.kind == TypeKind::RefAddress && b.kind == TypeKind::RefAddress)
        return t.contractLe(a.contractName, b.contractName);
    if (a.kind == TypeKind::PayableAddress && b.kind == TypeKind::BareAddress) return true;
    return false;
}

} // namespace fsol
