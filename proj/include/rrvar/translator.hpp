#pragma once

#include <map>
#include <string>
#include <vector>

#include "rrvar/ast.hpp"
#include "rrvar/parser.hpp"
#include "rrvar/printer.hpp"
#include "rrvar/runtime_calls.hpp"
#include "rrvar/validate.hpp"

namespace rrvar {

struct Capability {
    bool sensor = false;
    bool actuator = false;
};

using CapabilityMap = std::map<std::string, Capability>;

struct KindSet {
    bool reflective = false;
    bool refractive = false;
    bool redundant = false;

    bool operator==(const KindSet&) const = default;
};

struct PlanEntry {
    std::string name;
    TypeCode type = TypeCode::int_t;
    KindSet kinds;
};

// One entry per attributed declaration, in declaration order.
struct RegistrationPlan {
    std::vector<PlanEntry> entries;

    bool empty() const { return entries.empty(); }
    const PlanEntry* find(const std::string& name) const {
        for (const auto& e : entries)
            if (e.name == name) return &e;
        return nullptr;
    }
};

// Step 1: remove attribute occurrences; record what they meant.
// ref_t resolves against the device capability map: a sensor makes the
// variable reflective, an actuator makes it refractive.
inline std::pair<AstProgram, RegistrationPlan> strip_attributes(
    const AstProgram& prog, const CapabilityMap& caps = {}) {
    AstProgram out = clone(prog);
    RegistrationPlan plan;
    for (auto& d : out.decls) {
        if (!d.attrs.any()) continue;
        PlanEntry entry{d.name, d.type, {}};
        if (d.attrs.ref_t) {
            auto it = caps.find(d.name);
            if (it == caps.end())
                throw Error("unknown device for ref_t variable '" + d.name + "'", d.pos);
            entry.kinds.reflective = it->second.sensor;
            entry.kinds.refractive = it->second.actuator;
        }
        if (d.attrs.redundant) entry.kinds.redundant = true;
        if (d.attrs.ref_t && d.attrs.redundant)
            throw Error("variable '" + d.name +
                            "' cannot combine ref_t and redundant; that pairing is reserved "
                            "for the runtime's redundance variable",
                        d.pos);
        if (entry.kinds.redundant && caps.count(d.name))
            throw Error("redundant variable '" + d.name + "' collides with a configured device",
                        d.pos);
        plan.entries.push_back(std::move(entry));
        d.attrs = AttrSet{};
    }
    return {std::move(out), std::move(plan)};
}

// Steps 2-4: registry setup and Server spawn, as call statements.
// Empty plan produces no prologue; otherwise 3 + 2*|plan| statements.
inline Block emit_prologue(const RegistrationPlan& plan) {
    Block out;
    if (plan.empty()) return out;
    auto str = [](const std::string& s) {
        std::vector<ExprPtr> args;
        args.push_back(make_literal(Value(s)));
        return args;
    };
    out.push_back(make_call_stmt(calls::aopen, str("reflex")));
    out.push_back(make_call_stmt(calls::aopen, str("rtype")));
    for (const auto& e : plan.entries) {
        out.push_back(make_call_stmt(calls::awrite_reflex, str(e.name)));
        std::vector<ExprPtr> args;
        args.push_back(make_literal(Value(e.name)));
        args.push_back(make_literal(Value(static_cast<std::int64_t>(e.type))));
        out.push_back(make_call_stmt(calls::awrite_rtype, std::move(args)));
    }
    out.push_back(make_call_stmt(calls::spawn_server, {}));
    return out;
}

namespace detail {

class BodyRewriter {
public:
    explicit BodyRewriter(const RegistrationPlan& plan) : plan_(plan) {}

    void rewrite_block(Block& block) {
        Block out;
        out.reserve(block.size());
        for (auto& s : block) {
            rewrite_stmt(s);
            bool call_after = false;
            std::string refract_name;
            if (auto* a = std::get_if<AssignStmt>(&s->node)) {
                if (const PlanEntry* e = plan_.find(a->name)) {
                    if (e->kinds.redundant) {
                        // w = e  ->  __redundant_assign_T("w", e)
                        std::vector<ExprPtr> args;
                        args.push_back(make_literal(Value(a->name), s->pos));
                        args.push_back(std::move(a->value));
                        s->node = CallStmt{calls::redundant_assign(e->type), std::move(args)};
                    } else if (e->kinds.refractive) {
                        call_after = true;
                        refract_name = a->name;
                    }
                }
            }
            SourcePos pos = s->pos;
            out.push_back(std::move(s));
            if (call_after) {
                std::vector<ExprPtr> args;
                args.push_back(make_literal(Value(refract_name), pos));
                out.push_back(make_call_stmt(calls::call_v, std::move(args), pos));
            }
        }
        block = std::move(out);
    }

private:
    const RegistrationPlan& plan_;

    void rewrite_stmt(StmtPtr& s) {
        if (auto* a = std::get_if<AssignStmt>(&s->node)) {
            rewrite_expr(a->value);
        } else if (auto* i = std::get_if<IfStmt>(&s->node)) {
            rewrite_expr(i->cond);
            rewrite_block(i->then_block);
            rewrite_block(i->else_block);
        } else if (auto* w = std::get_if<WhileStmt>(&s->node)) {
            rewrite_expr(w->cond);
            rewrite_block(w->body);
        } else if (auto* c = std::get_if<CallStmt>(&s->node)) {
            for (auto& arg : c->args) rewrite_expr(arg);
        } else if (auto* sl = std::get_if<SleepStmt>(&s->node)) {
            rewrite_expr(sl->ticks);
        } else if (auto* p = std::get_if<PrintStmt>(&s->node)) {
            for (auto& arg : p->args) rewrite_expr(arg);
        }
    }

    void rewrite_expr(ExprPtr& e) {
        if (!e) return;
        if (auto* var = std::get_if<VarRefExpr>(&e->node)) {
            const PlanEntry* entry = plan_.find(var->name);
            if (entry && entry->kinds.redundant) {
                // w  ->  __redundant_read_T("w")
                std::vector<ExprPtr> args;
                args.push_back(make_literal(Value(var->name), e->pos));
                e->node = CallExpr{calls::redundant_read(entry->type), std::move(args)};
            }
            return;
        }
        if (auto* bin = std::get_if<BinaryExpr>(&e->node)) {
            rewrite_expr(bin->lhs);
            rewrite_expr(bin->rhs);
            return;
        }
        if (auto* call = std::get_if<CallExpr>(&e->node)) {
            for (auto& arg : call->args) rewrite_expr(arg);
        }
    }
};

}  // namespace detail

// Steps 5-7 plus prologue insertion. Expects the attribute-free AST from
// strip_attributes together with its plan.
inline AstProgram rewrite_body(const AstProgram& prog, const RegistrationPlan& plan) {
    AstProgram out = clone(prog);
    if (plan.empty()) return out;
    detail::BodyRewriter rewriter(plan);
    for (auto& f : out.functions) rewriter.rewrite_block(f.body);
    for (auto& f : out.functions) {
        if (f.name != "main") continue;
        Block prologue = emit_prologue(plan);
        for (auto it = prologue.rbegin(); it != prologue.rend(); ++it)
            f.body.insert(f.body.begin(), std::move(*it));
    }
    return out;
}

// Full translation: source in, deterministic instrumented source out.
// The runtime's internal redundance feed is always visible as a sensor, so
// programs may declare `ref_t int redundance;` without configuring it.
inline std::string translate(std::string_view source, const CapabilityMap& caps) {
    CapabilityMap full = caps;
    full.emplace("redundance", Capability{true, false});
    AstProgram prog = parse_source(source);
    validate(prog);
    auto [stripped, plan] = strip_attributes(prog, full);
    AstProgram instrumented = rewrite_body(stripped, plan);
    validate(instrumented);
    return pretty_print(instrumented);
}

}  // namespace rrvar
