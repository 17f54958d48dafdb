#pragma once

#include <map>
#include <set>
#include <string>

#include "rrvar/ast.hpp"
#include "rrvar/runtime_calls.hpp"

namespace rrvar {

namespace detail {

class Validator {
public:
    explicit Validator(const AstProgram& prog) : prog_(prog) {}

    void run() {
        for (const auto& d : prog_.decls) {
            if (vars_.count(d.name))
                throw Error("duplicate declaration of '" + d.name + "'", d.pos);
            if (d.init) {
                TypeCode it = type_of(*d.init);
                if (it != d.type && !(it == TypeCode::int_t && d.type == TypeCode::float_t))
                    throw Error("initializer type does not match declaration of '" + d.name + "'",
                                d.pos);
            }
            vars_[d.name] = d.type;
        }
        bool have_main = false;
        for (const auto& f : prog_.functions) {
            if (!funcs_.insert(f.name).second)
                throw Error("duplicate function '" + f.name + "'", f.pos);
            if (f.name == "main") have_main = true;
        }
        if (!have_main) throw Error("no 'main' function defined");
        for (const auto& f : prog_.functions) check_block(f.body);
    }

private:
    const AstProgram& prog_;
    std::map<std::string, TypeCode> vars_;
    std::set<std::string> funcs_;

    TypeCode var_type(const std::string& name, SourcePos pos) const {
        auto it = vars_.find(name);
        if (it == vars_.end()) throw Error("unresolved variable '" + name + "'", pos);
        return it->second;
    }

    static bool is_numeric(TypeCode t) { return t != TypeCode::string_t; }

    TypeCode check_expr(const ExprPtr& e) {
        if (const auto* lit = std::get_if<LiteralExpr>(&e->node)) return type_of(lit->value);
        if (const auto* var = std::get_if<VarRefExpr>(&e->node))
            return var_type(var->name, e->pos);
        if (const auto* bin = std::get_if<BinaryExpr>(&e->node)) {
            TypeCode lt = check_expr(bin->lhs);
            TypeCode rt = check_expr(bin->rhs);
            bool strings = lt == TypeCode::string_t || rt == TypeCode::string_t;
            if (strings) {
                if (bin->op != BinOp::eq && bin->op != BinOp::ne)
                    throw Error(std::string("operator '") + binop_text(bin->op) +
                                    "' not defined for strings",
                                e->pos);
                if (lt != rt)
                    throw Error("cannot compare string with non-string", e->pos);
                return TypeCode::int_t;
            }
            switch (bin->op) {
                case BinOp::add: case BinOp::sub: case BinOp::mul: case BinOp::div:
                    return (lt == TypeCode::float_t || rt == TypeCode::float_t)
                               ? TypeCode::float_t
                               : TypeCode::int_t;
                case BinOp::mod:
                    if (lt != TypeCode::int_t || rt != TypeCode::int_t)
                        throw Error("operator '%' requires int operands", e->pos);
                    return TypeCode::int_t;
                default:
                    return TypeCode::int_t;  // comparisons and logic yield int
            }
        }
        const auto& call = std::get<CallExpr>(e->node);
        auto sig = builtin_signature(call.callee);
        if (!sig || !sig->is_expr)
            throw Error("function call '" + call.callee + "' cannot be used as an expression",
                        e->pos);
        check_call_args(call.callee, *sig, call.args, e->pos);
        return *sig->value_type;
    }

    void check_call_args(const std::string& callee, const BuiltinSig& sig,
                         const std::vector<ExprPtr>& args, SourcePos pos) {
        if (args.size() != sig.args.size())
            throw Error("'" + callee + "' expects " + std::to_string(sig.args.size()) +
                            " argument(s), got " + std::to_string(args.size()),
                        pos);
        for (std::size_t i = 0; i < args.size(); ++i) {
            const auto* lit = std::get_if<LiteralExpr>(&args[i]->node);
            switch (sig.args[i]) {
                case ArgKind::string_lit:
                    if (!lit || type_of(lit->value) != TypeCode::string_t)
                        throw Error("'" + callee + "' argument " + std::to_string(i + 1) +
                                        " must be a string literal",
                                    args[i]->pos);
                    break;
                case ArgKind::int_lit:
                    if (!lit || type_of(lit->value) != TypeCode::int_t)
                        throw Error("'" + callee + "' argument " + std::to_string(i + 1) +
                                        " must be an int literal",
                                    args[i]->pos);
                    break;
                case ArgKind::value: {
                    TypeCode at = check_expr(args[i]);
                    TypeCode want = *sig.value_type;
                    if (at != want && !(at == TypeCode::int_t && want == TypeCode::float_t))
                        throw Error("'" + callee + "' value argument has wrong type",
                                    args[i]->pos);
                    break;
                }
            }
        }
    }

    void check_numeric_expr(const ExprPtr& e, const char* where) {
        if (!is_numeric(check_expr(e)))
            throw Error(std::string(where) + " must be numeric", e->pos);
    }

    void check_block(const Block& block) {
        for (const auto& s : block) check_stmt(s);
    }

    void check_stmt(const StmtPtr& s) {
        if (const auto* a = std::get_if<AssignStmt>(&s->node)) {
            TypeCode target = var_type(a->name, s->pos);
            TypeCode vt = check_expr(a->value);
            if (vt != target && !(vt == TypeCode::int_t && target == TypeCode::float_t))
                throw Error("cannot assign " + std::string(type_name(vt)) + " to " +
                                type_name(target) + " variable '" + a->name + "'",
                            s->pos);
            return;
        }
        if (const auto* i = std::get_if<IfStmt>(&s->node)) {
            check_numeric_expr(i->cond, "if condition");
            check_block(i->then_block);
            check_block(i->else_block);
            return;
        }
        if (const auto* w = std::get_if<WhileStmt>(&s->node)) {
            check_numeric_expr(w->cond, "while condition");
            check_block(w->body);
            return;
        }
        if (const auto* c = std::get_if<CallStmt>(&s->node)) {
            if (auto sig = builtin_signature(c->callee)) {
                check_call_args(c->callee, *sig, c->args, s->pos);
                return;
            }
            if (!funcs_.count(c->callee))
                throw Error("call to undefined function '" + c->callee + "'", s->pos);
            if (!c->args.empty())
                throw Error("user functions take no arguments", s->pos);
            return;
        }
        if (const auto* sl = std::get_if<SleepStmt>(&s->node)) {
            if (check_expr(sl->ticks) != TypeCode::int_t)
                throw Error("sleep duration must be an int", s->pos);
            return;
        }
        if (const auto* p = std::get_if<PrintStmt>(&s->node)) {
            for (const auto& a : p->args) check_expr(a);
            return;
        }
        // ReturnStmt: nothing to check
    }
};

}  // namespace detail

// Post-parse checks: unique names, exactly one main, variable resolution,
// static types, builtin call arities.
inline void validate(const AstProgram& prog) {
    detail::Validator(prog).run();
}

}  // namespace rrvar
