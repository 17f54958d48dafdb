#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rrvar/error.hpp"
#include "rrvar/value.hpp"

namespace rrvar {

enum class BinOp {
    add, sub, mul, div, mod,
    lt, gt, le, ge, eq, ne,
    and_, or_,
};

inline const char* binop_text(BinOp op) {
    switch (op) {
        case BinOp::add: return "+";
        case BinOp::sub: return "-";
        case BinOp::mul: return "*";
        case BinOp::div: return "/";
        case BinOp::mod: return "%";
        case BinOp::lt: return "<";
        case BinOp::gt: return ">";
        case BinOp::le: return "<=";
        case BinOp::ge: return ">=";
        case BinOp::eq: return "==";
        case BinOp::ne: return "!=";
        case BinOp::and_: return "&&";
        case BinOp::or_: return "||";
    }
    return "?";
}

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct LiteralExpr {
    Value value;
};

struct VarRefExpr {
    std::string name;
};

struct BinaryExpr {
    BinOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};

// Call expressions exist only for the runtime read builtins
// (__redundant_read_*); the validator rejects anything else.
struct CallExpr {
    std::string callee;
    std::vector<ExprPtr> args;
};

struct Expr {
    std::variant<LiteralExpr, VarRefExpr, BinaryExpr, CallExpr> node;
    SourcePos pos;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;
using Block = std::vector<StmtPtr>;

struct AssignStmt {
    std::string name;
    ExprPtr value;
};

struct IfStmt {
    ExprPtr cond;
    Block then_block;
    Block else_block;  // empty when there is no else
};

struct WhileStmt {
    ExprPtr cond;
    Block body;
};

struct CallStmt {
    std::string callee;
    std::vector<ExprPtr> args;
};

struct SleepStmt {
    ExprPtr ticks;
};

struct PrintStmt {
    std::vector<ExprPtr> args;
};

struct ReturnStmt {};

struct Stmt {
    std::variant<AssignStmt, IfStmt, WhileStmt, CallStmt, SleepStmt, PrintStmt, ReturnStmt> node;
    SourcePos pos;
};

struct AttrSet {
    bool ref_t = false;
    bool redundant = false;

    bool any() const { return ref_t || redundant; }
    bool operator==(const AttrSet&) const = default;
};

struct VarDecl {
    std::string name;
    TypeCode type = TypeCode::int_t;
    AttrSet attrs;
    std::optional<Value> init;
    SourcePos pos;
};

struct FuncDef {
    std::string name;
    Block body;
    SourcePos pos;
};

struct AstProgram {
    std::vector<VarDecl> decls;
    std::vector<FuncDef> functions;
};

// --- deep copy ---------------------------------------------------------

inline ExprPtr clone(const ExprPtr& e);
inline StmtPtr clone(const StmtPtr& s);

inline std::vector<ExprPtr> clone(const std::vector<ExprPtr>& v) {
    std::vector<ExprPtr> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(clone(e));
    return out;
}

inline Block clone(const Block& b) {
    Block out;
    out.reserve(b.size());
    for (const auto& s : b) out.push_back(clone(s));
    return out;
}

inline ExprPtr clone(const ExprPtr& e) {
    if (!e) return nullptr;
    auto out = std::make_unique<Expr>();
    out->pos = e->pos;
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, LiteralExpr>) {
                out->node = LiteralExpr{node.value};
            } else if constexpr (std::is_same_v<T, VarRefExpr>) {
                out->node = VarRefExpr{node.name};
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                out->node = BinaryExpr{node.op, clone(node.lhs), clone(node.rhs)};
            } else {
                out->node = CallExpr{node.callee, clone(node.args)};
            }
        },
        e->node);
    return out;
}

inline StmtPtr clone(const StmtPtr& s) {
    if (!s) return nullptr;
    auto out = std::make_unique<Stmt>();
    out->pos = s->pos;
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, AssignStmt>) {
                out->node = AssignStmt{node.name, clone(node.value)};
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                out->node = IfStmt{clone(node.cond), clone(node.then_block), clone(node.else_block)};
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                out->node = WhileStmt{clone(node.cond), clone(node.body)};
            } else if constexpr (std::is_same_v<T, CallStmt>) {
                out->node = CallStmt{node.callee, clone(node.args)};
            } else if constexpr (std::is_same_v<T, SleepStmt>) {
                out->node = SleepStmt{clone(node.ticks)};
            } else if constexpr (std::is_same_v<T, PrintStmt>) {
                out->node = PrintStmt{clone(node.args)};
            } else {
                out->node = ReturnStmt{};
            }
        },
        s->node);
    return out;
}

inline AstProgram clone(const AstProgram& p) {
    AstProgram out;
    out.decls = p.decls;
    out.functions.reserve(p.functions.size());
    for (const auto& f : p.functions)
        out.functions.push_back(FuncDef{f.name, clone(f.body), f.pos});
    return out;
}

// --- structural equality (ignores source positions) --------------------

inline bool equal(const ExprPtr& a, const ExprPtr& b);
inline bool equal(const StmtPtr& a, const StmtPtr& b);

inline bool equal(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!equal(a[i], b[i])) return false;
    return true;
}

inline bool equal(const Block& a, const Block& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!equal(a[i], b[i])) return false;
    return true;
}

inline bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    if (a->node.index() != b->node.index()) return false;
    if (const auto* la = std::get_if<LiteralExpr>(&a->node))
        return la->value == std::get<LiteralExpr>(b->node).value;
    if (const auto* va = std::get_if<VarRefExpr>(&a->node))
        return va->name == std::get<VarRefExpr>(b->node).name;
    if (const auto* ba = std::get_if<BinaryExpr>(&a->node)) {
        const auto& bb = std::get<BinaryExpr>(b->node);
        return ba->op == bb.op && equal(ba->lhs, bb.lhs) && equal(ba->rhs, bb.rhs);
    }
    const auto& ca = std::get<CallExpr>(a->node);
    const auto& cb = std::get<CallExpr>(b->node);
    return ca.callee == cb.callee && equal(ca.args, cb.args);
}

inline bool equal(const StmtPtr& a, const StmtPtr& b) {
    if (!a || !b) return !a && !b;
    if (a->node.index() != b->node.index()) return false;
    if (const auto* sa = std::get_if<AssignStmt>(&a->node)) {
        const auto& sb = std::get<AssignStmt>(b->node);
        return sa->name == sb.name && equal(sa->value, sb.value);
    }
    if (const auto* ia = std::get_if<IfStmt>(&a->node)) {
        const auto& ib = std::get<IfStmt>(b->node);
        return equal(ia->cond, ib.cond) && equal(ia->then_block, ib.then_block) &&
               equal(ia->else_block, ib.else_block);
    }
    if (const auto* wa = std::get_if<WhileStmt>(&a->node)) {
        const auto& wb = std::get<WhileStmt>(b->node);
        return equal(wa->cond, wb.cond) && equal(wa->body, wb.body);
    }
    if (const auto* ca = std::get_if<CallStmt>(&a->node)) {
        const auto& cb = std::get<CallStmt>(b->node);
        return ca->callee == cb.callee && equal(ca->args, cb.args);
    }
    if (const auto* la = std::get_if<SleepStmt>(&a->node))
        return equal(la->ticks, std::get<SleepStmt>(b->node).ticks);
    if (const auto* pa = std::get_if<PrintStmt>(&a->node))
        return equal(pa->args, std::get<PrintStmt>(b->node).args);
    return true;  // ReturnStmt
}

inline bool equal(const VarDecl& a, const VarDecl& b) {
    return a.name == b.name && a.type == b.type && a.attrs == b.attrs && a.init == b.init;
}

inline bool equal(const AstProgram& a, const AstProgram& b) {
    if (a.decls.size() != b.decls.size() || a.functions.size() != b.functions.size())
        return false;
    for (std::size_t i = 0; i < a.decls.size(); ++i)
        if (!equal(a.decls[i], b.decls[i])) return false;
    for (std::size_t i = 0; i < a.functions.size(); ++i) {
        if (a.functions[i].name != b.functions[i].name) return false;
        if (!equal(a.functions[i].body, b.functions[i].body)) return false;
    }
    return true;
}

// Convenience builders used by the translator and tests.
inline ExprPtr make_literal(Value v, SourcePos pos = {}) {
    auto e = std::make_unique<Expr>();
    e->node = LiteralExpr{std::move(v)};
    e->pos = pos;
    return e;
}

inline ExprPtr make_var_ref(std::string name, SourcePos pos = {}) {
    auto e = std::make_unique<Expr>();
    e->node = VarRefExpr{std::move(name)};
    e->pos = pos;
    return e;
}

inline ExprPtr make_call_expr(std::string callee, std::vector<ExprPtr> args, SourcePos pos = {}) {
    auto e = std::make_unique<Expr>();
    e->node = CallExpr{std::move(callee), std::move(args)};
    e->pos = pos;
    return e;
}

inline StmtPtr make_call_stmt(std::string callee, std::vector<ExprPtr> args, SourcePos pos = {}) {
    auto s = std::make_unique<Stmt>();
    s->node = CallStmt{std::move(callee), std::move(args)};
    s->pos = pos;
    return s;
}

}  // namespace rrvar
