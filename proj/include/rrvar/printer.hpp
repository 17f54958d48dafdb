#pragma once

#include <string>

#include "rrvar/ast.hpp"

namespace rrvar {

namespace detail {

inline int binop_prec(BinOp op) {
    switch (op) {
        case BinOp::or_: return 1;
        case BinOp::and_: return 2;
        case BinOp::lt: case BinOp::gt: case BinOp::le:
        case BinOp::ge: case BinOp::eq: case BinOp::ne: return 3;
        case BinOp::add: case BinOp::sub: return 4;
        default: return 5;  // * / %
    }
}

inline std::string quote_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

inline std::string literal_text(const Value& v) {
    if (type_of(v) == TypeCode::string_t) return quote_string(std::get<std::string>(v));
    return to_display(v);
}

class Printer {
public:
    std::string print(const AstProgram& prog) {
        for (const auto& d : prog.decls) print_decl(d);
        for (const auto& f : prog.functions) {
            if (!out_.empty()) out_ += '\n';
            print_func(f);
        }
        return out_;
    }

private:
    std::string out_;
    int indent_ = 0;

    void line(const std::string& text) {
        out_.append(static_cast<std::size_t>(indent_) * 4, ' ');
        out_ += text;
        out_ += '\n';
    }

    void print_decl(const VarDecl& d) {
        std::string s;
        if (d.attrs.ref_t) s += "ref_t ";
        if (d.attrs.redundant) s += "redundant ";
        s += type_name(d.type);
        s += ' ';
        s += d.name;
        if (d.init) {
            s += " = ";
            s += literal_text(*d.init);
        }
        s += ';';
        line(s);
    }

    void print_func(const FuncDef& f) {
        line("int " + f.name + "() {");
        ++indent_;
        print_block(f.body);
        --indent_;
        line("}");
    }

    void print_block(const Block& block) {
        for (const auto& s : block) print_stmt(s);
    }

    void print_stmt(const StmtPtr& s) {
        if (const auto* a = std::get_if<AssignStmt>(&s->node)) {
            line(a->name + " = " + expr_text(a->value, 0) + ";");
        } else if (const auto* i = std::get_if<IfStmt>(&s->node)) {
            line("if (" + expr_text(i->cond, 0) + ") {");
            ++indent_;
            print_block(i->then_block);
            --indent_;
            if (!i->else_block.empty()) {
                line("} else {");
                ++indent_;
                print_block(i->else_block);
                --indent_;
            }
            line("}");
        } else if (const auto* w = std::get_if<WhileStmt>(&s->node)) {
            line("while (" + expr_text(w->cond, 0) + ") {");
            ++indent_;
            print_block(w->body);
            --indent_;
            line("}");
        } else if (const auto* c = std::get_if<CallStmt>(&s->node)) {
            line(c->callee + "(" + args_text(c->args) + ");");
        } else if (const auto* sl = std::get_if<SleepStmt>(&s->node)) {
            line("sleep(" + expr_text(sl->ticks, 0) + ");");
        } else if (const auto* p = std::get_if<PrintStmt>(&s->node)) {
            line("print(" + args_text(p->args) + ");");
        } else {
            line("return;");
        }
    }

    std::string args_text(const std::vector<ExprPtr>& args) {
        std::string s;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) s += ", ";
            s += expr_text(args[i], 0);
        }
        return s;
    }

    // min_prec: parenthesize when this node binds looser than the context.
    std::string expr_text(const ExprPtr& e, int min_prec) {
        if (const auto* lit = std::get_if<LiteralExpr>(&e->node)) return literal_text(lit->value);
        if (const auto* var = std::get_if<VarRefExpr>(&e->node)) return var->name;
        if (const auto* call = std::get_if<CallExpr>(&e->node))
            return call->callee + "(" + args_text(call->args) + ")";
        const auto& bin = std::get<BinaryExpr>(e->node);
        int prec = binop_prec(bin.op);
        // All operators are left-associative: the right child needs parens
        // at equal precedence, the left child does not.
        std::string text = expr_text(bin.lhs, prec) + " " + binop_text(bin.op) + " " +
                           expr_text(bin.rhs, prec + 1);
        if (prec < min_prec) return "(" + text + ")";
        return text;
    }
};

}  // namespace detail

// Canonical deterministic formatting: one statement per line, 4-space
// indents. parse(tokenize(pretty_print(a))) is structurally equal to a.
inline std::string pretty_print(const AstProgram& prog) {
    return detail::Printer().print(prog);
}

}  // namespace rrvar
