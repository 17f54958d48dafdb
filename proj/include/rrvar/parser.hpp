#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rrvar/ast.hpp"
#include "rrvar/lexer.hpp"
#include "rrvar/token.hpp"

namespace rrvar {

namespace detail {

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    AstProgram parse_program() {
        AstProgram prog;
        // Declarations first; the first 'int IDENT (' switches to functions.
        while (!at_end()) {
            if (starts_funcdef()) break;
            if (peek().is(TokenKind::attribute) || is_type_keyword(peek())) {
                prog.decls.push_back(parse_decl());
                continue;
            }
            break;
        }
        while (!at_end()) {
            if (peek().is(TokenKind::attribute) || (is_type_keyword(peek()) && !starts_funcdef()))
                throw Error("declarations must precede function definitions", peek().pos);
            prog.functions.push_back(parse_funcdef());
        }
        if (prog.functions.empty())
            throw Error("program must define at least one function", peek().pos);
        return prog;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        if (i >= tokens_.size()) i = tokens_.size() - 1;
        return tokens_[i];
    }
    const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
    bool at_end() const { return peek().is(TokenKind::end_of_input); }

    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = peek();
        std::string got = t.is(TokenKind::end_of_input)
                              ? std::string(token_kind_name(t.kind))
                              : "'" + t.lexeme + "'";
        throw Error("expected " + what + ", got " + got, t.pos);
    }

    Token expect(TokenKind kind, const char* text = nullptr) {
        if (text ? peek().is(kind, text) : peek().is(kind)) return advance();
        fail(text ? "'" + std::string(text) + "'" : token_kind_name(kind));
    }

    static bool is_type_keyword(const Token& t) {
        return t.is(TokenKind::keyword) &&
               (t.lexeme == "int" || t.lexeme == "float" || t.lexeme == "string");
    }

    bool starts_funcdef() const {
        return peek().is(TokenKind::keyword, "int") && peek(1).is(TokenKind::identifier) &&
               peek(2).is(TokenKind::punct, "(");
    }

    static TypeCode type_from_keyword(const Token& t) {
        if (t.lexeme == "int") return TypeCode::int_t;
        if (t.lexeme == "float") return TypeCode::float_t;
        return TypeCode::string_t;
    }

    VarDecl parse_decl() {
        VarDecl d;
        d.pos = peek().pos;
        while (peek().is(TokenKind::attribute)) {
            const Token& a = advance();
            if (a.lexeme == "ref_t") {
                if (d.attrs.ref_t) throw Error("duplicate attribute 'ref_t'", a.pos);
                d.attrs.ref_t = true;
            } else {
                if (d.attrs.redundant) throw Error("duplicate attribute 'redundant'", a.pos);
                d.attrs.redundant = true;
            }
        }
        if (!is_type_keyword(peek())) fail("type name");
        d.type = type_from_keyword(advance());
        d.name = expect(TokenKind::identifier).lexeme;
        if (peek().is(TokenKind::op, "=")) {
            advance();
            d.init = parse_literal_value();
        }
        expect(TokenKind::punct, ";");
        return d;
    }

    Value parse_literal_value() {
        if (peek().is(TokenKind::int_literal)) {
            const Token& t = advance();
            try {
                return Value(static_cast<std::int64_t>(std::stoll(t.lexeme)));
            } catch (const std::exception&) {
                throw Error("integer literal out of range", t.pos);
            }
        }
        if (peek().is(TokenKind::string_literal))
            return Value(decode_string_lexeme(advance().lexeme));
        fail("literal");
    }

    FuncDef parse_funcdef() {
        FuncDef f;
        f.pos = peek().pos;
        expect(TokenKind::keyword, "int");
        f.name = expect(TokenKind::identifier).lexeme;
        expect(TokenKind::punct, "(");
        expect(TokenKind::punct, ")");
        f.body = parse_block();
        return f;
    }

    Block parse_block() {
        expect(TokenKind::punct, "{");
        Block block;
        while (!peek().is(TokenKind::punct, "}")) {
            if (at_end()) fail("'}'");
            block.push_back(parse_stmt());
        }
        expect(TokenKind::punct, "}");
        return block;
    }

    StmtPtr parse_stmt() {
        auto s = std::make_unique<Stmt>();
        s->pos = peek().pos;
        if (peek().is(TokenKind::keyword, "if")) {
            advance();
            expect(TokenKind::punct, "(");
            IfStmt node;
            node.cond = parse_expr();
            expect(TokenKind::punct, ")");
            node.then_block = parse_block();
            if (peek().is(TokenKind::keyword, "else")) {
                advance();
                node.else_block = parse_block();
            }
            s->node = std::move(node);
            return s;
        }
        if (peek().is(TokenKind::keyword, "while")) {
            advance();
            expect(TokenKind::punct, "(");
            WhileStmt node;
            node.cond = parse_expr();
            expect(TokenKind::punct, ")");
            node.body = parse_block();
            s->node = std::move(node);
            return s;
        }
        if (peek().is(TokenKind::keyword, "sleep")) {
            advance();
            expect(TokenKind::punct, "(");
            SleepStmt node;
            node.ticks = parse_expr();
            expect(TokenKind::punct, ")");
            expect(TokenKind::punct, ";");
            s->node = std::move(node);
            return s;
        }
        if (peek().is(TokenKind::keyword, "print")) {
            advance();
            expect(TokenKind::punct, "(");
            PrintStmt node;
            node.args = parse_args();
            expect(TokenKind::punct, ")");
            expect(TokenKind::punct, ";");
            s->node = std::move(node);
            return s;
        }
        if (peek().is(TokenKind::keyword, "return")) {
            advance();
            expect(TokenKind::punct, ";");
            s->node = ReturnStmt{};
            return s;
        }
        if (peek().is(TokenKind::identifier)) {
            if (peek(1).is(TokenKind::op, "=")) {
                AssignStmt node;
                node.name = advance().lexeme;
                advance();  // '='
                node.value = parse_expr();
                expect(TokenKind::punct, ";");
                s->node = std::move(node);
                return s;
            }
            if (peek(1).is(TokenKind::punct, "(")) {
                CallStmt node;
                node.callee = advance().lexeme;
                advance();  // '('
                node.args = parse_args();
                expect(TokenKind::punct, ")");
                expect(TokenKind::punct, ";");
                s->node = std::move(node);
                return s;
            }
        }
        fail("statement");
    }

    std::vector<ExprPtr> parse_args() {
        std::vector<ExprPtr> args;
        if (peek().is(TokenKind::punct, ")")) return args;
        args.push_back(parse_expr());
        while (peek().is(TokenKind::punct, ",")) {
            advance();
            args.push_back(parse_expr());
        }
        return args;
    }

    // Precedence, loosest first: || < && < comparisons < +- < */%
    ExprPtr parse_expr() { return parse_or(); }

    ExprPtr parse_or() {
        auto lhs = parse_and();
        while (peek().is(TokenKind::op, "||")) {
            SourcePos p = advance().pos;
            auto e = std::make_unique<Expr>();
            e->node = BinaryExpr{BinOp::or_, std::move(lhs), parse_and()};
            e->pos = p;
            lhs = std::move(e);
        }
        return lhs;
    }

    ExprPtr parse_and() {
        auto lhs = parse_cmp();
        while (peek().is(TokenKind::op, "&&")) {
            SourcePos p = advance().pos;
            auto e = std::make_unique<Expr>();
            e->node = BinaryExpr{BinOp::and_, std::move(lhs), parse_cmp()};
            e->pos = p;
            lhs = std::move(e);
        }
        return lhs;
    }

    ExprPtr parse_cmp() {
        auto lhs = parse_add();
        while (peek().is(TokenKind::op)) {
            BinOp op;
            const std::string& t = peek().lexeme;
            if (t == "<") op = BinOp::lt;
            else if (t == ">") op = BinOp::gt;
            else if (t == "<=") op = BinOp::le;
            else if (t == ">=") op = BinOp::ge;
            else if (t == "==") op = BinOp::eq;
            else if (t == "!=") op = BinOp::ne;
            else break;
            SourcePos p = advance().pos;
            auto e = std::make_unique<Expr>();
            e->node = BinaryExpr{op, std::move(lhs), parse_add()};
            e->pos = p;
            lhs = std::move(e);
        }
        return lhs;
    }

    ExprPtr parse_add() {
        auto lhs = parse_mul();
        while (peek().is(TokenKind::op, "+") || peek().is(TokenKind::op, "-")) {
            BinOp op = peek().lexeme == "+" ? BinOp::add : BinOp::sub;
            SourcePos p = advance().pos;
            auto e = std::make_unique<Expr>();
            e->node = BinaryExpr{op, std::move(lhs), parse_mul()};
            e->pos = p;
            lhs = std::move(e);
        }
        return lhs;
    }

    ExprPtr parse_mul() {
        auto lhs = parse_primary();
        while (peek().is(TokenKind::op, "*") || peek().is(TokenKind::op, "/") ||
               peek().is(TokenKind::op, "%")) {
            BinOp op = peek().lexeme == "*"   ? BinOp::mul
                       : peek().lexeme == "/" ? BinOp::div
                                              : BinOp::mod;
            SourcePos p = advance().pos;
            auto e = std::make_unique<Expr>();
            e->node = BinaryExpr{op, std::move(lhs), parse_primary()};
            e->pos = p;
            lhs = std::move(e);
        }
        return lhs;
    }

    ExprPtr parse_primary() {
        SourcePos p = peek().pos;
        if (peek().is(TokenKind::int_literal) || peek().is(TokenKind::string_literal))
            return make_literal(parse_literal_value(), p);
        if (peek().is(TokenKind::identifier)) {
            std::string name = advance().lexeme;
            if (peek().is(TokenKind::punct, "(")) {
                advance();
                auto args = parse_args();
                expect(TokenKind::punct, ")");
                return make_call_expr(std::move(name), std::move(args), p);
            }
            return make_var_ref(std::move(name), p);
        }
        if (peek().is(TokenKind::punct, "(")) {
            advance();
            auto e = parse_expr();
            expect(TokenKind::punct, ")");
            return e;
        }
        fail("expression");
    }
};

}  // namespace detail

inline AstProgram parse(std::vector<Token> tokens) {
    return detail::Parser(std::move(tokens)).parse_program();
}

inline AstProgram parse_source(std::string_view source) {
    return parse(tokenize(source));
}

}  // namespace rrvar
