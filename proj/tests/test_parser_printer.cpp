#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "rrvar/parser.hpp"
#include "rrvar/printer.hpp"

using namespace rrvar;

TEST_CASE("corpus programs survive a print/reparse round trip") {
    auto files = testutil::corpus_files();
    REQUIRE(files.size() >= 10);
    for (const auto& f : files) {
        INFO(f.filename().string());
        AstProgram prog = parse_source(testutil::read_file(f));
        const std::string printed = pretty_print(prog);
        AstProgram again = parse_source(printed);
        REQUIRE(equal(prog, again));
        REQUIRE(pretty_print(again) == printed);  // printing is idempotent
    }
}

TEST_CASE("precedence and associativity round-trip to fixed text") {
    // Parse a noisy spelling, print the canonical one, and confirm the
    // canonical spelling reparses to the same tree.
    const std::pair<const char*, const char*> cases[] = {
        {"x = a + b * c;", "x = a + b * c;"},
        {"x = (a + b) * c;", "x = (a + b) * c;"},
        {"x = ((a) + (b * c));", "x = a + b * c;"},
        {"x = a - b - c;", "x = a - b - c;"},
        {"x = a - (b - c);", "x = a - (b - c);"},
        {"x = a / b % c;", "x = a / b % c;"},
        {"x = a < b == c;", "x = a < b == c;"},
        {"x = a && b || c && d;", "x = a && b || c && d;"},
        {"x = (a || b) && c;", "x = (a || b) && c;"},
        {"x = a == (b && c);", "x = a == (b && c);"},
        {"x = a + b < c * d;", "x = a + b < c * d;"},
    };
    for (const auto& [input, expected] : cases) {
        INFO(input);
        const std::string src =
            std::string("int a;\nint b;\nint c;\nint d;\nint x;\nint main() {\n    ") + input +
            "\n}\n";
        AstProgram prog = parse_source(src);
        const std::string printed = pretty_print(prog);
        REQUIRE_THAT(printed, Catch::Matchers::ContainsSubstring(std::string("    ") + expected));
        REQUIRE(equal(prog, parse_source(printed)));
    }
}

TEST_CASE("empty main prints in canonical form") {
    REQUIRE(pretty_print(parse_source("int main() {}")) == "int main() {\n}\n");
}

TEST_CASE("declarations print before a blank-separated function list") {
    const std::string printed = pretty_print(
        parse_source("int a = 1;\nint f() { return; }\nint main() { f(); }"));
    REQUIRE(printed ==
            "int a = 1;\n\nint f() {\n    return;\n}\n\nint main() {\n    f();\n}\n");
}

TEST_CASE("attributed declarations print their attributes") {
    const std::string printed =
        pretty_print(parse_source("ref_t int cpu;\nredundant string s = \"x\";\nint main() {}"));
    REQUIRE_THAT(printed, Catch::Matchers::ContainsSubstring("ref_t int cpu;"));
    REQUIRE_THAT(printed, Catch::Matchers::ContainsSubstring("redundant string s = \"x\";"));
}

TEST_CASE("string literals round-trip through escaping") {
    AstProgram prog = parse_source("string s = \"a\\n\\t\\\"\\\\z\";\nint main() {}");
    REQUIRE(std::get<std::string>(*prog.decls[0].init) == "a\n\t\"\\z");
    REQUIRE(equal(prog, parse_source(pretty_print(prog))));
}

namespace {

// Bounded random program generator for the round-trip property. Everything
// it emits is grammatically valid by construction; validity of names and
// types is irrelevant to parse/print equality.
class AstGen {
public:
    explicit AstGen(std::uint32_t seed) : rng_(seed) {}

    AstProgram program() {
        AstProgram p;
        const int decls = pick(0, 4);
        for (int i = 0; i < decls; ++i) p.decls.push_back(decl(i));
        const int funcs = pick(1, 3);
        for (int i = 0; i < funcs; ++i)
            p.functions.push_back(FuncDef{i == 0 ? "main" : name(10 + i), block(2), {}});
        return p;
    }

private:
    std::mt19937 rng_;

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    std::string name(int i) { return "v" + std::to_string(i); }

    Value literal() {
        switch (pick(0, 2)) {
            case 0: return Value(static_cast<std::int64_t>(pick(0, 999)));
            case 1: return Value(std::string("s") + std::to_string(pick(0, 9)));
            default: return Value(std::string("a\nb\t\"c\\d"));
        }
    }

    VarDecl decl(int i) {
        VarDecl d;
        d.name = name(i);
        d.type = static_cast<TypeCode>(pick(1, 3));
        d.attrs.ref_t = pick(0, 3) == 0;
        d.attrs.redundant = pick(0, 3) == 0;
        if (pick(0, 1)) {
            // Keep initializer shape legal: ints or strings only.
            d.init = pick(0, 1) ? Value(static_cast<std::int64_t>(pick(0, 99)))
                                : Value(std::string("init") + std::to_string(i));
        }
        return d;
    }

    ExprPtr expr(int depth) {
        if (depth <= 0 || pick(0, 3) == 0) {
            if (pick(0, 1)) return make_literal(literal());
            return make_var_ref(name(pick(0, 6)));
        }
        if (pick(0, 5) == 0) {
            std::vector<ExprPtr> args;
            const int n = pick(0, 2);
            for (int i = 0; i < n; ++i) args.push_back(expr(depth - 1));
            return make_call_expr(name(pick(0, 6)), std::move(args));
        }
        auto e = std::make_unique<Expr>();
        e->node = BinaryExpr{static_cast<BinOp>(pick(0, 12)), expr(depth - 1), expr(depth - 1)};
        return e;
    }

    StmtPtr stmt(int depth) {
        auto s = std::make_unique<Stmt>();
        switch (pick(0, depth > 0 ? 6 : 4)) {
            case 0: s->node = AssignStmt{name(pick(0, 6)), expr(depth)}; break;
            case 1: {
                std::vector<ExprPtr> args;
                const int n = pick(0, 3);
                for (int i = 0; i < n; ++i) args.push_back(expr(depth));
                s->node = CallStmt{name(pick(0, 6)), std::move(args)};
                break;
            }
            case 2: s->node = SleepStmt{expr(depth)}; break;
            case 3: {
                std::vector<ExprPtr> args;
                const int n = pick(1, 3);
                for (int i = 0; i < n; ++i) args.push_back(expr(depth));
                s->node = PrintStmt{std::move(args)};
                break;
            }
            case 4: s->node = ReturnStmt{}; break;
            case 5: {
                IfStmt node;
                node.cond = expr(depth - 1);
                node.then_block = block(depth - 1);
                if (pick(0, 1)) node.else_block = block(depth - 1);
                s->node = std::move(node);
                break;
            }
            default: s->node = WhileStmt{expr(depth - 1), block(depth - 1)}; break;
        }
        return s;
    }

    Block block(int depth) {
        Block b;
        const int n = pick(0, 3);
        for (int i = 0; i < n; ++i) b.push_back(stmt(depth));
        return b;
    }
};

}  // namespace

TEST_CASE("random programs satisfy parse(print(p)) == p") {
    for (std::uint32_t seed = 1; seed <= 200; ++seed) {
        AstGen gen(seed);
        AstProgram p = gen.program();
        const std::string printed = pretty_print(p);
        INFO("seed " << seed << "\n" << printed);
        AstProgram back = parse_source(printed);
        REQUIRE(equal(p, back));
        REQUIRE(pretty_print(back) == printed);
    }
}

TEST_CASE("parse diagnostics are positioned") {
    try {
        parse_source("int main() {\n  x = ;\n}");
        FAIL("expected an error");
    } catch (const Error& e) {
        REQUIRE(e.pos().line == 2);
        REQUIRE_THAT(e.what(), Catch::Matchers::ContainsSubstring("expected expression"));
    }
    REQUIRE_THROWS_AS(parse_source("int a"), Error);                   // missing ;
    REQUIRE_THROWS_AS(parse_source("int a;"), Error);                  // no functions
    REQUIRE_THROWS_AS(parse_source("int main() {"), Error);            // unclosed block
    REQUIRE_THROWS_AS(parse_source("int main() {} int b;"), Error);    // decl after func
    REQUIRE_THROWS_AS(parse_source("ref_t ref_t int a;\nint main() {}"), Error);
    REQUIRE_THROWS_AS(parse_source("int a = b;\nint main() {}"), Error);  // init not literal
    REQUIRE_THROWS_AS(parse_source("int a = 99999999999999999999;\nint main() {}"), Error);
    REQUIRE_THROWS_AS(parse_source("int main() { sleep(1) }"), Error);  // missing ;
    REQUIRE_THROWS_AS(parse_source("int main() { if (1) print(1); }"), Error);  // needs block
}
