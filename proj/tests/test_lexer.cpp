#include <catch2/catch_amalgamated.hpp>

#include "rrvar/lexer.hpp"

using namespace rrvar;

namespace {

std::vector<TokenKind> kinds_of(const std::vector<Token>& toks) {
    std::vector<TokenKind> out;
    for (const auto& t : toks) out.push_back(t.kind);
    return out;
}

std::vector<std::string> lexemes_of(const std::vector<Token>& toks) {
    std::vector<std::string> out;
    for (const auto& t : toks)
        if (!t.is(TokenKind::end_of_input)) out.push_back(t.lexeme);
    return out;
}

}  // namespace

TEST_CASE("tokenize classifies a declaration") {
    auto toks = tokenize("ref_t int cpu = 42;");
    REQUIRE(kinds_of(toks) ==
            std::vector<TokenKind>{TokenKind::attribute, TokenKind::keyword, TokenKind::identifier,
                                   TokenKind::op, TokenKind::int_literal, TokenKind::punct,
                                   TokenKind::end_of_input});
    REQUIRE(lexemes_of(toks) == std::vector<std::string>{"ref_t", "int", "cpu", "=", "42", ";"});
}

TEST_CASE("keywords, attributes, and identifiers are distinct") {
    auto toks = tokenize("int float string if else while sleep print return redundant refx");
    REQUIRE(toks.size() == 12);  // 11 words + end
    for (int i = 0; i < 9; ++i) REQUIRE(toks[i].kind == TokenKind::keyword);
    REQUIRE(toks[9].kind == TokenKind::attribute);
    REQUIRE(toks[10].kind == TokenKind::identifier);
    REQUIRE(toks[10].lexeme == "refx");
}

TEST_CASE("comments and whitespace are skipped") {
    auto toks = tokenize("a // trailing comment ; b\n// full line\n\t c");
    REQUIRE(lexemes_of(toks) == std::vector<std::string>{"a", "c"});
    REQUIRE(toks[1].pos.line == 3);
}

TEST_CASE("positions are 1-based line and column") {
    auto toks = tokenize("ab\n  cd");
    REQUIRE(toks[0].pos.line == 1);
    REQUIRE(toks[0].pos.column == 1);
    REQUIRE(toks[1].pos.line == 2);
    REQUIRE(toks[1].pos.column == 3);
    REQUIRE(toks[2].kind == TokenKind::end_of_input);
    REQUIRE(toks[2].pos.line == 2);
    REQUIRE(toks[2].pos.column == 5);
}

TEST_CASE("two-character operators win over their prefixes") {
    auto toks = tokenize("<= >= == != && || < > = + - * / %");
    REQUIRE(lexemes_of(toks) == std::vector<std::string>{"<=", ">=", "==", "!=", "&&", "||", "<",
                                                         ">", "=", "+", "-", "*", "/", "%"});
    for (const auto& t : toks)
        if (!t.is(TokenKind::end_of_input)) REQUIRE(t.kind == TokenKind::op);
}

TEST_CASE("adjacent comparison characters split greedily") {
    auto toks = tokenize("a<=b");
    REQUIRE(lexemes_of(toks) == std::vector<std::string>{"a", "<=", "b"});
}

TEST_CASE("string literals keep raw lexemes and decode escapes") {
    auto toks = tokenize(R"("plain" "a\nb" "q\"q" "back\\slash" "tab\there")");
    REQUIRE(toks.size() == 6);
    REQUIRE(decode_string_lexeme(toks[0].lexeme) == "plain");
    REQUIRE(decode_string_lexeme(toks[1].lexeme) == "a\nb");
    REQUIRE(decode_string_lexeme(toks[2].lexeme) == "q\"q");
    REQUIRE(decode_string_lexeme(toks[3].lexeme) == "back\\slash");
    REQUIRE(decode_string_lexeme(toks[4].lexeme) == "tab\there");
    REQUIRE(toks[1].lexeme == R"("a\nb")");  // raw slice, quotes included
}

TEST_CASE("integer literals are digit runs") {
    auto toks = tokenize("0 0123 99");
    REQUIRE(lexemes_of(toks) == std::vector<std::string>{"0", "0123", "99"});
    REQUIRE(toks[0].kind == TokenKind::int_literal);
}

TEST_CASE("lexer errors carry positions") {
    REQUIRE_THROWS_AS(tokenize("\"open"), Error);
    REQUIRE_THROWS_AS(tokenize("\"line\nbreak\""), Error);
    REQUIRE_THROWS_AS(tokenize("\"bad \\q escape\""), Error);
    REQUIRE_THROWS_AS(tokenize("a ! b"), Error);  // bare '!' is not an operator
    REQUIRE_THROWS_AS(tokenize("@"), Error);
    try {
        tokenize("ok\n  @");
        FAIL("expected an error");
    } catch (const Error& e) {
        REQUIRE(e.pos().line == 2);
        REQUIRE(e.pos().column == 3);
        REQUIRE_THAT(e.what(), Catch::Matchers::StartsWith("2:3: "));
    }
}

TEST_CASE("empty input yields only the end marker") {
    auto toks = tokenize("");
    REQUIRE(toks.size() == 1);
    REQUIRE(toks[0].kind == TokenKind::end_of_input);
}
