#pragma once

#include <string>

#include "rrvar/error.hpp"

namespace rrvar {

enum class TokenKind {
    keyword,
    attribute,  // exactly ref_t or redundant
    identifier,
    int_literal,
    string_literal,
    op,
    punct,
    end_of_input,
};

struct Token {
    TokenKind kind = TokenKind::end_of_input;
    std::string lexeme;
    SourcePos pos;

    bool is(TokenKind k) const { return kind == k; }
    bool is(TokenKind k, const char* text) const { return kind == k && lexeme == text; }
};

inline const char* token_kind_name(TokenKind k) {
    switch (k) {
        case TokenKind::keyword: return "keyword";
        case TokenKind::attribute: return "attribute";
        case TokenKind::identifier: return "identifier";
        case TokenKind::int_literal: return "integer";
        case TokenKind::string_literal: return "string";
        case TokenKind::op: return "operator";
        case TokenKind::punct: return "punctuation";
        case TokenKind::end_of_input: return "end of input";
    }
    return "?";
}

}  // namespace rrvar
