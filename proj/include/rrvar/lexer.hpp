#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "rrvar/token.hpp"

namespace rrvar {

namespace detail {

inline bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

inline bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
}

inline bool is_keyword(std::string_view s) {
    static constexpr std::array<std::string_view, 9> kw = {
        "int", "float", "string", "if", "else", "while", "sleep", "print", "return",
    };
    for (auto k : kw)
        if (k == s) return true;
    return false;
}

}  // namespace detail

// Splits source into tokens. The concatenation of lexemes reproduces the
// significant input; // comments and whitespace are skipped.
inline std::vector<Token> tokenize(std::string_view source) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    const std::size_t n = source.size();

    auto advance = [&](std::size_t count) {
        for (std::size_t k = 0; k < count; ++k, ++i) {
            if (source[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto push = [&](TokenKind kind, std::size_t start, std::size_t len, SourcePos pos) {
        out.push_back(Token{kind, std::string(source.substr(start, len)), pos});
    };

    while (i < n) {
        char c = source[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < n && source[i + 1] == '/') {
            while (i < n && source[i] != '\n') advance(1);
            continue;
        }
        SourcePos pos{line, col};
        if (c >= '0' && c <= '9') {
            std::size_t start = i;
            while (i < n && source[i] >= '0' && source[i] <= '9') advance(1);
            push(TokenKind::int_literal, start, i - start, pos);
            continue;
        }
        if (detail::is_ident_start(c)) {
            std::size_t start = i;
            while (i < n && detail::is_ident_char(source[i])) advance(1);
            std::string_view word = source.substr(start, i - start);
            TokenKind kind = TokenKind::identifier;
            if (word == "ref_t" || word == "redundant")
                kind = TokenKind::attribute;
            else if (detail::is_keyword(word))
                kind = TokenKind::keyword;
            push(kind, start, i - start, pos);
            continue;
        }
        if (c == '"') {
            std::size_t start = i;
            advance(1);
            std::string text;
            bool closed = false;
            while (i < n) {
                char d = source[i];
                if (d == '"') {
                    advance(1);
                    closed = true;
                    break;
                }
                if (d == '\n') break;
                if (d == '\\' && i + 1 < n) {
                    char e = source[i + 1];
                    switch (e) {
                        case 'n': text += '\n'; break;
                        case 't': text += '\t'; break;
                        case '\\': text += '\\'; break;
                        case '"': text += '"'; break;
                        default:
                            throw Error(std::string("unknown escape '\\") + e + "'",
                                        SourcePos{line, col});
                    }
                    advance(2);
                    continue;
                }
                text += d;
                advance(1);
            }
            if (!closed) throw Error("unterminated string literal", pos);
            // Lexeme keeps the raw source slice; the decoded text is re-derived
            // by the parser from the escapes.
            push(TokenKind::string_literal, start, i - start, pos);
            continue;
        }
        // Two-char operators first.
        if (i + 1 < n) {
            std::string_view two = source.substr(i, 2);
            if (two == "<=" || two == ">=" || two == "==" || two == "!=" ||
                two == "&&" || two == "||") {
                push(TokenKind::op, i, 2, pos);
                advance(2);
                continue;
            }
        }
        switch (c) {
            case '=': case '+': case '-': case '*': case '/': case '%':
            case '<': case '>':
                push(TokenKind::op, i, 1, pos);
                advance(1);
                continue;
            case ';': case '(': case ')': case '{': case '}': case ',':
                push(TokenKind::punct, i, 1, pos);
                advance(1);
                continue;
            default:
                throw Error(std::string("unexpected character '") + c + "'", pos);
        }
    }
    out.push_back(Token{TokenKind::end_of_input, "", SourcePos{line, col}});
    return out;
}

// Decode the escapes of a string-literal lexeme (quotes included).
inline std::string decode_string_lexeme(const std::string& lexeme) {
    std::string text;
    for (std::size_t i = 1; i + 1 < lexeme.size(); ++i) {
        char c = lexeme[i];
        if (c == '\\' && i + 2 < lexeme.size()) {
            char e = lexeme[i + 1];
            switch (e) {
                case 'n': text += '\n'; ++i; continue;
                case 't': text += '\t'; ++i; continue;
                case '\\': text += '\\'; ++i; continue;
                case '"': text += '"'; ++i; continue;
            }
        }
        text += c;
    }
    return text;
}

}  // namespace rrvar
