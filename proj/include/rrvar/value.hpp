#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <variant>

#include "rrvar/error.hpp"

namespace rrvar {

// Numeric codes are stable across runs; they appear in trace logs and
// in the instrumented __awrite_rtype calls.
enum class TypeCode : int {
    int_t = 1,
    float_t = 2,
    string_t = 3,
};

inline const char* type_name(TypeCode t) {
    switch (t) {
        case TypeCode::int_t: return "int";
        case TypeCode::float_t: return "float";
        case TypeCode::string_t: return "string";
    }
    return "?";
}

inline TypeCode type_from_code(int code) {
    if (code < 1 || code > 3) throw Error("bad type code " + std::to_string(code));
    return static_cast<TypeCode>(code);
}

using Value = std::variant<std::int64_t, double, std::string>;

inline TypeCode type_of(const Value& v) {
    switch (v.index()) {
        case 0: return TypeCode::int_t;
        case 1: return TypeCode::float_t;
        default: return TypeCode::string_t;
    }
}

inline Value zero_value(TypeCode t) {
    switch (t) {
        case TypeCode::int_t: return Value(std::int64_t{0});
        case TypeCode::float_t: return Value(0.0);
        default: return Value(std::string{});
    }
}

// Shortest round-trip formatting; keeps traces byte-stable.
inline std::string format_double(double d) {
    char buf[48];
    auto res = std::to_chars(buf, buf + sizeof(buf), d);
    return std::string(buf, res.ptr);
}

inline std::string to_display(const Value& v) {
    switch (v.index()) {
        case 0: return std::to_string(std::get<std::int64_t>(v));
        case 1: return format_double(std::get<double>(v));
        default: return std::get<std::string>(v);
    }
}

// Upward coercion only: int widens to float, nothing narrows.
inline Value coerce(const Value& v, TypeCode target) {
    TypeCode have = type_of(v);
    if (have == target) return v;
    if (have == TypeCode::int_t && target == TypeCode::float_t)
        return Value(static_cast<double>(std::get<std::int64_t>(v)));
    throw Error(std::string("type mismatch: cannot store ") + type_name(have) +
                " into " + type_name(target));
}

// Parse raw device text into a typed value. Throws on malformed input.
inline Value parse_value(const std::string& text, TypeCode target) {
    switch (target) {
        case TypeCode::int_t: {
            std::int64_t n = 0;
            auto res = std::from_chars(text.data(), text.data() + text.size(), n);
            if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
                throw Error("malformed int value '" + text + "'");
            return Value(n);
        }
        case TypeCode::float_t: {
            double d = 0;
            auto res = std::from_chars(text.data(), text.data() + text.size(), d);
            if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
                throw Error("malformed float value '" + text + "'");
            return Value(d);
        }
        default:
            return Value(text);
    }
}

}  // namespace rrvar
