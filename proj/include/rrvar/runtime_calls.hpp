#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rrvar/value.hpp"

namespace rrvar {

// The internal runtime call names are fixed so translated output stays
// stable across toolchain versions.
namespace calls {
inline constexpr const char* aopen = "__aopen";
inline constexpr const char* awrite_reflex = "__awrite_reflex";
inline constexpr const char* awrite_rtype = "__awrite_rtype";
inline constexpr const char* spawn_server = "__spawn_server";
inline constexpr const char* call_v = "__call_v";

inline std::string redundant_assign(TypeCode t) {
    return std::string("__redundant_assign_") + type_name(t);
}
inline std::string redundant_read(TypeCode t) {
    return std::string("__redundant_read_") + type_name(t);
}
}  // namespace calls

enum class ArgKind { string_lit, int_lit, value };

struct BuiltinSig {
    std::vector<ArgKind> args;
    bool is_expr = false;                       // usable as an expression
    std::optional<TypeCode> value_type = {};    // read/assign element type
};

inline std::optional<BuiltinSig> builtin_signature(std::string_view name) {
    using AK = ArgKind;
    if (name == calls::aopen) return BuiltinSig{{AK::string_lit}, false, {}};
    if (name == calls::awrite_reflex) return BuiltinSig{{AK::string_lit}, false, {}};
    if (name == calls::awrite_rtype) return BuiltinSig{{AK::string_lit, AK::int_lit}, false, {}};
    if (name == calls::spawn_server) return BuiltinSig{{}, false, {}};
    if (name == calls::call_v) return BuiltinSig{{AK::string_lit}, false, {}};
    for (TypeCode t : {TypeCode::int_t, TypeCode::float_t, TypeCode::string_t}) {
        if (name == calls::redundant_assign(t))
            return BuiltinSig{{AK::string_lit, AK::value}, false, t};
        if (name == calls::redundant_read(t)) return BuiltinSig{{AK::string_lit}, true, t};
    }
    return std::nullopt;
}

inline bool is_runtime_call(std::string_view name) {
    return builtin_signature(name).has_value();
}

}  // namespace rrvar
