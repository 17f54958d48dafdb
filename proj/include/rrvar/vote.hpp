#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <vector>

#include "rrvar/error.hpp"
#include "rrvar/value.hpp"

namespace rrvar {

// majority_count + dissent always equals the number of votes; tie holds
// exactly when no value reaches a strict majority (and then value is absent).
struct VoteResult {
    std::optional<Value> value;
    int majority_count = 0;
    int dissent = 0;
    bool tie = false;
};

namespace detail {

inline bool vote_equal(const Value& a, const Value& b, double epsilon) {
    if (a.index() != b.index()) return false;
    if (const auto* da = std::get_if<double>(&a))
        return std::fabs(*da - std::get<double>(b)) <= epsilon;
    return a == b;
}

}  // namespace detail

// Majority voting by grouping: ints and strings compare exactly, floats
// join the first group whose representative is within epsilon. The largest
// group wins only with a strict majority; anything else is a tie.
inline VoteResult vote(const std::vector<Value>& values, double epsilon = 1e-9) {
    if (values.empty()) throw Error("vote over empty value list");
    const TypeCode t = type_of(values.front());
    for (const auto& v : values)
        if (type_of(v) != t) throw Error("vote over mixed-type values");
    if (epsilon < 0) throw Error("vote epsilon must be non-negative");

    struct Group {
        const Value* rep;
        int count;
    };
    std::vector<Group> groups;
    for (const auto& v : values) {
        bool placed = false;
        for (auto& g : groups) {
            if (detail::vote_equal(*g.rep, v, epsilon)) {
                ++g.count;
                placed = true;
                break;
            }
        }
        if (!placed) groups.push_back(Group{&v, 1});
    }

    const Group* best = &groups.front();
    for (const auto& g : groups)
        if (g.count > best->count) best = &g;

    const int n = static_cast<int>(values.size());
    VoteResult result;
    result.majority_count = best->count;
    result.dissent = n - best->count;
    if (best->count * 2 > n) {
        result.value = *best->rep;
    } else {
        result.tie = true;
    }
    return result;
}

}  // namespace rrvar
