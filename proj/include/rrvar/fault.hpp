#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rrvar/cell_store.hpp"
#include "rrvar/error.hpp"
#include "rrvar/value.hpp"

namespace rrvar {

enum class FaultMode { none, bernoulli, burst, scripted };

struct ScriptedFault {
    long tick = 0;
    int cell = 0;
    Value value;
};

struct FaultPlan {
    FaultMode mode = FaultMode::none;
    std::uint64_t seed = 0;
    double p = 0.0;  // bernoulli: per allocated cell per tick
    int burst_start = 0;
    int burst_len = 0;
    long burst_tick = 0;
    std::vector<ScriptedFault> script;
};

// In-place bit-flip surrogate: deterministic, type-preserving, and never
// equal to the input (for '#'-leading strings the marker switches to '%').
inline Value corrupt_value(const Value& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return ~*i;
    if (const auto* d = std::get_if<double>(&v)) {
        const double out = -*d + 1.0;
        return out == *d ? -*d : out;  // 0.5 is the map's sole fixpoint
    }
    std::string s = std::get<std::string>(v);
    if (s.empty() || s.front() != '#')
        s = s.empty() ? "#" : ('#' + s.substr(1));
    else
        s.front() = '%';
    return s;
}

struct FaultReport {
    std::vector<int> corrupted;
    std::vector<std::string> notes;
};

// Applies one plan against one store, tick by tick. Bernoulli mode draws a
// fresh uniform per allocated cell in slot order, so a run is reproducible
// from the seed alone.
class FaultInjector {
public:
    explicit FaultInjector(FaultPlan plan) : plan_(std::move(plan)), rng_(plan_.seed) {}

    const FaultPlan& plan() const { return plan_; }

    FaultReport apply(CellStore& store, long tick) {
        FaultReport report;
        switch (plan_.mode) {
            case FaultMode::none:
                break;
            case FaultMode::bernoulli:
                for (int slot = 0; slot < store.capacity(); ++slot) {
                    if (!store.allocated(slot)) continue;
                    if (uniform() < plan_.p) {
                        store.corrupt(slot, corrupt_value(store.read(slot)));
                        report.corrupted.push_back(slot);
                    }
                }
                break;
            case FaultMode::burst:
                if (tick == plan_.burst_tick) {
                    for (int slot = plan_.burst_start; slot < plan_.burst_start + plan_.burst_len;
                         ++slot) {
                        if (!store.allocated(slot)) continue;
                        store.corrupt(slot, corrupt_value(store.read(slot)));
                        report.corrupted.push_back(slot);
                    }
                }
                break;
            case FaultMode::scripted:
                for (const auto& f : plan_.script) {
                    if (f.tick != tick) continue;
                    if (store.corrupt(f.cell, f.value)) {
                        report.corrupted.push_back(f.cell);
                    } else {
                        report.notes.push_back("fault skipped: cell " + std::to_string(f.cell) +
                                               " not writable at tick " + std::to_string(tick));
                    }
                }
                break;
        }
        return report;
    }

private:
    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1p-53; }

    FaultPlan plan_;
    std::mt19937_64 rng_;
};

namespace detail {

inline Value parse_fault_value(const std::string& text) {
    try {
        return parse_value(text, TypeCode::int_t);
    } catch (const Error&) {
    }
    try {
        return parse_value(text, TypeCode::float_t);
    } catch (const Error&) {
    }
    return Value(text);
}

}  // namespace detail

// Scenario grammar, one directive per line ('#' starts a comment):
//   seed=<n>
//   mode=bernoulli p=<float>
//   mode=burst start=<n> len=<n> tick=<n>
//   at <tick> cell <n> value <v>
// Any `at` line makes the plan scripted.
inline FaultPlan parse_fault_plan(const std::string& text) {
    FaultPlan plan;
    bool saw_script = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        const auto fail = [&](const std::string& what) -> Error {
            return Error("fault scenario line " + std::to_string(lineno) + ": " + what);
        };
        const auto keyval = [&](const std::string& tok, const std::string& key) {
            if (tok.rfind(key + "=", 0) != 0) throw fail("expected " + key + "=...");
            return tok.substr(key.size() + 1);
        };
        if (word.rfind("seed=", 0) == 0) {
            try {
                plan.seed = std::stoull(word.substr(5));
            } catch (const std::exception&) {
                throw fail("bad seed");
            }
        } else if (word.rfind("mode=", 0) == 0) {
            const std::string mode = word.substr(5);
            if (mode == "bernoulli") {
                plan.mode = FaultMode::bernoulli;
                std::string ptok;
                if (!(ls >> ptok)) throw fail("bernoulli needs p=<float>");
                try {
                    plan.p = std::get<double>(parse_value(keyval(ptok, "p"), TypeCode::float_t));
                } catch (const Error&) {
                    throw fail("bad p");
                }
                if (plan.p < 0.0 || plan.p > 1.0) throw fail("p out of [0,1]");
            } else if (mode == "burst") {
                plan.mode = FaultMode::burst;
                std::string stok, ltok, ttok;
                if (!(ls >> stok >> ltok >> ttok))
                    throw fail("burst needs start=<n> len=<n> tick=<n>");
                try {
                    plan.burst_start = std::stoi(keyval(stok, "start"));
                    plan.burst_len = std::stoi(keyval(ltok, "len"));
                    plan.burst_tick = std::stol(keyval(ttok, "tick"));
                } catch (const std::exception&) {
                    throw fail("bad burst parameter");
                }
                if (plan.burst_start < 0 || plan.burst_len < 0) throw fail("negative burst range");
            } else {
                throw fail("unknown mode '" + mode + "'");
            }
        } else if (word == "at") {
            ScriptedFault f;
            std::string cellkw, cellval, valuekw;
            if (!(ls >> f.tick >> cellkw >> cellval >> valuekw))
                throw fail("expected: at <tick> cell <n> value <v>");
            if (cellkw != "cell" || valuekw != "value")
                throw fail("expected: at <tick> cell <n> value <v>");
            try {
                f.cell = std::stoi(cellval);
            } catch (const std::exception&) {
                throw fail("bad cell index");
            }
            std::string rest;
            std::getline(ls, rest);
            const auto first = rest.find_first_not_of(" \t");
            if (first == std::string::npos) throw fail("missing value");
            const auto last = rest.find_last_not_of(" \t");
            f.value = detail::parse_fault_value(rest.substr(first, last - first + 1));
            plan.script.push_back(std::move(f));
            saw_script = true;
        } else {
            throw fail("unknown directive '" + word + "'");
        }
    }
    if (saw_script) {
        if (plan.mode != FaultMode::none && plan.mode != FaultMode::scripted)
            throw Error("fault scenario mixes mode= with at lines");
        plan.mode = FaultMode::scripted;
    }
    return plan;
}

}  // namespace rrvar
