#pragma once

#include <climits>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rrvar/assoc.hpp"
#include "rrvar/cell_store.hpp"
#include "rrvar/fault.hpp"
#include "rrvar/redundancy.hpp"
#include "rrvar/registry.hpp"
#include "rrvar/trace.hpp"

namespace rrvar {

// A redundancy-only experiment: no program, no devices — one redundant
// variable written and read once per round, with faults injected between
// the write and the read. Rounds double as ticks.
struct SimulateOptions {
    int degree = 3;
    int reads = 100;
    bool adapt = true;
    double epsilon = 1e-9;
    int cells = 4096;
    int banks = 8;
    std::optional<FaultPlan> faults;
    // Built-in scenario: corrupt this many replicas (each with a distinct
    // wrong value) on every read in rounds [corrupt_from, corrupt_to].
    int corrupt_per_read = 0;
    int corrupt_from = 1;
    int corrupt_to = INT_MAX;
};

struct RoundRecord {
    int round = 0;
    std::optional<std::int64_t> voted;  // absent on an integrity failure
    int dissent = 0;
    bool tie = false;
    int redundance = 0;  // the redundance variable's value after the round
};

struct SimulateResult {
    std::string trace;
    std::vector<RoundRecord> rounds;
    int final_ideal = 0;
};

namespace detail {

// Majority peek without voting side effects (no trace, no dissent report),
// so observing the redundance variable does not perturb the controller.
inline std::int64_t peek_int(const CellStore& store, const VarDescriptor& desc) {
    std::vector<Value> replicas;
    replicas.reserve(desc.slots.size());
    for (int slot : desc.slots) replicas.push_back(store.read(slot));
    const VoteResult r = vote(replicas);
    return std::get<std::int64_t>(r.value ? *r.value : replicas.front());
}

}  // namespace detail

inline SimulateResult simulate(const SimulateOptions& opts) {
    if (opts.reads < 0) throw Error("reads must be non-negative");
    if (opts.corrupt_per_read < 0) throw Error("corruptions per read must be non-negative");

    CellStore store(opts.cells, opts.banks);
    Registry registry;
    registry.aopen("reflex", compare_lexical);
    registry.aopen("rtype", compare_lexical);
    Trace trace;
    long tick = 0;

    RedundancyEngine engine(registry, store);
    engine.set_trace(&trace);
    engine.set_epsilon(opts.epsilon);
    engine.set_adapt(opts.adapt);
    engine.set_tick_source([&tick] { return tick; });
    engine.force_ideal(opts.degree);
    engine.set_redundance_sink([&engine](int degree) {
        engine.assign("redundance", Value(static_cast<std::int64_t>(degree)));
    });

    allocate_variable(registry, store, "x", TypeCode::int_t, KindSet{false, false, true},
                      opts.degree);
    allocate_variable(registry, store, "redundance", TypeCode::int_t,
                      KindSet{true, false, true}, engine.ideal_degree(), "redundance");
    engine.assign("redundance", Value(static_cast<std::int64_t>(engine.ideal_degree())));

    std::optional<FaultInjector> injector;
    if (opts.faults) injector.emplace(*opts.faults);

    SimulateResult result;
    for (int round = 1; round <= opts.reads; ++round) {
        tick = round;
        const Value written(static_cast<std::int64_t>(round));
        engine.assign("x", written);

        if (injector) {
            const FaultReport report = injector->apply(store, tick);
            for (const auto& note : report.notes)
                trace.record(tick, TraceKind::note, "fault", note);
        }
        if (opts.corrupt_per_read > 0 && round >= opts.corrupt_from && round <= opts.corrupt_to) {
            const VarDescriptor& desc = registry.reflex().aread("x");
            const int hits = std::min<int>(opts.corrupt_per_read, desc.degree());
            for (int j = 0; j < hits; ++j)
                store.corrupt(desc.slots[static_cast<std::size_t>(j)],
                              Value(~static_cast<std::int64_t>(round) - j));
        }

        RoundRecord rec;
        rec.round = round;
        try {
            const Value voted = engine.read("x");
            rec.voted = std::get<std::int64_t>(voted);
            rec.dissent = engine.state().window.back();
        } catch (const Trap&) {
            // Uncorrectable this round; the dissent was still reported, so
            // the experiment records it and moves on.
            rec.tie = true;
            rec.dissent = engine.state().window.back();
            trace.record(tick, TraceKind::note, "x", "integrity failure tolerated");
        }
        rec.redundance =
            static_cast<int>(detail::peek_int(store, registry.reflex().aread("redundance")));
        result.rounds.push_back(rec);
    }

    result.final_ideal = engine.ideal_degree();
    result.trace = trace.render();
    return result;
}

}  // namespace rrvar
