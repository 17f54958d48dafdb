#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rrvar/cell_store.hpp"
#include "rrvar/controller.hpp"
#include "rrvar/error.hpp"
#include "rrvar/registry.hpp"
#include "rrvar/trace.hpp"
#include "rrvar/value.hpp"
#include "rrvar/vote.hpp"

namespace rrvar {

// Voted replicated storage with feedback-controlled degree. Writes rescale
// the replica set to the controller's current ideal; reads vote, repair
// dissenting replicas in place, and feed the observed dissent back — on a
// tie the dissent is still reported before the integrity trap fires, so the
// controller can adapt past corruption levels the current degree cannot
// mask.
class RedundancyEngine {
public:
    RedundancyEngine(Registry& registry, CellStore& store)
        : registry_(registry), store_(store) {}

    void set_trace(Trace* trace) { trace_ = trace; }
    void set_epsilon(double epsilon) {
        if (epsilon < 0) throw Error("float tolerance must be non-negative");
        epsilon_ = epsilon;
    }
    void set_adapt(bool on) { adapt_ = on; }
    void set_tick_source(std::function<long()> fn) { tick_source_ = std::move(fn); }
    // Receives the new ideal degree whenever the controller moves it.
    void set_redundance_sink(std::function<void(int)> fn) { redundance_sink_ = std::move(fn); }

    double epsilon() const { return epsilon_; }
    bool adapt() const { return adapt_; }
    int ideal_degree() const { return state_.ideal_degree; }
    const RedundanceState& state() const { return state_; }

    // Experiment entry: start the controller at a chosen degree instead of
    // the minimum. Past faults are forgotten; with no further dissent the
    // feedback pulls the degree back down.
    void force_ideal(int degree) {
        if (degree < kMinDegree || degree > kMaxDegree || degree % 2 == 0)
            throw Error("ideal degree must be odd and within [3, 9]");
        state_.ideal_degree = degree;
    }

    void assign(const std::string& name, const Value& value) {
        VarDescriptor& desc = descriptor(name);
        const Value stored = coerce(value, desc.type);
        if (adapt_ && desc.degree() != state_.ideal_degree) rescale(desc);
        for (int slot : desc.slots) store_.write(slot, stored);
    }

    Value read(const std::string& name) {
        VarDescriptor& desc = descriptor(name);
        std::vector<Value> replicas;
        replicas.reserve(desc.slots.size());
        for (int slot : desc.slots) replicas.push_back(store_.read(slot));
        const VoteResult result = vote(replicas, epsilon_);
        if (result.tie) {
            record(TraceKind::vote, name,
                   "tie|maj=" + std::to_string(result.majority_count) +
                       "|dis=" + std::to_string(result.dissent));
            observe_dissent(result.dissent);
            throw Trap(ExitCode::integrity_failure,
                       "integrity failure: no majority among " +
                           std::to_string(desc.degree()) + " replicas of '" + name + "'");
        }
        const Value& voted = *result.value;
        for (int slot : desc.slots)
            if (!detail::vote_equal(store_.read(slot), voted, epsilon_))
                store_.write(slot, voted);
        record(TraceKind::vote, name,
               to_display(voted) + "|maj=" + std::to_string(result.majority_count) +
                   "|dis=" + std::to_string(result.dissent));
        observe_dissent(result.dissent);
        return voted;
    }

    // One controller update; publishes degree changes to the trace and to
    // the internal redundance feed.
    void observe_dissent(int dissent) {
        if (controller_step(state_, dissent)) {
            record(TraceKind::redundance, "redundance", std::to_string(state_.ideal_degree));
            if (redundance_sink_) redundance_sink_(state_.ideal_degree);
        }
    }

private:
    VarDescriptor& descriptor(const std::string& name) {
        VarDescriptor& desc = registry_.reflex().aread(name);
        if (!desc.kinds.redundant)
            throw Error("variable '" + name + "' is not redundant");
        return desc;
    }

    // Allocate-then-free so an out-of-cells failure leaves the old replica
    // set intact.
    void rescale(VarDescriptor& desc) {
        std::vector<int> fresh = store_.allocate(desc.type, state_.ideal_degree);
        store_.free_slots(desc.slots);
        desc.slots = std::move(fresh);
    }

    void record(TraceKind kind, const std::string& name, std::string value) {
        if (trace_) trace_->record(tick_source_ ? tick_source_() : 0, kind, name, std::move(value));
    }

    Registry& registry_;
    CellStore& store_;
    Trace* trace_ = nullptr;
    double epsilon_ = 1e-9;
    bool adapt_ = true;
    RedundanceState state_;
    std::function<long()> tick_source_;
    std::function<void(int)> redundance_sink_;
};

}  // namespace rrvar
