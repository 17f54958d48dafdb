#pragma once

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rrvar/assoc.hpp"
#include "rrvar/cell_store.hpp"
#include "rrvar/device.hpp"
#include "rrvar/error.hpp"
#include "rrvar/fault.hpp"
#include "rrvar/redundancy.hpp"
#include "rrvar/registry.hpp"
#include "rrvar/trace.hpp"
#include "rrvar/value.hpp"

namespace rrvar {

// Everything spawn_server needs from the interpreter: current global
// values, declaration initializers (the watch rule), and whether a named
// zero-arg function exists (watch callback check).
struct SpawnContext {
    std::function<std::optional<Value>(const std::string&)> current_value;
    std::function<std::optional<Value>(const std::string&)> init_literal;
    std::function<bool(const std::string&)> has_function;
};

struct Watch {
    std::string var;
    Value match;
    std::string callback;
};

// The running half of an instrumented program: registry, replicated
// storage, device simulation, the Server, and logical time. The Server
// runs either cooperatively (drained at statement boundaries and tick
// advances) or as a real thread gated to drain exactly at tick barriers —
// both schedules are deterministic.
class Runtime {
public:
    Runtime(RuntimeConfig config, Trace& trace, std::optional<FaultPlan> faults = {})
        : config_(std::move(config)),
          trace_(trace),
          store_(config_.cells, config_.banks),
          engine_(registry_, store_) {
        engine_.set_trace(&trace_);
        engine_.set_epsilon(config_.epsilon);
        engine_.set_tick_source([this] { return tick_; });
        engine_.set_redundance_sink([this](int degree) {
            queue_.push(DeviceEvent{"redundance", std::to_string(degree), tick_});
        });
        if (faults) injector_.emplace(std::move(*faults));
    }

    ~Runtime() { stop_server(); }

    Runtime(const Runtime&) = delete;
    Runtime& operator=(const Runtime&) = delete;

    // --- registration protocol (the instrumented prologue) ---

    void aopen(const std::string& name) { registry_.aopen(name, compare_lexical); }

    void awrite_reflex(const std::string& name) {
        if (!registry_.is_open("reflex")) throw Error("awrite before aopen(\"reflex\")");
        for (const auto& s : staged_)
            if (s.name == name) throw Error("duplicate registration of '" + name + "'");
        staged_.push_back(Staged{name, std::nullopt});
    }

    void awrite_rtype(const std::string& name, std::int64_t code) {
        if (!registry_.is_open("rtype")) throw Error("awrite before aopen(\"rtype\")");
        for (auto& s : staged_) {
            if (s.name != name) continue;
            if (s.type) throw Error("duplicate type registration of '" + name + "'");
            s.type = type_from_code(code);
            return;
        }
        throw Error("type registered for unknown name '" + name + "'");
    }

    void spawn_server(const SpawnContext& ctx) {
        if (spawned_) throw Error("server already spawned");
        registry_.reflex();  // both arrays must be open
        registry_.rtype();
        for (const auto& s : staged_)
            if (!s.type) throw Error("no type registered for '" + s.name + "'");

        for (const auto& s : staged_) {
            if (s.name == "redundance") {
                if (*s.type != TypeCode::int_t)
                    throw Error("the redundance variable must be int");
                continue;  // registered last, below
            }
            install(s.name, *s.type, ctx);
        }
        install_redundance(ctx);

        for (const auto& w : watches_)
            if (!ctx.has_function(w.callback))
                throw Error("unknown watch callback '" + w.callback + "'");

        spawned_ = true;
        if (config_.schedule == ServerSchedule::concurrent)
            server_thread_ = std::thread([this] { server_main(); });
    }

    bool server_spawned() const { return spawned_; }

    // --- variable access (interpreter side) ---

    bool registered(const std::string& name) const {
        return spawned_ && registry_.registered(name);
    }

    Value read_var(const std::string& name) {
        const VarDescriptor& desc = registry_.reflex().aread(name);
        if (desc.kinds.redundant) return engine_.read(name);
        return store_.read(desc.slots[0]);
    }

    // Plain store; the next Server update for the bound device overwrites it.
    void write_var(const std::string& name, const Value& v) {
        VarDescriptor& desc = registry_.reflex().aread(name);
        if (desc.kinds.redundant) {
            engine_.assign(name, v);
            return;
        }
        store_.write(desc.slots[0], coerce(v, desc.type));
    }

    Value redundant_read(const std::string& name, TypeCode expected) {
        check_builtin_type(name, expected, "read");
        return engine_.read(name);
    }

    void redundant_assign(const std::string& name, TypeCode expected, const Value& v) {
        check_builtin_type(name, expected, "assign");
        engine_.assign(name, v);
    }

    void call_actuator(const std::string& name) {
        if (!registered(name)) throw Error("call to unregistered variable '" + name + "'");
        const VarDescriptor& desc = registry_.reflex().aread(name);
        const DeviceSpec* dev = desc.device ? config_.find(*desc.device) : nullptr;
        if (!dev || !dev->caps.actuator)
            throw Trap(ExitCode::not_an_actuator,
                       "variable '" + name + "' is not bound to an actuator");
        const Value v = store_.read(desc.slots[0]);
        trace_.record(tick_, TraceKind::act, name, to_display(v));
        log_.append(tick_, dev->name, v);
        // Sensor-capable actuators echo the actuated value back, so the
        // reflective side of the variable observes what was set.
        if (dev->caps.sensor) queue_.push(DeviceEvent{dev->name, to_display(v), tick_});
    }

    // --- logical time ---

    long tick() const { return tick_; }

    // Per tick: inject faults, pump sensors, let the Server drain.
    void advance_tick(long n = 1) {
        for (long i = 0; i < n; ++i) {
            ++tick_;
            if (injector_) {
                const FaultReport report = injector_->apply(store_, tick_);
                for (const auto& note : report.notes)
                    trace_.record(tick_, TraceKind::note, "fault", note);
            }
            for (auto& dev : config_.devices)
                if (auto e = get_value(dev, tick_)) queue_.push(std::move(*e));
            drain();
        }
    }

    // Cooperative schedule: the Server runs between statements too, so
    // mid-tick events (actuator echoes) land at the earliest boundary.
    void statement_boundary() {
        if (!spawned_ || config_.schedule != ServerSchedule::cooperative) return;
        drain_cooperative();
    }

    std::vector<std::string> take_pending_callbacks() {
        return std::exchange(pending_callbacks_, {});
    }

    // --- accessors ---

    Trace& trace() { return trace_; }
    ActuatorLog& actuator_log() { return log_; }
    RedundancyEngine& engine() { return engine_; }
    CellStore& store() { return store_; }
    Registry& registry() { return registry_; }
    RuntimeConfig& config() { return config_; }
    EventQueue& queue() { return queue_; }

private:
    struct Staged {
        std::string name;
        std::optional<TypeCode> type;
    };

    // Kinds are re-derived from the device config: a name bound to a
    // configured device is reflective/refractive per its capabilities; an
    // unbound name is redundant. The translator keeps this bijective by
    // rejecting device-name collisions for redundant variables.
    void install(const std::string& name, TypeCode type, const SpawnContext& ctx) {
        const DeviceSpec* dev = config_.find(name);
        KindSet kinds;
        if (dev) {
            kinds.reflective = dev->caps.sensor;
            kinds.refractive = dev->caps.actuator;
        } else {
            kinds.redundant = true;
        }
        const int degree = kinds.redundant ? engine_.ideal_degree() : 1;
        allocate_variable(registry_, store_, name, type, kinds, degree,
                          dev ? std::optional<std::string>(dev->name) : std::nullopt);
        if (auto v = ctx.current_value ? ctx.current_value(name) : std::nullopt) {
            if (kinds.redundant)
                engine_.assign(name, *v);
            else
                write_var(name, *v);
        }
        if (dev && dev->caps.sensor && ctx.init_literal) {
            if (auto init = ctx.init_literal(name))
                watches_.push_back(Watch{name, coerce(*init, type), config_.on_match});
        }
    }

    // The controller's output variable: reflective (fed by the internal
    // redundance device) and itself redundant. Registered last, whether or
    // not the program declared it.
    void install_redundance(const SpawnContext& ctx) {
        if (!config_.find("redundance")) {
            DeviceSpec dev;
            dev.name = "redundance";
            dev.caps = Capability{true, false};
            dev.source = SourceKind::internal;
            config_.devices.push_back(std::move(dev));
        }
        KindSet kinds;
        kinds.reflective = true;
        kinds.redundant = true;
        allocate_variable(registry_, store_, "redundance", TypeCode::int_t, kinds,
                          engine_.ideal_degree(), "redundance");
        engine_.assign("redundance", Value(static_cast<std::int64_t>(engine_.ideal_degree())));
        if (ctx.init_literal) {
            if (auto init = ctx.init_literal("redundance"))
                watches_.push_back(
                    Watch{"redundance", coerce(*init, TypeCode::int_t), config_.on_match});
        }
    }

    void check_builtin_type(const std::string& name, TypeCode expected, const char* what) {
        if (!registered(name)) throw Error("redundant variable '" + name + "' is not registered");
        const VarDescriptor& desc = registry_.reflex().aread(name);
        if (desc.type != expected)
            throw Error(std::string("redundant ") + what + " of '" + name + "' expects " +
                        type_name(expected) + ", variable is " + type_name(desc.type));
    }

    // Server loop body: resolve the event's variable, type its payload,
    // store it, fire watches. Never raises into the program — failures
    // become trace notes. Trace lines carry the drain-time tick so the
    // tick column stays non-decreasing under both schedules.
    void apply_event(const DeviceEvent& e) {
        if (!registry_.registered(e.device)) {
            trace_.record(tick_, TraceKind::note, e.device, "unknown name");
            return;
        }
        const VarDescriptor& desc = registry_.reflex().aread(e.device);
        const TypeCode type = registry_.rtype().aread(e.device);
        Value v;
        try {
            v = parse_value(e.text, type);
        } catch (const Error&) {
            trace_.record(tick_, TraceKind::note, e.device, "malformed value '" + e.text + "'");
            return;
        }
        try {
            if (desc.kinds.redundant)
                engine_.assign(e.device, v);
            else
                store_.write(desc.slots[0], v);
        } catch (const Error& err) {
            trace_.record(tick_, TraceKind::note, e.device,
                          std::string("server write failed: ") + err.what());
            return;
        }
        trace_.record(tick_, TraceKind::sense, e.device, to_display(v));
        for (const auto& w : watches_) {
            if (w.var != e.device) continue;
            if (!detail::vote_equal(v, w.match, engine_.epsilon())) continue;
            trace_.record(tick_, TraceKind::note, w.var, w.callback);
            pending_callbacks_.push_back(w.callback);
        }
    }

    void drain_cooperative() {
        while (auto e = queue_.pop()) apply_event(*e);
    }

    void drain() {
        if (!spawned_) {
            // Pre-spawn ticks (attribute-free programs) have no Server;
            // nothing consumes the queue.
            return;
        }
        if (config_.schedule == ServerSchedule::cooperative) {
            drain_cooperative();
            return;
        }
        std::unique_lock<std::mutex> lock(server_mu_);
        drain_requested_ = true;
        server_cv_.notify_one();
        drain_done_cv_.wait(lock, [this] { return !drain_requested_; });
    }

    void server_main() {
        std::unique_lock<std::mutex> lock(server_mu_);
        while (true) {
            server_cv_.wait(lock, [this] { return drain_requested_ || stop_; });
            if (stop_ && !drain_requested_) return;
            while (auto e = queue_.pop()) apply_event(*e);
            drain_requested_ = false;
            drain_done_cv_.notify_all();
        }
    }

    void stop_server() {
        if (!server_thread_.joinable()) return;
        {
            std::lock_guard<std::mutex> lock(server_mu_);
            stop_ = true;
        }
        server_cv_.notify_all();
        server_thread_.join();
    }

    RuntimeConfig config_;
    Trace& trace_;
    CellStore store_;
    Registry registry_;
    RedundancyEngine engine_;
    EventQueue queue_;
    ActuatorLog log_;
    std::optional<FaultInjector> injector_;

    std::vector<Staged> staged_;
    std::vector<Watch> watches_;
    std::vector<std::string> pending_callbacks_;
    bool spawned_ = false;
    long tick_ = 0;

    std::thread server_thread_;
    std::mutex server_mu_;
    std::condition_variable server_cv_;
    std::condition_variable drain_done_cv_;
    bool drain_requested_ = false;
    bool stop_ = false;
};

}  // namespace rrvar
