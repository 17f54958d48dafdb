#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rrvar/ast.hpp"
#include "rrvar/error.hpp"
#include "rrvar/parser.hpp"
#include "rrvar/runtime.hpp"
#include "rrvar/runtime_calls.hpp"
#include "rrvar/translator.hpp"
#include "rrvar/validate.hpp"
#include "rrvar/value.hpp"

namespace rrvar {

// Tree-walking evaluator over validated programs. Registered names resolve
// through the runtime; everything else lives in the global environment.
// The Server gets a chance to run after every completed statement, and
// watch callbacks fire at those same boundaries.
class Interpreter {
public:
    Interpreter(const AstProgram& prog, Runtime& runtime, long max_ticks, std::ostream& out)
        : prog_(prog), runtime_(runtime), max_ticks_(max_ticks), out_(out) {
        for (const auto& d : prog_.decls) {
            decl_types_[d.name] = d.type;
            env_[d.name] = d.init ? coerce(*d.init, d.type) : zero_value(d.type);
        }
        for (const auto& f : prog_.functions) funcs_[f.name] = &f;
    }

    void execute() { call_function("main"); }

private:
    struct ReturnSignal {};

    static constexpr int kMaxCallDepth = 1024;

    // --- name access ---

    Value read_name(const std::string& name) {
        if (runtime_.registered(name)) return runtime_.read_var(name);
        return env_.at(name);
    }

    void assign_name(const std::string& name, const Value& v) {
        if (runtime_.registered(name)) {
            runtime_.write_var(name, v);
            return;
        }
        env_[name] = coerce(v, decl_types_.at(name));
    }

    // --- expression evaluation ---

    static bool truthy(const Value& v) {
        if (const auto* i = std::get_if<std::int64_t>(&v)) return *i != 0;
        return std::get<double>(v) != 0.0;
    }

    Value eval(const ExprPtr& e) {
        if (const auto* lit = std::get_if<LiteralExpr>(&e->node)) return lit->value;
        if (const auto* var = std::get_if<VarRefExpr>(&e->node)) return read_name(var->name);
        if (const auto* bin = std::get_if<BinaryExpr>(&e->node)) return eval_binary(*bin, e->pos);
        const auto& call = std::get<CallExpr>(e->node);
        const auto sig = builtin_signature(call.callee);
        return runtime_.redundant_read(string_arg(call.args[0]), *sig->value_type);
    }

    Value eval_binary(const BinaryExpr& bin, SourcePos pos) {
        if (bin.op == BinOp::and_) {
            if (!truthy(eval(bin.lhs))) return Value(std::int64_t{0});
            return Value(std::int64_t{truthy(eval(bin.rhs)) ? 1 : 0});
        }
        if (bin.op == BinOp::or_) {
            if (truthy(eval(bin.lhs))) return Value(std::int64_t{1});
            return Value(std::int64_t{truthy(eval(bin.rhs)) ? 1 : 0});
        }
        const Value lhs = eval(bin.lhs);
        const Value rhs = eval(bin.rhs);
        if (type_of(lhs) == TypeCode::string_t || type_of(rhs) == TypeCode::string_t) {
            const bool eq = std::get<std::string>(lhs) == std::get<std::string>(rhs);
            return Value(std::int64_t{(bin.op == BinOp::eq) == eq ? 1 : 0});
        }
        const bool as_float =
            type_of(lhs) == TypeCode::float_t || type_of(rhs) == TypeCode::float_t;
        switch (bin.op) {
            case BinOp::add:
            case BinOp::sub:
            case BinOp::mul:
            case BinOp::div:
            case BinOp::mod:
                return arith(bin.op, lhs, rhs, as_float, pos);
            default: {
                const double l = as_double(lhs);
                const double r = as_double(rhs);
                bool res = false;
                switch (bin.op) {
                    case BinOp::lt: res = l < r; break;
                    case BinOp::gt: res = l > r; break;
                    case BinOp::le: res = l <= r; break;
                    case BinOp::ge: res = l >= r; break;
                    case BinOp::eq: res = l == r; break;
                    default: res = l != r; break;
                }
                return Value(std::int64_t{res ? 1 : 0});
            }
        }
    }

    static double as_double(const Value& v) {
        if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
        return std::get<double>(v);
    }

    Value arith(BinOp op, const Value& lhs, const Value& rhs, bool as_float, SourcePos pos) {
        if (as_float) {
            const double l = as_double(lhs);
            const double r = as_double(rhs);
            switch (op) {
                case BinOp::add: return Value(l + r);
                case BinOp::sub: return Value(l - r);
                case BinOp::mul: return Value(l * r);
                default:
                    if (r == 0.0) throw Trap(ExitCode::div_by_zero, trap_message(pos));
                    return Value(l / r);
            }
        }
        const std::int64_t l = std::get<std::int64_t>(lhs);
        const std::int64_t r = std::get<std::int64_t>(rhs);
        switch (op) {
            case BinOp::add: return Value(l + r);
            case BinOp::sub: return Value(l - r);
            case BinOp::mul: return Value(l * r);
            case BinOp::div:
                if (r == 0) throw Trap(ExitCode::div_by_zero, trap_message(pos));
                return Value(l / r);
            default:
                if (r == 0) throw Trap(ExitCode::div_by_zero, trap_message(pos));
                return Value(l % r);
        }
    }

    static std::string trap_message(SourcePos pos) {
        std::string msg = "division by zero";
        if (pos.valid())
            msg = std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + msg;
        return msg;
    }

    // --- statement execution ---

    void exec_block(const Block& block) {
        for (const auto& s : block) {
            exec(s);
            boundary();
        }
    }

    void exec(const StmtPtr& s) {
        if (const auto* a = std::get_if<AssignStmt>(&s->node)) {
            assign_name(a->name, eval(a->value));
            return;
        }
        if (const auto* i = std::get_if<IfStmt>(&s->node)) {
            if (truthy(eval(i->cond)))
                exec_block(i->then_block);
            else
                exec_block(i->else_block);
            return;
        }
        if (const auto* w = std::get_if<WhileStmt>(&s->node)) {
            while (truthy(eval(w->cond))) {
                exec_block(w->body);
                advance(1);
            }
            return;
        }
        if (const auto* c = std::get_if<CallStmt>(&s->node)) {
            dispatch_call(*c, s->pos);
            return;
        }
        if (const auto* sl = std::get_if<SleepStmt>(&s->node)) {
            const std::int64_t n = std::get<std::int64_t>(eval(sl->ticks));
            if (n < 0) throw Error("negative sleep duration", s->pos);
            advance(n);
            return;
        }
        if (const auto* p = std::get_if<PrintStmt>(&s->node)) {
            std::string line;
            for (const auto& arg : p->args) line += to_display(eval(arg));
            out_ << line << '\n';
            return;
        }
        throw ReturnSignal{};
    }

    void dispatch_call(const CallStmt& call, SourcePos pos) {
        const auto sig = builtin_signature(call.callee);
        if (!sig) {
            call_function(call.callee);
            return;
        }
        if (call.callee == calls::aopen) {
            runtime_.aopen(string_arg(call.args[0]));
        } else if (call.callee == calls::awrite_reflex) {
            runtime_.awrite_reflex(string_arg(call.args[0]));
        } else if (call.callee == calls::awrite_rtype) {
            runtime_.awrite_rtype(string_arg(call.args[0]), int_arg(call.args[1]));
        } else if (call.callee == calls::spawn_server) {
            runtime_.spawn_server(spawn_context());
        } else if (call.callee == calls::call_v) {
            runtime_.call_actuator(string_arg(call.args[0]));
        } else if (sig->is_expr) {
            runtime_.redundant_read(string_arg(call.args[0]), *sig->value_type);  // effects only
        } else {
            runtime_.redundant_assign(string_arg(call.args[0]), *sig->value_type,
                                      eval(call.args[1]));
        }
        (void)pos;
    }

    void call_function(const std::string& name) {
        auto it = funcs_.find(name);
        if (it == funcs_.end()) throw Error("call to undefined function '" + name + "'");
        if (++call_depth_ > kMaxCallDepth) {
            --call_depth_;
            throw Error("call depth limit exceeded in '" + name + "'");
        }
        try {
            exec_block(it->second->body);
        } catch (const ReturnSignal&) {
        }
        --call_depth_;
    }

    SpawnContext spawn_context() {
        SpawnContext ctx;
        ctx.current_value = [this](const std::string& name) -> std::optional<Value> {
            auto it = env_.find(name);
            if (it == env_.end()) return std::nullopt;
            return it->second;
        };
        ctx.init_literal = [this](const std::string& name) -> std::optional<Value> {
            for (const auto& d : prog_.decls)
                if (d.name == name) return d.init;
            return std::nullopt;
        };
        ctx.has_function = [this](const std::string& name) { return funcs_.count(name) > 0; };
        return ctx;
    }

    // One logical tick at a time, so the budget bounds total work.
    void advance(std::int64_t n) {
        for (std::int64_t i = 0; i < n; ++i) {
            runtime_.advance_tick(1);
            if (runtime_.tick() > max_ticks_)
                throw Trap(ExitCode::tick_budget,
                           "tick budget of " + std::to_string(max_ticks_) + " exceeded");
        }
    }

    void boundary() {
        runtime_.statement_boundary();
        for (auto pending = runtime_.take_pending_callbacks(); !pending.empty();
             pending = runtime_.take_pending_callbacks()) {
            for (const auto& cb : pending) call_function(cb);
        }
    }

    static std::string string_arg(const ExprPtr& e) {
        return std::get<std::string>(std::get<LiteralExpr>(e->node).value);
    }

    static std::int64_t int_arg(const ExprPtr& e) {
        return std::get<std::int64_t>(std::get<LiteralExpr>(e->node).value);
    }

    const AstProgram& prog_;
    Runtime& runtime_;
    long max_ticks_;
    std::ostream& out_;
    std::map<std::string, Value> env_;
    std::map<std::string, TypeCode> decl_types_;
    std::map<std::string, const FuncDef*> funcs_;
    int call_depth_ = 0;
};

struct RunOptions {
    std::optional<FaultPlan> faults;
    long max_ticks = 10000;
    bool no_translate = false;
    std::optional<ServerSchedule> schedule_override;
};

struct RunResult {
    ExitCode exit_code = ExitCode::ok;
    std::string trace;
    std::string output;
    std::string diagnostic;
};

inline bool has_attributes(const AstProgram& prog) {
    for (const auto& d : prog.decls)
        if (d.attrs.any()) return true;
    return false;
}

// Parse, auto-translate when attributes are present, execute, collect the
// trace. Every failure mode folds into the exit-code contract.
inline RunResult run_program(const std::string& source, RuntimeConfig config,
                             const RunOptions& opts = {}) {
    RunResult result;
    Trace trace;
    try {
        AstProgram prog = parse_source(source);
        if (has_attributes(prog)) {
            if (opts.no_translate)
                throw Error("program uses RR attributes; it must run translated");
            prog = parse_source(translate(source, config.capabilities()));
        }
        validate(prog);
        if (opts.schedule_override) config.schedule = *opts.schedule_override;
        Runtime runtime(std::move(config), trace, opts.faults);
        std::ostringstream out;
        Interpreter interp(prog, runtime, opts.max_ticks, out);
        try {
            interp.execute();
        } catch (...) {
            result.output = out.str();
            throw;
        }
        result.output = out.str();
    } catch (const Trap& t) {
        result.exit_code = t.code();
        result.diagnostic = t.what();
    } catch (const Error& e) {
        result.exit_code = ExitCode::frontend_error;
        result.diagnostic = e.what();
    }
    result.trace = trace.render();
    return result;
}

}  // namespace rrvar
