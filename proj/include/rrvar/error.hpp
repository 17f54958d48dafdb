#pragma once

#include <stdexcept>
#include <string>

namespace rrvar {

// Process exit codes, fixed so traces and scripts can rely on them.
enum class ExitCode : int {
    ok = 0,
    frontend_error = 1,     // lex/parse/translate/config/registry misuse
    integrity_failure = 2,  // redundant read with no strict majority
    not_an_actuator = 3,
    div_by_zero = 4,
    tick_budget = 5,
};

struct SourcePos {
    int line = 0;
    int column = 0;
    bool valid() const { return line > 0; }
};

// Front-end and configuration errors. Always maps to exit code 1.
class Error : public std::runtime_error {
public:
    explicit Error(std::string message, SourcePos pos = {})
        : std::runtime_error(pos.valid()
              ? std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message
              : message),
          pos_(pos) {}

    SourcePos pos() const { return pos_; }

private:
    SourcePos pos_;
};

// Runtime traps that abort program execution with a dedicated exit code.
class Trap : public std::runtime_error {
public:
    Trap(ExitCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ExitCode code() const { return code_; }

private:
    ExitCode code_;
};

}  // namespace rrvar
