#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "rrvar/error.hpp"

namespace rrvar {

enum class TraceKind { sense, act, vote, redundance, note };

inline const char* trace_kind_name(TraceKind k) {
    switch (k) {
        case TraceKind::sense: return "SENSE";
        case TraceKind::act: return "ACT";
        case TraceKind::vote: return "VOTE";
        case TraceKind::redundance: return "REDUNDANCE";
        default: return "NOTE";
    }
}

struct TraceEntry {
    long tick = 0;
    TraceKind kind = TraceKind::note;
    std::string name;
    std::string value;
};

inline std::string format_trace_entry(const TraceEntry& e) {
    return std::to_string(e.tick) + '\t' + trace_kind_name(e.kind) + '\t' + e.name + '\t' +
           e.value;
}

// Append-only event log; render() is the byte-stable golden format.
class Trace {
public:
    void record(long tick, TraceKind kind, std::string name, std::string value) {
        entries_.push_back(TraceEntry{tick, kind, std::move(name), std::move(value)});
    }

    const std::vector<TraceEntry>& entries() const { return entries_; }

    int count(TraceKind kind) const {
        return static_cast<int>(
            std::count_if(entries_.begin(), entries_.end(),
                          [&](const TraceEntry& e) { return e.kind == kind; }));
    }

    std::string render() const {
        std::string out;
        for (const auto& e : entries_) {
            out += format_trace_entry(e);
            out += '\n';
        }
        return out;
    }

private:
    std::vector<TraceEntry> entries_;
};

// Stable-sorts rendered trace lines by their name column, so two traces are
// normal-form equal iff every per-name line subsequence matches exactly.
// This is the comparison basis for concurrent-schedule runs, where only the
// global interleaving across names may legally differ.
inline std::string normalize_trace_by_name(const std::string& rendered) {
    std::vector<std::string> lines;
    std::istringstream in(rendered);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    const auto name_of = [](const std::string& l) -> std::string {
        auto a = l.find('\t');
        if (a == std::string::npos) return l;
        auto b = l.find('\t', a + 1);
        if (b == std::string::npos) return l;
        auto c = l.find('\t', b + 1);
        return l.substr(b + 1, (c == std::string::npos ? l.size() : c) - b - 1);
    };
    std::stable_sort(lines.begin(), lines.end(), [&](const std::string& x, const std::string& y) {
        return name_of(x) < name_of(y);
    });
    std::string out;
    for (const auto& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

}  // namespace rrvar
