#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rrvar/error.hpp"
#include "rrvar/translator.hpp"
#include "rrvar/value.hpp"

namespace rrvar {

enum class SourceKind { synth, trace_file, ramp, internal };

// A simulated external device. Sensor sources are materialized into the
// values list at config-load time, so get_value is a pure cursor walk;
// internal devices emit only what the runtime feeds them (actuator echo,
// controller publications).
struct DeviceSpec {
    std::string name;
    Capability caps;
    SourceKind source = SourceKind::synth;
    long period = 1;
    std::vector<std::string> values;
    std::size_t cursor = 0;
};

// Event values travel as raw text; the Server types them against rtype at
// the moment of the write. tick is the emission timestamp and is the tick
// recorded in the trace regardless of when the Server drains the event.
struct DeviceEvent {
    std::string device;
    std::string text;
    long tick = 0;
};

inline std::optional<DeviceEvent> get_value(DeviceSpec& device, long tick) {
    if (!device.caps.sensor || device.source == SourceKind::internal) return std::nullopt;
    if (tick % device.period != 0) return std::nullopt;
    if (device.cursor >= device.values.size()) return std::nullopt;  // exhausted: silent
    return DeviceEvent{device.name, device.values[device.cursor++], tick};
}

// Bounded FIFO between the interpreter-side producers and the Server.
// Overflow keeps freshness over history: the oldest queued event of the
// incoming event's device is dropped (the globally oldest when that device
// has nothing queued). Internally locked; the concurrent schedule's drain
// barrier lives in the runtime, not here.
class EventQueue {
public:
    explicit EventQueue(std::size_t capacity = 1024) : capacity_(capacity) {
        if (capacity_ == 0) throw Error("event queue capacity must be positive");
    }

    void push(DeviceEvent e) {
        std::lock_guard<std::mutex> lock(mu_);
        if (events_.size() == capacity_) {
            auto victim = events_.begin();
            for (auto it = events_.begin(); it != events_.end(); ++it) {
                if (it->device == e.device) {
                    victim = it;
                    break;
                }
            }
            events_.erase(victim);
        }
        events_.push_back(std::move(e));
    }

    std::optional<DeviceEvent> pop() {
        std::lock_guard<std::mutex> lock(mu_);
        if (events_.empty()) return std::nullopt;
        DeviceEvent e = std::move(events_.front());
        events_.pop_front();
        return e;
    }

    std::size_t size() const {
        std::lock_guard<std::mutex> lock(mu_);
        return events_.size();
    }

    bool empty() const { return size() == 0; }

    std::size_t capacity() const { return capacity_; }

private:
    mutable std::mutex mu_;
    std::deque<DeviceEvent> events_;
    std::size_t capacity_;
};

struct ActuationRecord {
    long tick = 0;
    std::string device;
    Value value;
};

class ActuatorLog {
public:
    void append(long tick, std::string device, Value value) {
        records_.push_back(ActuationRecord{tick, std::move(device), std::move(value)});
    }

    const std::vector<ActuationRecord>& records() const { return records_; }

    int count_for(const std::string& device) const {
        int n = 0;
        for (const auto& r : records_)
            if (r.device == device) ++n;
        return n;
    }

private:
    std::vector<ActuationRecord> records_;
};

enum class ServerSchedule { cooperative, concurrent };

struct RuntimeConfig {
    std::vector<DeviceSpec> devices;
    int cells = 4096;
    int banks = 8;
    double epsilon = 1e-9;
    std::string on_match = "beep";
    ServerSchedule schedule = ServerSchedule::cooperative;

    DeviceSpec* find(const std::string& name) {
        for (auto& d : devices)
            if (d.name == name) return &d;
        return nullptr;
    }
    const DeviceSpec* find(const std::string& name) const {
        return const_cast<RuntimeConfig*>(this)->find(name);
    }

    CapabilityMap capabilities() const {
        CapabilityMap caps;
        for (const auto& d : devices) caps[d.name] = d.caps;
        return caps;
    }
};

namespace detail {

inline std::string strip_config_line(std::string line) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = line.find_last_not_of(" \t\r");
    return line.substr(first, last - first + 1);
}

inline std::vector<std::string> load_trace_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open trace file '" + path.string() + "'");
    std::vector<std::string> values;
    std::string line;
    while (std::getline(in, line)) {
        line = strip_config_line(line);
        if (!line.empty()) values.push_back(line);
    }
    return values;
}

inline std::vector<std::string> ramp_values(std::uint64_t seed, int count) {
    std::vector<std::string> values;
    values.reserve(static_cast<std::size_t>(count));
    std::uint64_t x = seed % 101;
    for (int i = 0; i < count; ++i) {
        values.push_back(std::to_string(x));
        x = (x * 17 + 29) % 101;
    }
    return values;
}

inline std::vector<std::string> split_on(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) parts.push_back(part);
    if (!text.empty() && text.back() == sep) parts.push_back("");
    return parts;
}

}  // namespace detail

// Line-oriented config:
//   device <name> caps=<sensor|actuator|both> src=<trace:PATH|synth:v1,...|ramp:SEED:COUNT|internal> period=<ticks>
//   set <cells|banks|epsilon|on_match|server> <value>
// '#' comments; trace paths resolve relative to base_dir.
inline RuntimeConfig parse_device_config(const std::string& text,
                                         const std::filesystem::path& base_dir = ".") {
    RuntimeConfig config;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = detail::strip_config_line(raw);
        if (line.empty()) continue;
        const auto fail = [&](const std::string& what) -> Error {
            return Error("device config line " + std::to_string(lineno) + ": " + what);
        };
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word == "device") {
            DeviceSpec dev;
            if (!(ls >> dev.name)) throw fail("device needs a name");
            if (config.find(dev.name)) throw fail("duplicate device '" + dev.name + "'");
            bool saw_caps = false, saw_src = false;
            std::string tok;
            while (ls >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) throw fail("expected key=value, got '" + tok + "'");
                const std::string key = tok.substr(0, eq);
                const std::string val = tok.substr(eq + 1);
                if (key == "caps") {
                    if (val == "sensor") dev.caps = Capability{true, false};
                    else if (val == "actuator") dev.caps = Capability{false, true};
                    else if (val == "both") dev.caps = Capability{true, true};
                    else throw fail("caps must be sensor|actuator|both");
                    saw_caps = true;
                } else if (key == "src") {
                    if (val == "internal") {
                        dev.source = SourceKind::internal;
                    } else if (val.rfind("trace:", 0) == 0) {
                        dev.source = SourceKind::trace_file;
                        dev.values = detail::load_trace_file(base_dir / val.substr(6));
                    } else if (val.rfind("synth:", 0) == 0) {
                        dev.source = SourceKind::synth;
                        dev.values = detail::split_on(val.substr(6), ',');
                    } else if (val.rfind("ramp:", 0) == 0) {
                        const auto parts = detail::split_on(val.substr(5), ':');
                        if (parts.size() != 2) throw fail("ramp needs ramp:SEED:COUNT");
                        try {
                            dev.source = SourceKind::ramp;
                            dev.values = detail::ramp_values(std::stoull(parts[0]),
                                                            std::stoi(parts[1]));
                        } catch (const std::exception&) {
                            throw fail("bad ramp parameters");
                        }
                    } else {
                        throw fail("src must be trace:|synth:|ramp:|internal");
                    }
                    saw_src = true;
                } else if (key == "period") {
                    try {
                        dev.period = std::stol(val);
                    } catch (const std::exception&) {
                        throw fail("bad period");
                    }
                    if (dev.period < 1) throw fail("period must be >= 1");
                } else {
                    throw fail("unknown device key '" + key + "'");
                }
            }
            if (!saw_caps) throw fail("device needs caps=");
            if (!saw_src) throw fail("device needs src=");
            if (!dev.caps.sensor && dev.source != SourceKind::internal)
                throw fail("pure actuator '" + dev.name + "' must use src=internal");
            config.devices.push_back(std::move(dev));
        } else if (word == "set") {
            std::string key, val;
            if (!(ls >> key >> val)) throw fail("set needs key and value");
            try {
                if (key == "cells") config.cells = std::stoi(val);
                else if (key == "banks") config.banks = std::stoi(val);
                else if (key == "epsilon")
                    config.epsilon = std::get<double>(parse_value(val, TypeCode::float_t));
                else if (key == "on_match") config.on_match = val;
                else if (key == "server") {
                    if (val == "cooperative") config.schedule = ServerSchedule::cooperative;
                    else if (val == "concurrent") config.schedule = ServerSchedule::concurrent;
                    else throw fail("server must be cooperative|concurrent");
                } else {
                    throw fail("unknown setting '" + key + "'");
                }
            } catch (const Error&) {
                throw;
            } catch (const std::exception&) {
                throw fail("bad value for '" + key + "'");
            }
        } else {
            throw fail("unknown directive '" + word + "'");
        }
    }
    return config;
}

inline RuntimeConfig load_device_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open device config '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_device_config(buf.str(), path.parent_path());
}

}  // namespace rrvar
