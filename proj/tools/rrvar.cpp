#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rrvar/rrvar.hpp"

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw rrvar::Error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw rrvar::Error("cannot write '" + path.string() + "'");
    out << text;
}

rrvar::RuntimeConfig load_config(const std::string& path) {
    if (path.empty()) return rrvar::RuntimeConfig{};
    return rrvar::load_device_config(path);
}

std::optional<rrvar::FaultPlan> load_faults(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return rrvar::parse_fault_plan(read_file(path));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reflective, refractive, and redundant variables toolkit"};
    app.require_subcommand(1);

    std::string source_path, devices_path, faults_path, out_path, trace_path, server;
    long max_ticks = 10000;
    bool no_translate = false;
    int degree = 3, reads = 100, corrupt_per_read = 0, corrupt_from = 1, corrupt_to = -1;
    bool no_adapt = false;

    CLI::App* translate = app.add_subcommand("translate", "instrument an RRC program");
    translate->add_option("input", source_path, "RRC source file")->required();
    translate->add_option("--devices", devices_path, "device config file");
    translate->add_option("-o,--output", out_path, "write result here (default stdout)");

    CLI::App* run = app.add_subcommand("run", "translate if needed, then execute");
    run->add_option("input", source_path, "RRC source file")->required();
    run->add_option("--devices", devices_path, "device config file");
    run->add_option("--faults", faults_path, "fault scenario file");
    run->add_option("--max-ticks", max_ticks, "tick budget (default 10000)");
    run->add_option("--trace", trace_path, "write the event trace here");
    run->add_flag("--no-translate", no_translate, "refuse attributed programs");
    run->add_option("--server", server, "server schedule: cooperative|concurrent");

    CLI::App* simulate = app.add_subcommand("simulate", "redundancy-only fault experiment");
    simulate->add_option("--degree", degree, "initial redundancy degree (odd, 3..9)");
    simulate->add_option("--reads", reads, "number of write/read rounds");
    simulate->add_option("--faults", faults_path, "fault scenario file");
    simulate->add_flag("--no-adapt", no_adapt, "pin the degree; disable the controller");
    simulate->add_option("--corrupt-per-read", corrupt_per_read,
                         "corrupt this many replicas before every read");
    simulate->add_option("--corrupt-from", corrupt_from, "first corrupting round (1-based)");
    simulate->add_option("--corrupt-to", corrupt_to, "last corrupting round (default: all)");
    simulate->add_option("--trace", trace_path, "write the trace here (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (translate->parsed()) {
            const rrvar::RuntimeConfig config = load_config(devices_path);
            const std::string out =
                rrvar::translate(read_file(source_path), config.capabilities());
            if (out_path.empty())
                std::cout << out;
            else
                write_file(out_path, out);
            return 0;
        }

        if (run->parsed()) {
            rrvar::RunOptions opts;
            opts.faults = load_faults(faults_path);
            opts.max_ticks = max_ticks;
            opts.no_translate = no_translate;
            if (server == "cooperative")
                opts.schedule_override = rrvar::ServerSchedule::cooperative;
            else if (server == "concurrent")
                opts.schedule_override = rrvar::ServerSchedule::concurrent;
            else if (!server.empty())
                throw rrvar::Error("--server must be cooperative or concurrent");
            const rrvar::RunResult result =
                rrvar::run_program(read_file(source_path), load_config(devices_path), opts);
            std::cout << result.output;
            if (!trace_path.empty()) write_file(trace_path, result.trace);
            if (result.exit_code != rrvar::ExitCode::ok)
                std::cerr << "error: " << result.diagnostic << "\n";
            return static_cast<int>(result.exit_code);
        }

        rrvar::SimulateOptions opts;
        opts.degree = degree;
        opts.reads = reads;
        opts.adapt = !no_adapt;
        opts.faults = load_faults(faults_path);
        opts.corrupt_per_read = corrupt_per_read;
        opts.corrupt_from = corrupt_from;
        if (corrupt_to >= 0) opts.corrupt_to = corrupt_to;
        const rrvar::SimulateResult result = rrvar::simulate(opts);
        if (trace_path.empty())
            std::cout << result.trace;
        else
            write_file(trace_path, result.trace);
        return 0;
    } catch (const rrvar::Trap& t) {
        std::cerr << "error: " << t.what() << "\n";
        return static_cast<int>(t.code());
    } catch (const rrvar::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
