#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rrvar/error.hpp"

namespace testutil {

inline std::filesystem::path test_dir() { return RRVAR_TEST_DIR; }
inline std::filesystem::path demo_dir() { return RRVAR_DEMO_DIR; }
inline std::filesystem::path cli_path() { return RRVAR_CLI_PATH; }

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw rrvar::Error("cannot open test input '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::vector<std::filesystem::path> corpus_files() {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(test_dir() / "corpus"))
        if (entry.path().extension() == ".rrc") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

// Runs a shell command capturing stdout; exit code is the process status.
inline CommandResult run_command(const std::string& command) {
    CommandResult result;
    const std::filesystem::path out_file =
        std::filesystem::temp_directory_path() /
        ("rrvar_cmd_" + std::to_string(::getpid()) + ".out");
    const std::string full = command + " > " + out_file.string() + " 2>/dev/null";
    const int status = std::system(full.c_str());
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.output = read_file(out_file);
    std::filesystem::remove(out_file);
    return result;
}

}  // namespace testutil
