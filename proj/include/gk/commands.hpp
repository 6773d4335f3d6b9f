#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gk/instance.hpp"

namespace gk {

// exit codes
constexpr int kComputed = 0;
constexpr int kUndecided = 1;
constexpr int kInputError = 2;

struct RunOptions {
    std::optional<std::uint64_t> budget;
    std::optional<std::uint64_t> seed;
    bool strict = false;
};

struct CommandResult {
    nlohmann::json report;  // std::map backed: keys come out sorted
    std::string text;
    int exit_code = kComputed;
};

const std::vector<std::string>& command_names();

// InstanceError / ConfigError for missing sections; UnsupportedError is reported as undecided
CommandResult run_command(const std::string& cmd, const Instance& inst, const RunOptions& ro = {});

// every *.toml under dir (sorted by file name), each running its declared commands
// and comparing [command-options.expect] against the reports
CommandResult run_suite(const std::vector<std::string>& files, const RunOptions& ro = {});
std::vector<std::string> suite_files(const std::string& dir);

// JSON encodings
nlohmann::json value_json(const Value& g);
nlohmann::json vec_json(const Vec& x);

}  // namespace gk
