#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pfspec/io/json.hpp"

namespace pfspec::io {

/// A complete CLI invocation stored as JSON.
struct RunConfig {
    std::optional<std::string> system;  // preset name or system config path
    std::string command;                 // e.g. "spectrum", "twosided jordan"
    std::map<std::string, json> params;  // option name (without dashes) -> value
    std::optional<std::string> output;
    std::optional<std::string> format;  // "json" or "csv"
    std::optional<std::uint64_t> seed;
};

/// Fields: system, command, params, output, format, seed. Anything else is a ConfigError.
RunConfig run_config_from_json(const json& j);
json to_json(const RunConfig& c);
RunConfig load_run_config(const std::string& path);

/// Equivalent command-line arguments (without the program name).
std::vector<std::string> to_args(const RunConfig& c);

}  // namespace pfspec::io
