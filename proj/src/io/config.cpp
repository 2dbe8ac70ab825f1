#include "pfspec/io/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "pfspec/errors.hpp"

namespace pfspec::io {

namespace {

const std::vector<std::string> kCommands = {"spectrum",        "eigenfunctions",    "decompose",
                                            "resolvent",       "iterate",           "twosided jordan",
                                            "twosided ak-poles", "twosided operator", "simulate",
                                            "check"};

std::string scalar_arg(const json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    throw ConfigError("parameter '" + key + "' must be a string, integer or boolean");
}

}  // namespace

RunConfig run_config_from_json(const json& j) {
    require_keys(j, {"system", "command", "params", "output", "format", "seed"}, "run config");
    RunConfig c;
    if (!j.contains("command") || !j["command"].is_string()) throw ConfigError("run config: missing string 'command'");
    c.command = j["command"].get<std::string>();
    if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end())
        throw ConfigError("run config: unknown command '" + c.command + "'");
    if (j.contains("system")) {
        if (!j["system"].is_string()) throw ConfigError("run config: 'system' must be a preset name or a path");
        c.system = j["system"].get<std::string>();
    }
    if (j.contains("params")) {
        if (!j["params"].is_object()) throw ConfigError("run config: 'params' must be an object");
        for (auto it = j["params"].begin(); it != j["params"].end(); ++it) {
            if (it.value().is_array())
                for (const auto& e : it.value()) scalar_arg(e, it.key());
            else
                scalar_arg(it.value(), it.key());
            c.params[it.key()] = it.value();
        }
    }
    if (j.contains("output")) c.output = j["output"].get<std::string>();
    if (j.contains("format")) {
        c.format = j["format"].get<std::string>();
        if (*c.format != "json" && *c.format != "csv") throw ConfigError("run config: format must be json or csv");
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ConfigError("run config: seed must be a nonnegative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    return c;
}

json to_json(const RunConfig& c) {
    json j;
    if (c.system) j["system"] = *c.system;
    j["command"] = c.command;
    if (!c.params.empty()) {
        json p = json::object();
        for (const auto& [k, v] : c.params) p[k] = v;
        j["params"] = p;
    }
    if (c.output) j["output"] = *c.output;
    if (c.format) j["format"] = *c.format;
    if (c.seed) j["seed"] = *c.seed;
    return j;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open run config " + path);
    try {
        return run_config_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw ConfigError("cannot parse " + path + ": " + e.what());
    }
}

std::vector<std::string> to_args(const RunConfig& c) {
    std::vector<std::string> args;
    std::istringstream words(c.command);
    for (std::string w; words >> w;) args.push_back(w);
    if (c.system) args.insert(args.end(), {"--system", *c.system});
    for (const auto& [k, v] : c.params) {
        if (v.is_boolean()) {
            if (v.get<bool>()) args.push_back("--" + k);
            continue;
        }
        if (v.is_array()) {
            for (const auto& e : v) args.insert(args.end(), {"--" + k, scalar_arg(e, k)});
            continue;
        }
        args.insert(args.end(), {"--" + k, scalar_arg(v, k)});
    }
    if (c.output) args.insert(args.end(), {"--output", *c.output});
    if (c.format) args.insert(args.end(), {"--format", *c.format});
    if (c.seed) args.insert(args.end(), {"--seed", std::to_string(*c.seed)});
    return args;
}

}  // namespace pfspec::io
