#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shannon/asymptotics.hpp"
#include "shannon/transform.hpp"

namespace shannon {

struct MoveSpec {
    std::string pivot;
    std::vector<std::pair<std::string, std::string>> shifts;  // variable, rational text
};

struct RunConfig {
    std::optional<std::size_t> dim;
    std::vector<std::string> vars;

    std::string kind = "fibonacci";
    std::vector<MoveSpec> moves;
    std::string sigma;
    std::size_t blocks = 3;

    std::vector<std::string> elements;
    std::string normalizer;
    std::string denominator;
    std::string uniformizer;
    Params params;

    std::string format = "text";
    std::string csv_path;
};

/// Reads the structured-text config. Errors are Config and name the field.
RunConfig parse_config(std::string_view text, const std::string& origin = "config");
RunConfig load_config_file(const std::string& path);

/// Single key/value override, shared by the CLI flags and the C API.
/// Keys: kind (alias family), sigma, blocks, dim, vars, element, normalizer,
/// denominator, uniformizer, horizon, window, guard, tolerance, origin,
/// format, csv.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// The sequence described by the config, with its variable names.
TransformSequence build_sequence(const RunConfig& config);

struct Report {
    int exit_code = 0;  // 0 certified or exact, 2 heuristic or undecided
    std::string text;
    std::string csv;
};

/// track, e, w, tau, classify, boundary, witness, cic, construct, verify.
/// Engine failures are thrown as Error.
Report run(const RunConfig& config, const std::string& command);

const std::vector<std::string>& command_names();

} // namespace shannon
