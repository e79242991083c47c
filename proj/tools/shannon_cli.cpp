#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shannon/shannon.h"

namespace {

int report_error(shn_status status) {
    std::cerr << "error: " << shn_last_error() << " [" << shn_status_name(status) << "]\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Asymptotic invariants of quadratic transform sequences", "shannon-lab"};
    app.set_version_flag("--version", shn_version());

    const std::vector<std::string> commands = {"track", "e", "w", "tau", "classify", "boundary", "witness", "cic",
                                               "construct", "verify"};
    std::string command;
    std::string config_path;
    std::vector<std::string> elements;
    app.add_option("command", command, "track, e, w, tau, classify, boundary, witness, cic, construct or verify")
        ->required()
        ->check(CLI::IsMember(commands));
    app.add_option("--config", config_path, "config file");
    app.add_option("--element", elements, "element expression (repeatable)");

    // Flags forwarded verbatim to the session; empty means not given.
    struct Forward {
        const char* flag;
        const char* key;
        const char* help;
        std::string value;
    };
    std::vector<Forward> forwards = {
        {"--normalizer", "normalizer", "normalizing element x", {}},
        {"--denominator", "denominator", "denominator b of a/b", {}},
        {"--uniformizer", "uniformizer", "uniformizer z for non-archimedean boundary values", {}},
        {"--horizon", "horizon", "last stage examined (default 64)", {}},
        {"--window", "window", "stabilization window (default 8)", {}},
        {"--guard", "guard", "divergence guard (default 1000000)", {}},
        {"--origin", "origin", "first stage", {}},
        {"--sigma", "sigma", "target sum, e.g. sqrt(8)", {}},
        {"--family", "family", "sequence kind or built-in family", {}},
        {"--blocks", "blocks", "number of blocks to construct or verify", {}},
        {"--csv", "csv", "write the per-stage table to PATH", {}},
        {"--format", "format", "text or csv", {}},
    };
    for (auto& f : forwards) app.add_option(f.flag, f.value, f.help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        // usage errors share exit status 1 with every other failure
        return app.exit(err) == 0 ? 0 : 1;
    }

    shn_session* session = nullptr;
    if (shn_status s = shn_session_create(&session); s != SHN_OK) return report_error(s);
    auto finish = [&](int code) {
        shn_session_free(session);
        return code;
    };

    if (!config_path.empty()) {
        if (shn_status s = shn_session_load_config(session, config_path.c_str()); s != SHN_OK) {
            return finish(report_error(s));
        }
    }
    for (const auto& f : forwards) {
        if (f.value.empty()) continue;
        if (shn_status s = shn_session_set(session, f.key, f.value.c_str()); s != SHN_OK) return finish(report_error(s));
    }
    if (!elements.empty()) {
        shn_session_clear_elements(session);
        for (const auto& e : elements) {
            if (shn_status s = shn_session_set(session, "element", e.c_str()); s != SHN_OK) {
                return finish(report_error(s));
            }
        }
    }

    shn_report* report = nullptr;
    if (shn_status s = shn_session_run(session, command.c_str(), &report); s != SHN_OK) return finish(report_error(s));

    if (shn_report_wants_csv_stdout(report)) {
        std::cout << shn_report_csv(report);
    } else {
        std::cout << shn_report_text(report);
    }
    int code = shn_report_exit_code(report);
    if (const char* path = shn_report_csv_path(report)) {
        std::ofstream out(path);
        if (!out || !(out << shn_report_csv(report))) {
            std::cerr << "error: cannot write " << path << "\n";
            code = 1;
        }
    }
    shn_report_free(report);
    return finish(code);
}
