// Scenario runner.
//
//   edm_emu_cli <scenario> [--config <path>] [--set key=value]... [--format csv|json]
//               [--out <path>] [--workers N]
//
// Exit status: 0 success, 1 validation or configuration error, 2 numerical
// failure inside the scenario (the table is still written).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "edm_emu/harness/config.hpp"
#include "edm_emu/harness/scenarios.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kNumericalError = 2;

} // namespace

int main(int argc, char** argv)
{
    using namespace edm_emu;
    using namespace edm_emu::harness;

    CLI::App app{"Trapped-ion emulation of a Dirac particle with an electric dipole moment"};
    app.set_version_flag("--version", std::string(EDM_EMU_VERSION));
    std::string scenario;
    std::string config_path;
    std::vector<std::string> overrides;
    std::string format;
    std::string out_path;
    int n_workers = 0;

    std::string names;
    for (const auto& n : scenario_names()) {
        names += (names.empty() ? "" : ", ") + n;
    }
    app.add_option("scenario", scenario, "One of: " + names)->required();
    app.add_option("--config", config_path, "JSON config file, or a previous result file to rerun");
    app.add_option("--set", overrides, "Override a config value, e.g. --set dirac.edm=0.2")->allow_extra_args(false);
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "Output file (default: output.path from config, else stdout)");
    app.add_option("--workers", n_workers, "Concurrent sweep workers")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (!is_scenario(scenario)) {
            throw ConfigError("unknown scenario '" + scenario + "'");
        }
        const json file = config_path.empty() ? json(nullptr) : load_config_file(config_path);
        std::vector<std::string> cli = overrides;
        cli.push_back("scenario=\"" + scenario + "\"");
        if (!format.empty()) {
            cli.push_back("output.format=\"" + format + "\"");
        }
        if (!out_path.empty()) {
            cli.push_back("output.path=" + json(out_path).dump());
        }
        if (n_workers > 0) {
            cli.push_back("workers=" + std::to_string(n_workers));
        }
        const json cfg = resolve_config(file, cli);

        const ScenarioOutcome result = run_scenario(cfg);
        const std::string fmt = get<std::string>(cfg.at("output"), "format");
        const std::string path = get<std::string>(cfg.at("output"), "path");
        if (path.empty()) {
            write_table(std::cout, result.table, fmt);
        } else {
            std::ofstream out(path, std::ios::binary);
            if (!out) {
                throw ConfigError("cannot open output file '" + path + "'");
            }
            write_table(out, result.table, fmt);
        }
        for (const auto& w : result.warnings) {
            std::cerr << "warning: " << w << '\n';
        }
        return result.numerical_failure ? kNumericalError : kOk;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumericalError;
    } catch (const std::exception& e) {
        // ValidationError, DomainError, ConfigError and JSON type errors
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
}
