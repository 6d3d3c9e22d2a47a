// Copyright 2026 The cvtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "cvtele/errors.hpp"
#include "cvtele/experiment.hpp"

namespace cvtele::experiment {
namespace {

struct CliOptions {
    std::string config_path;
    std::string out_path;
    std::string format;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
};

std::string render(const std::string& command, const RunConfig& config) {
    const bool json = config.output.format == OutputFormat::json;
    if (command == "teleport" || command == "duan") {
        const auto report = command == "teleport" ? cmd_teleport(config) : cmd_duan(config);
        return json ? report.dump(2) + "\n" : report_to_csv(report);
    }
    CurveTable table = command == "sweep-gain" ? cmd_sweep_gain(config)
                       : command == "tv-map"   ? cmd_tv_map(config)
                                               : cmd_spectrum(config);
    return json ? table.to_json().dump(2) + "\n" : table.to_csv();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open output file " + path);
    }
    file << text;
    if (!file) {
        throw IoError("failed writing " + path);
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Continuous-variable quantum teleportation simulator"};
    app.require_subcommand(1);
    CliOptions opts;
    const std::map<std::string, std::string> commands{
        {"teleport", "Run one teleportation and report every figure of merit"},
        {"sweep-gain", "Fidelity, T_q and V_q versus feedforward gain"},
        {"tv-map", "Classical, unity-gain and experiment curves on the T-V plane"},
        {"duan", "Inseparability of the entangled resource"},
        {"spectrum", "Synthetic spectrum-analyzer traces of input and output"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opts.config_path, "JSON run configuration")->required();
        sub->add_option("--out", opts.out_path, "Output file (default: stdout)");
        sub->add_option("--format", opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", opts.seed, "Monte Carlo seed");
        sub->add_option("--samples", opts.samples, "Monte Carlo sample count")->check(CLI::Range(2ULL, ~0ULL));
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream msg;
        const int code = app.exit(e, msg, msg);
        (code == 0 ? out : err) << msg.str();
        return code == 0 ? kExitOk : kExitUsage;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        RunConfig config = load_config(opts.config_path);
        if (!opts.format.empty()) {
            config.output.format = opts.format == "json" ? OutputFormat::json : OutputFormat::csv;
        }
        if (!opts.out_path.empty()) config.output.path = opts.out_path;
        if (opts.seed || opts.samples) {
            MonteCarloSpec m = config.montecarlo.value_or(MonteCarloSpec{});
            if (opts.seed) m.seed = *opts.seed;
            if (opts.samples) m.n = *opts.samples;
            config.montecarlo = m;
        }
        emit(render(command, config), config.output.path, out);
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const OracleScopeError& e) {
        err << "oracle scope: " << e.what() << "\n";
        return kExitOracleScope;
    } catch (const ModelViolationError& e) {
        err << "model violation: " << e.what() << "\n";
        return kExitOracleScope;
    } catch (const UndefinedTransferError& e) {
        err << "undefined transfer: " << e.what() << "\n";
        return kExitOracleScope;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
}

}  // namespace cvtele::experiment
