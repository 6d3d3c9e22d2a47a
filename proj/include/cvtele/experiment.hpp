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


#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cvtele/montecarlo.hpp"
#include "cvtele/teleporter.hpp"

namespace cvtele::experiment {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitConfig = 2,
    kExitOracleScope = 3,
    kExitIo = 4,
};

/// A configuration value failed validation. `path()` is the dotted field
/// path, e.g. "teleporter.opa1.v_squeezed".
class ConfigError : public std::runtime_error {
   public:
    ConfigError(std::string path, const std::string& message);
    [[nodiscard]] const std::string& path() const { return path_; }

   private:
    std::string path_;
};

class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

struct SweepSpec {
    std::string parameter = "teleporter.gain_plus";
    double start = 0.0;
    double stop = 2.0;
    std::size_t steps = 41;
    /// When set, gain_minus follows gain_ratio * gain_plus at every point.
    std::optional<double> gain_ratio;

    [[nodiscard]] std::vector<double> grid() const;
};

struct MonteCarloSpec {
    std::size_t n = 100000;
    std::uint64_t seed = 1;
};

struct SpectrumSpec {
    double center = 8.4e6;
    double span = 1.0e5;
    double rbw = 1.0e4;
    double vbw = 30.0;
    std::size_t points = mc::kDefaultTracePoints;
    std::pair<double, double> noise_frequencies{8.35e6, 8.45e6};
};

struct OutputSpec {
    OutputFormat format = OutputFormat::csv;
    std::string path;  // empty: standard output
};

struct RunConfig {
    TeleporterConfig teleporter;
    std::optional<SweepSpec> sweep;
    std::optional<MonteCarloSpec> montecarlo;
    SpectrumSpec spectrum;
    OutputSpec output;
    /// The document this config was parsed from, used for parameter sweeps
    /// and provenance.
    nlohmann::json document;
};

/// Parses a config document. Unknown keys are rejected. Throws ConfigError.
RunConfig parse_config(const nlohmann::json& document);
/// Reads and parses a UTF-8 JSON file. Throws IoError or ConfigError.
RunConfig load_config(const std::filesystem::path& path);

/// Returns a copy of `document` with the numeric field at the dotted `path`
/// set to `value`. Throws ConfigError if the path is not a config field.
nlohmann::json with_parameter(const nlohmann::json& document, const std::string& path, double value);

/// 64-bit FNV-1a of the canonical (key-sorted, compact) dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& document);

const char* tool_version();

struct Provenance {
    std::string config_hash;
    std::string tool_version;
    std::optional<std::uint64_t> seed;
    /// Scalar results that accompany a table (extracted SNRs and the like).
    std::vector<std::pair<std::string, double>> summary;
};

/// Rectangular table of reals with unique column names.
class CurveTable {
   public:
    explicit CurveTable(std::vector<std::string> columns);

    /// Throws std::invalid_argument if the row width does not match.
    void add_row(std::vector<double> row);

    [[nodiscard]] const std::vector<std::string>& columns() const { return columns_; }
    [[nodiscard]] std::size_t rows() const { return columns_.empty() ? 0 : values_.size() / columns_.size(); }
    [[nodiscard]] double at(std::size_t row, std::size_t column) const;
    [[nodiscard]] std::vector<double> column(const std::string& name) const;

    Provenance provenance;

    /// Provenance as '# key: value' lines, then the header and one line per
    /// row. Numbers use the shortest representation that round-trips.
    [[nodiscard]] std::string to_csv() const;
    [[nodiscard]] nlohmann::ordered_json to_json() const;

   private:
    std::vector<std::string> columns_;
    std::vector<double> values_;
};

/// Shortest decimal that parses back to exactly `x`.
std::string format_real(double x);

nlohmann::ordered_json cmd_teleport(const RunConfig& config);
CurveTable cmd_sweep_gain(const RunConfig& config);
CurveTable cmd_tv_map(const RunConfig& config);
nlohmann::ordered_json cmd_duan(const RunConfig& config);
CurveTable cmd_spectrum(const RunConfig& config);

/// tv-map curve identifiers.
enum CurveId : int { kClassicalCurve = 0, kUnityGainCurve = 1, kExperimentCurve = 2 };

/// spectrum trace identifiers.
enum TraceId : int {
    kInputPlus = 0,
    kInputMinus = 1,
    kOutputPlus = 2,
    kOutputMinus = 3,
    kClassicalLimit = 4,
    kNoCloningLimit = 5,
};

/// Flattens a report object to one header line and one value line; nested
/// keys are joined with '.', booleans become 0/1 and null becomes empty.
std::string report_to_csv(const nlohmann::ordered_json& report);

/// Entry point of the `cvtele` executable. Returns an ExitCode.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cvtele::experiment
