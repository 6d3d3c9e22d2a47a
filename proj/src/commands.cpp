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


#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "cvtele/errors.hpp"
#include "cvtele/experiment.hpp"
#include "parallel.hpp"

namespace cvtele::experiment {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Smallest squeezed variance used for the v_sq -> 0 end of the unity-gain locus.
constexpr double kMinSqueezedVariance = 1e-9;

Provenance make_provenance(const RunConfig& config, std::optional<std::uint64_t> seed) {
    return {config_hash(config.document), tool_version(), seed, {}};
}

ordered_json provenance_json(const Provenance& p) {
    ordered_json j;
    j["config_hash"] = p.config_hash;
    j["tool_version"] = p.tool_version;
    j["seed"] = p.seed ? ordered_json(*p.seed) : ordered_json(nullptr);
    if (!p.summary.empty()) {
        ordered_json s = ordered_json::object();
        for (const auto& [k, v] : p.summary) s[k] = v;
        j["summary"] = s;
    }
    return j;
}

ordered_json quadratures_json(Quadratures q) {
    ordered_json j;
    j["plus"] = q.plus;
    j["minus"] = q.minus;
    return j;
}

SweepSpec gain_sweep(const RunConfig& config) {
    SweepSpec s = config.sweep.value_or(SweepSpec{});
    if (s.parameter != "teleporter.gain_plus" && s.parameter != "teleporter.gain_minus") {
        throw ConfigError("sweep.parameter", "gain sweeps take teleporter.gain_plus or teleporter.gain_minus");
    }
    if (s.gain_ratio && s.parameter != "teleporter.gain_plus") {
        throw ConfigError("sweep.gain_ratio", "a gain ratio needs teleporter.gain_plus as the swept parameter");
    }
    return s;
}

TeleporterConfig at_gain(const RunConfig& config, const SweepSpec& sweep, double value) {
    json doc = with_parameter(config.document, sweep.parameter, value);
    if (sweep.gain_ratio) {
        doc = with_parameter(doc, "teleporter.gain_minus", *sweep.gain_ratio * value);
    }
    return parse_config(doc).teleporter;
}

TeleporterConfig ideal_reference(const TeleporterConfig& base) {
    TeleporterConfig c;
    c.input = base.input;
    return c;
}

void append_rows(CurveTable& table, const std::vector<std::vector<double>>& rows) {
    for (const auto& r : rows) table.add_row(r);
}

void flatten(const std::string& key, const ordered_json& value,
             std::vector<std::pair<std::string, std::string>>& cells) {
    if (value.is_object()) {
        for (const auto& [k, v] : value.items()) flatten(key.empty() ? k : key + "." + k, v, cells);
    } else if (value.is_boolean()) {
        cells.emplace_back(key, value.get<bool>() ? "1" : "0");
    } else if (value.is_null()) {
        cells.emplace_back(key, "");
    } else if (value.is_number_float()) {
        cells.emplace_back(key, format_real(value.get<double>()));
    } else if (value.is_string()) {
        cells.emplace_back(key, value.get<std::string>());
    } else {
        cells.emplace_back(key, value.dump());
    }
}

}  // namespace

std::string format_real(double x) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

CurveTable::CurveTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        for (std::size_t j = i + 1; j < columns_.size(); ++j) {
            if (columns_[i] == columns_[j]) {
                throw std::invalid_argument("duplicate column name " + columns_[i]);
            }
        }
    }
}

void CurveTable::add_row(std::vector<double> row) {
    if (row.size() != columns_.size()) {
        throw std::invalid_argument("row width " + std::to_string(row.size()) + " does not match " +
                                    std::to_string(columns_.size()) + " columns");
    }
    values_.insert(values_.end(), row.begin(), row.end());
}

double CurveTable::at(std::size_t row, std::size_t column) const {
    if (row >= rows() || column >= columns_.size()) {
        throw std::out_of_range("table index out of range");
    }
    return values_[row * columns_.size() + column];
}

std::vector<double> CurveTable::column(const std::string& name) const {
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (columns_[c] != name) continue;
        std::vector<double> out(rows());
        for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, c);
        return out;
    }
    throw std::out_of_range("no column named " + name);
}

std::string CurveTable::to_csv() const {
    std::string out;
    out += "# config_hash: " + provenance.config_hash + "\n";
    out += "# tool_version: " + provenance.tool_version + "\n";
    out += "# seed: " + (provenance.seed ? std::to_string(*provenance.seed) : std::string("none")) + "\n";
    for (const auto& [k, v] : provenance.summary) out += "# " + k + ": " + format_real(v) + "\n";
    for (std::size_t c = 0; c < columns_.size(); ++c) out += (c ? "," : "") + columns_[c];
    out += "\n";
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t c = 0; c < columns_.size(); ++c) out += (c ? "," : "") + format_real(at(r, c));
        out += "\n";
    }
    return out;
}

ordered_json CurveTable::to_json() const {
    ordered_json j;
    j["columns"] = columns_;
    ordered_json rows_json = ordered_json::array();
    for (std::size_t r = 0; r < rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < columns_.size(); ++c) row.push_back(at(r, c));
        rows_json.push_back(std::move(row));
    }
    j["rows"] = std::move(rows_json);
    j["provenance"] = provenance_json(provenance);
    return j;
}

std::string report_to_csv(const ordered_json& report) {
    std::vector<std::pair<std::string, std::string>> cells;
    flatten("", report, cells);
    std::string header;
    std::string values;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        header += (i ? "," : "") + cells[i].first;
        values += (i ? "," : "") + cells[i].second;
    }
    return header + "\n" + values + "\n";
}

ordered_json cmd_teleport(const RunConfig& config) {
    const TeleporterConfig& tc = config.teleporter;
    const metrics::MetricsReport r = evaluate(tc);
    const metrics::ReferenceLimits& lim = metrics::reference_limits();

    ordered_json j;
    j["fidelity"] = r.fidelity;
    j["fidelity_valid"] = r.fidelity_valid;
    j["k_plus"] = r.k_plus;
    j["k_minus"] = r.k_minus;
    j["t_plus"] = r.t_plus;
    j["t_minus"] = r.t_minus;
    j["t_q"] = r.t_q;
    j["v_cond_plus"] = r.v_cond_plus;
    j["v_cond_minus"] = r.v_cond_minus;
    j["v_q"] = r.v_q;
    j["v_cond_sum"] = r.v_cond_sum;
    j["gain"] = quadratures_json(r.gain);
    j["v_in"] = quadratures_json(r.v_in);
    j["v_out"] = quadratures_json(r.v_out);
    j["duan"] = r.duan ? ordered_json(*r.duan) : ordered_json(nullptr);
    j["measurement_penalty"] = quadratures_json(measurement_penalties(tc));

    ordered_json flags;
    flags["beats_classical"] = r.beats_classical;
    flags["beats_no_cloning"] = r.beats_no_cloning;
    flags["t_q_above_one"] = r.t_q_above_one;
    flags["v_q_below_one"] = r.v_q_below_one;
    j["flags"] = flags;

    ordered_json limits;
    limits["classical_fidelity"] = lim.classical_fidelity;
    limits["no_cloning_fidelity"] = lim.no_cloning_fidelity;
    limits["classical_noise_db"] = lim.classical_noise_db;
    limits["no_cloning_noise_db"] = lim.no_cloning_noise_db;
    limits["tv_boundary_t_q"] = lim.tv_boundary_t_q;
    limits["tv_boundary_v_q"] = lim.tv_boundary_v_q;
    j["limits"] = limits;

    try {
        j["oracle_v_out"] = quadratures_json(closed_form_output_variances(tc));
    } catch (const OracleScopeError&) {
        j["oracle_v_out"] = nullptr;
    }

    std::optional<std::uint64_t> seed;
    if (config.montecarlo) {
        const auto& m = *config.montecarlo;
        seed = m.seed;
        const TeleportOutcome outcome = teleport(tc);
        const std::array<LinearForm, 2> forms{outcome.output.x_plus, outcome.output.x_minus};
        const auto samples = mc::sample_joint(forms, outcome.basis, m.n, m.seed);
        const Quadratures exact = output_variances(outcome);
        const double vp = mc::estimate_moments(samples[0]).variance;
        const double vm = mc::estimate_moments(samples[1]).variance;
        ordered_json mcj;
        mcj["n"] = m.n;
        mcj["v_out"] = quadratures_json({vp, vm});
        mcj["sigma"] = quadratures_json({mc::variance_estimator_sigma(exact.plus, m.n),
                                         mc::variance_estimator_sigma(exact.minus, m.n)});
        j["montecarlo"] = mcj;
    } else {
        j["montecarlo"] = nullptr;
    }
    j["provenance"] = provenance_json(make_provenance(config, seed));
    return j;
}

CurveTable cmd_sweep_gain(const RunConfig& config) {
    const SweepSpec sweep = gain_sweep(config);
    const std::vector<double> grid = sweep.grid();
    std::vector<std::vector<double>> rows(grid.size());
    detail::parallel_for(grid.size(), [&](std::size_t i) {
        const TeleporterConfig tc = at_gain(config, sweep, grid[i]);
        const metrics::MetricsReport r = evaluate(tc);
        rows[i] = {tc.gain_plus, tc.gain_minus, r.fidelity, r.t_q, r.v_q};
    });
    CurveTable table({"g_plus", "g_minus", "F", "T_q", "V_q"});
    append_rows(table, rows);
    table.provenance = make_provenance(config, std::nullopt);
    return table;
}

CurveTable cmd_tv_map(const RunConfig& config) {
    const SweepSpec sweep = gain_sweep(config);
    const std::vector<double> gains = sweep.grid();
    const std::size_t n = gains.size();
    const TeleporterConfig reference = ideal_reference(config.teleporter);

    std::vector<std::vector<double>> rows(3 * n);
    detail::parallel_for(3 * n, [&](std::size_t k) {
        const std::size_t i = k % n;
        switch (k / n) {
            case kClassicalCurve: {
                TeleporterConfig tc = reference;
                tc.gain_plus = tc.gain_minus = gains[i];
                const auto r = evaluate(tc);
                rows[k] = {double(kClassicalCurve), gains[i], r.t_q, r.v_q};
                break;
            }
            case kUnityGainCurve: {
                const double nominal = 1.0 - static_cast<double>(i) / static_cast<double>(n - 1);
                const double v_sq = std::max(nominal, kMinSqueezedVariance);
                TeleporterConfig tc = reference;
                tc.opa1 = tc.opa2 = optics::SqueezerSpec::pure(v_sq);
                const auto r = evaluate(tc);
                rows[k] = {double(kUnityGainCurve), v_sq, r.t_q, r.v_q};
                break;
            }
            default: {
                const auto r = evaluate(at_gain(config, sweep, gains[i]));
                rows[k] = {double(kExperimentCurve), gains[i], r.t_q, r.v_q};
                break;
            }
        }
    });
    CurveTable table({"curve_id", "parameter", "T_q", "V_q"});
    append_rows(table, rows);
    table.provenance = make_provenance(config, std::nullopt);
    return table;
}

ordered_json cmd_duan(const RunConfig& config) {
    const TeleporterConfig& tc = config.teleporter;
    tc.validate();
    NoiseBasis basis;
    const optics::EprPair raw = optics::epr_pair(basis, tc.opa1, tc.opa2);
    const optics::EprPair pair{optics::loss(raw.beam_a, tc.eta_beam_a(), basis),
                               optics::loss(raw.beam_b, tc.eta_beam_b(), basis)};
    const double duan = optics::duan_inseparability(pair, basis);
    const double eta = 0.5 * (tc.eta_beam_a() + tc.eta_beam_b());

    ordered_json j;
    j["duan"] = duan;
    j["entangled"] = duan < 1.0 - metrics::kReportTolerance;
    j["observed_squeezing_db"] = metrics::variance_to_squeezing_db(duan);
    j["beam_a"] = quadratures_json({variance(pair.beam_a.x_plus, basis), variance(pair.beam_a.x_minus, basis)});
    j["beam_b"] = quadratures_json({variance(pair.beam_b.x_plus, basis), variance(pair.beam_b.x_minus, basis)});
    j["eta_entanglement"] = {{"a", tc.eta_beam_a()}, {"b", tc.eta_beam_b()}};
    j["opa_squeezing_db"] = {{"opa1", metrics::variance_to_squeezing_db(tc.opa1.v_squeezed)},
                             {"opa2", metrics::variance_to_squeezing_db(tc.opa2.v_squeezed)}};
    // Inverting the loss is exact for equal per-beam efficiencies; otherwise
    // the mean efficiency is used.
    if (eta > 0.0) {
        const double inferred = metrics::victor_correct(duan, eta);
        j["inferred_source_variance"] = inferred;
        j["inferred_source_squeezing_db"] =
            inferred > 0.0 ? ordered_json(metrics::variance_to_squeezing_db(inferred)) : ordered_json(nullptr);
    } else {
        j["inferred_source_variance"] = nullptr;
        j["inferred_source_squeezing_db"] = nullptr;
    }
    j["provenance"] = provenance_json(make_provenance(config, std::nullopt));
    return j;
}

CurveTable cmd_spectrum(const RunConfig& config) {
    if (!config.montecarlo) {
        throw ConfigError("montecarlo", "the spectrum command needs a seed (montecarlo section or --seed)");
    }
    const std::uint64_t seed = config.montecarlo->seed;
    const SpectrumSpec& s = config.spectrum;
    const TeleporterConfig& tc = config.teleporter;
    const TeleportOutcome outcome = teleport(tc);
    const Quadratures v_in = input_variances(outcome);
    const Quadratures v_out = output_variances(outcome);

    struct TraceInput {
        double variance;
        double alpha;
    };
    const std::array<TraceInput, 4> inputs{{
        {v_in.plus, tc.input.alpha_plus},
        {v_in.minus, tc.input.alpha_minus},
        {v_out.plus, outcome.output.alpha_plus()},
        {v_out.minus, outcome.output.alpha_minus()},
    }};
    std::array<mc::SpectrumTrace, 4> traces;
    detail::parallel_for(traces.size(), [&](std::size_t k) {
        traces[k] = mc::synthesize_spectrum(inputs[k].variance, inputs[k].alpha, s.center, s.span, s.rbw, s.vbw,
                                            seed ^ k, s.points);
    });

    CurveTable table({"trace_id", "frequency_hz", "power_db"});
    for (std::size_t k = 0; k < traces.size(); ++k) {
        for (std::size_t i = 0; i < traces[k].frequencies.size(); ++i) {
            table.add_row({double(k), traces[k].frequencies[i], traces[k].power_db[i]});
        }
    }
    const auto& lim = metrics::reference_limits();
    const double lo = s.center - s.span / 2.0;
    const double hi = s.center + s.span / 2.0;
    for (const auto& [id, level] : {std::pair{kClassicalLimit, lim.classical_noise_db},
                                    std::pair{kNoCloningLimit, lim.no_cloning_noise_db}}) {
        table.add_row({double(id), lo, level});
        table.add_row({double(id), hi, level});
    }

    table.provenance = make_provenance(config, seed);
    static constexpr std::array<const char*, 4> names{"input_plus", "input_minus", "output_plus", "output_minus"};
    std::array<double, 4> snr{};
    for (std::size_t k = 0; k < traces.size(); ++k) {
        snr[k] = mc::extract_snr(traces[k], s.center, s.noise_frequencies);
        table.provenance.summary.emplace_back(std::string("floor_db_") + names[k], mc::floor_level_db(traces[k]));
        table.provenance.summary.emplace_back(std::string("snr_") + names[k], snr[k]);
    }
    // Signal power above the floor transfers as g^2 V_in / V_out.
    if (tc.input.alpha_plus != 0.0) {
        table.provenance.summary.emplace_back("t_plus_extracted", (snr[2] - 1.0) / (snr[0] - 1.0));
    }
    if (tc.input.alpha_minus != 0.0) {
        table.provenance.summary.emplace_back("t_minus_extracted", (snr[3] - 1.0) / (snr[1] - 1.0));
    }
    return table;
}

}  // namespace cvtele::experiment
