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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "cvtele/errors.hpp"
#include "cvtele/experiment.hpp"
#include "cvtele/metrics.hpp"
#include "cvtele/montecarlo.hpp"
#include "cvtele/optics.hpp"
#include "cvtele/teleporter.hpp"

namespace py = pybind11;
using namespace cvtele;

namespace {

using Pair = std::pair<double, double>;

Pair as_pair(Quadratures q) { return {q.plus, q.minus}; }
Quadratures as_quadratures(Pair p) { return {p.first, p.second}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Continuous-variable quantum teleportation: Gaussian simulator and figures of merit";

    auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<UndefinedTransferError>(m, "UndefinedTransferError", domain.ptr());
    auto usage = py::register_exception<UsageError>(m, "UsageError", PyExc_RuntimeError);
    py::register_exception<OracleScopeError>(m, "OracleScopeError", usage.ptr());
    py::register_exception<ModelViolationError>(m, "ModelViolationError", PyExc_RuntimeError);

    py::enum_<optics::Orientation>(m, "Orientation")
        .value("amplitude_squeezed", optics::Orientation::amplitude_squeezed)
        .value("phase_squeezed", optics::Orientation::phase_squeezed);

    py::class_<optics::SqueezerSpec>(m, "SqueezerSpec")
        .def(py::init([](double v_sq, std::optional<double> v_anti, optics::Orientation o) {
                 const optics::SqueezerSpec spec{v_sq, v_anti.value_or(1.0 / v_sq), o};
                 spec.validate();
                 return spec;
             }),
             py::arg("v_squeezed") = 1.0, py::arg("v_antisqueezed") = py::none(),
             py::arg("orientation") = optics::Orientation::amplitude_squeezed)
        .def_static("pure", &optics::SqueezerSpec::pure, py::arg("v_squeezed"),
                    py::arg("orientation") = optics::Orientation::amplitude_squeezed)
        .def_static("from_db", &optics::SqueezerSpec::from_db, py::arg("db"))
        .def_readwrite("v_squeezed", &optics::SqueezerSpec::v_squeezed)
        .def_readwrite("v_antisqueezed", &optics::SqueezerSpec::v_antisqueezed)
        .def_readwrite("orientation", &optics::SqueezerSpec::orientation)
        .def("validate", &optics::SqueezerSpec::validate);

    py::enum_<BobCoupling>(m, "BobCoupling")
        .value("ideal_displacement", BobCoupling::ideal_displacement)
        .value("tapped_98_2", BobCoupling::tapped_98_2);

    py::class_<InputState>(m, "InputState")
        .def(py::init([](double vp, double vm, double ap, double am) { return InputState{vp, vm, ap, am}; }),
             py::arg("v_plus") = 1.0, py::arg("v_minus") = 1.0, py::arg("alpha_plus") = 0.0,
             py::arg("alpha_minus") = 0.0)
        .def_readwrite("v_plus", &InputState::v_plus)
        .def_readwrite("v_minus", &InputState::v_minus)
        .def_readwrite("alpha_plus", &InputState::alpha_plus)
        .def_readwrite("alpha_minus", &InputState::alpha_minus);

    py::class_<TeleporterConfig>(m, "TeleporterConfig")
        .def(py::init<>())
        .def_readwrite("opa1", &TeleporterConfig::opa1)
        .def_readwrite("opa2", &TeleporterConfig::opa2)
        .def_readwrite("eta_entanglement", &TeleporterConfig::eta_entanglement)
        .def_readwrite("eta_entanglement_a", &TeleporterConfig::eta_entanglement_a)
        .def_readwrite("eta_entanglement_b", &TeleporterConfig::eta_entanglement_b)
        .def_readwrite("eta_alice", &TeleporterConfig::eta_alice)
        .def_readwrite("dark_noise_alice", &TeleporterConfig::dark_noise_alice)
        .def_readwrite("gain_plus", &TeleporterConfig::gain_plus)
        .def_readwrite("gain_minus", &TeleporterConfig::gain_minus)
        .def_readwrite("bob_coupling", &TeleporterConfig::bob_coupling)
        .def_readwrite("input", &TeleporterConfig::input)
        .def_readwrite("eta_victor", &TeleporterConfig::eta_victor)
        .def("validate", &TeleporterConfig::validate);

    py::class_<metrics::MetricsReport>(m, "MetricsReport")
        .def_readonly("fidelity", &metrics::MetricsReport::fidelity)
        .def_readonly("k_plus", &metrics::MetricsReport::k_plus)
        .def_readonly("k_minus", &metrics::MetricsReport::k_minus)
        .def_readonly("fidelity_valid", &metrics::MetricsReport::fidelity_valid)
        .def_readonly("t_plus", &metrics::MetricsReport::t_plus)
        .def_readonly("t_minus", &metrics::MetricsReport::t_minus)
        .def_readonly("t_q", &metrics::MetricsReport::t_q)
        .def_readonly("v_cond_plus", &metrics::MetricsReport::v_cond_plus)
        .def_readonly("v_cond_minus", &metrics::MetricsReport::v_cond_minus)
        .def_readonly("v_q", &metrics::MetricsReport::v_q)
        .def_readonly("v_cond_sum", &metrics::MetricsReport::v_cond_sum)
        .def_property_readonly("gain", [](const metrics::MetricsReport& r) { return as_pair(r.gain); })
        .def_property_readonly("v_in", [](const metrics::MetricsReport& r) { return as_pair(r.v_in); })
        .def_property_readonly("v_out", [](const metrics::MetricsReport& r) { return as_pair(r.v_out); })
        .def_readonly("duan", &metrics::MetricsReport::duan)
        .def_readonly("beats_classical", &metrics::MetricsReport::beats_classical)
        .def_readonly("beats_no_cloning", &metrics::MetricsReport::beats_no_cloning)
        .def_readonly("t_q_above_one", &metrics::MetricsReport::t_q_above_one)
        .def_readonly("v_q_below_one", &metrics::MetricsReport::v_q_below_one);

    // Teleporter.
    m.def("evaluate", &evaluate, py::arg("config"), "Teleport and compute every figure of merit.");
    m.def(
        "teleport_variances",
        [](const TeleporterConfig& c) {
            const TeleportOutcome o = teleport(c);
            return py::dict(py::arg("v_in") = as_pair(input_variances(o)),
                            py::arg("v_out") = as_pair(output_variances(o)),
                            py::arg("alpha_out") = Pair{o.output.alpha_plus(), o.output.alpha_minus()});
        },
        py::arg("config"));
    m.def(
        "closed_form_output_variances",
        [](const TeleporterConfig& c) { return as_pair(closed_form_output_variances(c)); }, py::arg("config"));
    m.def(
        "measurement_penalties", [](const TeleporterConfig& c) { return as_pair(measurement_penalties(c)); },
        py::arg("config"));

    // Optics.
    m.def(
        "duan_inseparability",
        [](const optics::SqueezerSpec& opa1, const optics::SqueezerSpec& opa2, double eta_a, double eta_b) {
            NoiseBasis basis;
            const optics::EprPair raw = optics::epr_pair(basis, opa1, opa2);
            const optics::EprPair pair{optics::loss(raw.beam_a, eta_a, basis),
                                       optics::loss(raw.beam_b, eta_b, basis)};
            return optics::duan_inseparability(pair, basis);
        },
        py::arg("opa1"), py::arg("opa2"), py::arg("eta_a") = 1.0, py::arg("eta_b") = 1.0);

    // Metrics.
    m.def(
        "fidelity",
        [](Pair v_in, Pair v_out, Pair alpha_in, Pair gain) {
            const auto r = metrics::fidelity(as_quadratures(v_in), as_quadratures(v_out), as_quadratures(alpha_in),
                                             as_quadratures(gain));
            return std::array<double, 3>{r.fidelity, r.k_plus, r.k_minus};
        },
        py::arg("v_in"), py::arg("v_out"), py::arg("alpha_in"), py::arg("gain"));
    m.def(
        "transfer",
        [](Pair v_in, Pair v_out, Pair alpha_in, Pair gain) {
            const auto r = metrics::transfer(as_quadratures(v_in), as_quadratures(v_out), as_quadratures(alpha_in),
                                             as_quadratures(gain));
            return std::array<double, 3>{r.t_plus, r.t_minus, r.t_q};
        },
        py::arg("v_in"), py::arg("v_out"), py::arg("alpha_in"), py::arg("gain"));
    m.def(
        "conditional",
        [](Pair v_in, Pair v_out, Pair gain) {
            const auto r =
                metrics::conditional(as_quadratures(v_in), as_quadratures(v_out), as_quadratures(gain));
            return std::array<double, 4>{r.v_plus, r.v_minus, r.v_q, r.v_sum};
        },
        py::arg("v_in"), py::arg("v_out"), py::arg("gain"));
    m.def("db_to_linear", &metrics::db_to_linear, py::arg("db"));
    m.def("linear_to_db", &metrics::linear_to_db, py::arg("v"));
    m.def("squeezing_db_to_variance", &metrics::squeezing_db_to_variance, py::arg("db_below"));
    m.def("variance_to_squeezing_db", &metrics::variance_to_squeezing_db, py::arg("v"));
    m.def("victor_correct", &metrics::victor_correct, py::arg("v_measured"), py::arg("eta"));
    m.def("reference_limits", [] {
        const auto& l = metrics::reference_limits();
        return py::dict(py::arg("classical_fidelity") = l.classical_fidelity,
                        py::arg("no_cloning_fidelity") = l.no_cloning_fidelity,
                        py::arg("classical_noise_db") = l.classical_noise_db,
                        py::arg("no_cloning_noise_db") = l.no_cloning_noise_db,
                        py::arg("tv_boundary_t_q") = l.tv_boundary_t_q,
                        py::arg("tv_boundary_v_q") = l.tv_boundary_v_q);
    });

    // Monte Carlo.
    m.def(
        "sample_output_variances",
        [](const TeleporterConfig& c, std::size_t n, std::uint64_t seed) {
            py::gil_scoped_release release;
            const TeleportOutcome o = teleport(c);
            const std::array<LinearForm, 2> forms{o.output.x_plus, o.output.x_minus};
            const auto s = mc::sample_joint(forms, o.basis, n, seed);
            return Pair{mc::estimate_moments(s[0]).variance, mc::estimate_moments(s[1]).variance};
        },
        py::arg("config"), py::arg("n"), py::arg("seed"));
    m.def(
        "synthesize_spectrum",
        [](double noise_variance, double signal_alpha, double center, double span, double rbw, double vbw,
           std::uint64_t seed, std::size_t points) {
            const auto t =
                mc::synthesize_spectrum(noise_variance, signal_alpha, center, span, rbw, vbw, seed, points);
            return py::dict(py::arg("frequencies") = t.frequencies, py::arg("power_db") = t.power_db);
        },
        py::arg("noise_variance"), py::arg("signal_alpha"), py::arg("center") = 8.4e6, py::arg("span") = 1e5,
        py::arg("rbw") = 1e4, py::arg("vbw") = 30.0, py::arg("seed") = 1,
        py::arg("points") = mc::kDefaultTracePoints);
    m.def(
        "extract_snr",
        [](const std::vector<double>& frequencies, const std::vector<double>& power_db, double center,
           Pair noise_frequencies) {
            mc::SpectrumTrace t;
            t.frequencies = frequencies;
            t.power_db = power_db;
            t.center = center;
            return mc::extract_snr(t, center, noise_frequencies);
        },
        py::arg("frequencies"), py::arg("power_db"), py::arg("center") = 8.4e6,
        py::arg("noise_frequencies") = Pair{8.35e6, 8.45e6});

    // Command-line front end.
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::vector<const char*> argv{"cvtele"};
            for (const auto& a : args) argv.push_back(a.c_str());
            std::ostringstream out;
            std::ostringstream err;
            const int code = experiment::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the cvtele CLI in-process; returns (exit_code, stdout, stderr).");

    m.attr("__version__") = experiment::tool_version();
}
