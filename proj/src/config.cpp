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


#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "cvtele/errors.hpp"
#include "cvtele/experiment.hpp"

namespace cvtele::experiment {
namespace {

using nlohmann::json;

std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

// Reads the members of one JSON object, remembering which keys were
// consumed so that leftovers can be rejected.
class ObjectReader {
   public:
    ObjectReader(const json& value, std::string path) : path_(std::move(path)) {
        if (!value.is_object()) {
            throw ConfigError(path_, "expected an object");
        }
        object_ = &value;
    }

    [[nodiscard]] bool has(const std::string& key) {
        seen_.insert(key);
        return object_->contains(key) && !(*object_)[key].is_null();
    }

    const json& get(const std::string& key) { return (*object_)[key]; }

    double number(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        const json& v = get(key);
        if (!v.is_number()) {
            throw ConfigError(join(path_, key), "expected a number");
        }
        const double x = v.get<double>();
        if (!std::isfinite(x)) {
            throw ConfigError(join(path_, key), "must be finite");
        }
        return x;
    }

    std::optional<double> optional_number(const std::string& key) {
        if (!has(key)) return std::nullopt;
        return number(key, 0.0);
    }

    std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
        if (!has(key)) return fallback;
        const json& v = get(key);
        // Documents built in code store small integers as signed.
        if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
            throw ConfigError(join(path_, key), "expected a non-negative integer");
        }
        return v.get<std::uint64_t>();
    }

    std::string string(const std::string& key, const std::string& fallback) {
        if (!has(key)) return fallback;
        const json& v = get(key);
        if (!v.is_string()) {
            throw ConfigError(join(path_, key), "expected a string");
        }
        return v.get<std::string>();
    }

    [[nodiscard]] std::string child(const std::string& key) const { return join(path_, key); }

    void finish() const {
        for (const auto& [key, value] : object_->items()) {
            if (!seen_.contains(key)) {
                throw ConfigError(join(path_, key), "unknown key");
            }
        }
    }

   private:
    const json* object_ = nullptr;
    std::string path_;
    std::set<std::string> seen_;
};

template <typename Fn>
void with_domain_path(const std::string& path, Fn&& fn) {
    try {
        fn();
    } catch (const DomainError& e) {
        throw ConfigError(path, e.what());
    }
}

optics::SqueezerSpec parse_squeezer(const json& value, const std::string& path) {
    ObjectReader r(value, path);
    optics::SqueezerSpec spec;
    const bool has_linear = r.has("v_squeezed");
    const bool has_db = r.has("squeezing_db");
    if (has_linear && has_db) {
        throw ConfigError(r.child("squeezing_db"), "give either v_squeezed or squeezing_db, not both");
    }
    double v_sq = 1.0;
    if (has_linear) v_sq = r.number("v_squeezed", 1.0);
    if (has_db) v_sq = metrics::squeezing_db_to_variance(r.number("squeezing_db", 0.0));
    if (!(v_sq > 0.0)) {
        throw ConfigError(r.child(has_db ? "squeezing_db" : "v_squeezed"), "squeezed variance must be positive");
    }
    spec.v_squeezed = v_sq;
    spec.v_antisqueezed = r.number("v_antisqueezed", 1.0 / v_sq);
    r.finish();
    with_domain_path(path, [&] { spec.validate(); });
    return spec;
}

BobCoupling parse_coupling(const std::string& name, const std::string& path) {
    if (name == "ideal_displacement") return BobCoupling::ideal_displacement;
    if (name == "tapped_98_2") return BobCoupling::tapped_98_2;
    throw ConfigError(path, "expected \"ideal_displacement\" or \"tapped_98_2\", got \"" + name + "\"");
}

void require_efficiency(double eta, const std::string& path) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw ConfigError(path, "efficiency must lie in [0, 1]");
    }
}

TeleporterConfig parse_teleporter(const json& value, const std::string& path) {
    ObjectReader r(value, path);
    TeleporterConfig c;
    if (r.has("opa1")) c.opa1 = parse_squeezer(r.get("opa1"), r.child("opa1"));
    if (r.has("opa2")) c.opa2 = parse_squeezer(r.get("opa2"), r.child("opa2"));
    c.eta_entanglement = r.number("eta_entanglement", 1.0);
    c.eta_entanglement_a = r.optional_number("eta_entanglement_a");
    c.eta_entanglement_b = r.optional_number("eta_entanglement_b");
    c.eta_alice = r.number("eta_alice", 1.0);
    c.dark_noise_alice = r.number("dark_noise_alice", 0.0);
    c.gain_plus = r.number("gain_plus", 1.0);
    c.gain_minus = r.number("gain_minus", 1.0);
    c.bob_coupling = parse_coupling(r.string("bob_coupling", "ideal_displacement"), r.child("bob_coupling"));
    c.eta_victor = r.number("eta_victor", 1.0);
    if (r.has("input")) {
        ObjectReader in(r.get("input"), r.child("input"));
        c.input.v_plus = in.number("v_plus", 1.0);
        c.input.v_minus = in.number("v_minus", 1.0);
        c.input.alpha_plus = in.number("alpha_plus", 0.0);
        c.input.alpha_minus = in.number("alpha_minus", 0.0);
        in.finish();
        if (!(c.input.v_plus > 0.0)) throw ConfigError(in.child("v_plus"), "must be positive");
        if (!(c.input.v_minus > 0.0)) throw ConfigError(in.child("v_minus"), "must be positive");
        if (c.input.v_plus * c.input.v_minus < 1.0 - kUncertaintyTolerance) {
            throw ConfigError(r.child("input"), "input state violates v_plus * v_minus >= 1");
        }
    }
    r.finish();

    require_efficiency(c.eta_entanglement, r.child("eta_entanglement"));
    if (c.eta_entanglement_a) require_efficiency(*c.eta_entanglement_a, r.child("eta_entanglement_a"));
    if (c.eta_entanglement_b) require_efficiency(*c.eta_entanglement_b, r.child("eta_entanglement_b"));
    require_efficiency(c.eta_alice, r.child("eta_alice"));
    if (c.eta_alice == 0.0) throw ConfigError(r.child("eta_alice"), "must be nonzero");
    require_efficiency(c.eta_victor, r.child("eta_victor"));
    if (c.eta_victor == 0.0) throw ConfigError(r.child("eta_victor"), "must be nonzero");
    if (c.dark_noise_alice < 0.0) throw ConfigError(r.child("dark_noise_alice"), "must be non-negative");
    with_domain_path(path, [&] { c.validate(); });
    return c;
}

SweepSpec parse_sweep(const json& value, const std::string& path) {
    ObjectReader r(value, path);
    SweepSpec s;
    s.parameter = r.string("parameter", s.parameter);
    s.start = r.number("start", s.start);
    s.stop = r.number("stop", s.stop);
    s.steps = static_cast<std::size_t>(r.unsigned_integer("steps", s.steps));
    s.gain_ratio = r.optional_number("gain_ratio");
    r.finish();
    if (s.steps < 2) {
        throw ConfigError(r.child("steps"), "a sweep needs at least 2 steps");
    }
    return s;
}

MonteCarloSpec parse_montecarlo(const json& value, const std::string& path) {
    ObjectReader r(value, path);
    MonteCarloSpec m;
    m.n = static_cast<std::size_t>(r.unsigned_integer("n", m.n));
    m.seed = r.unsigned_integer("seed", m.seed);
    r.finish();
    if (m.n < 2) {
        throw ConfigError(r.child("n"), "need at least 2 samples");
    }
    return m;
}

SpectrumSpec parse_spectrum(const json& value, const std::string& path) {
    ObjectReader r(value, path);
    SpectrumSpec s;
    s.center = r.number("center", s.center);
    s.span = r.number("span", s.span);
    s.rbw = r.number("rbw", s.rbw);
    s.vbw = r.number("vbw", s.vbw);
    s.points = static_cast<std::size_t>(r.unsigned_integer("points", s.points));
    if (r.has("noise_frequencies")) {
        const json& f = r.get("noise_frequencies");
        if (!f.is_array() || f.size() != 2 || !f[0].is_number() || !f[1].is_number()) {
            throw ConfigError(r.child("noise_frequencies"), "expected two frequencies in Hz");
        }
        s.noise_frequencies = {f[0].get<double>(), f[1].get<double>()};
    }
    r.finish();
    for (const auto& [key, v] : {std::pair{"span", s.span}, std::pair{"rbw", s.rbw}, std::pair{"vbw", s.vbw}}) {
        if (!(v > 0.0)) throw ConfigError(r.child(key), "must be positive");
    }
    if (s.points < 3) throw ConfigError(r.child("points"), "need at least 3 points");
    const double lo = s.center - s.span / 2.0;
    const double hi = s.center + s.span / 2.0;
    for (double f : {s.noise_frequencies.first, s.noise_frequencies.second}) {
        if (f < lo || f > hi) throw ConfigError(r.child("noise_frequencies"), "frequency outside the span");
    }
    return s;
}

OutputSpec parse_output(const json& value, const std::string& path) {
    ObjectReader r(value, path);
    OutputSpec o;
    const std::string format = r.string("format", "csv");
    if (format == "csv") {
        o.format = OutputFormat::csv;
    } else if (format == "json") {
        o.format = OutputFormat::json;
    } else {
        throw ConfigError(r.child("format"), "expected \"csv\" or \"json\"");
    }
    o.path = r.string("path", "");
    r.finish();
    return o;
}

json::json_pointer pointer_for(const std::string& dotted) {
    std::string p;
    std::stringstream ss(dotted);
    std::string part;
    while (std::getline(ss, part, '.')) {
        if (part.empty()) throw ConfigError(dotted, "malformed parameter path");
        p += "/" + part;
    }
    return json::json_pointer(p);
}

}  // namespace

ConfigError::ConfigError(std::string path, const std::string& message)
    : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

std::vector<double> SweepSpec::grid() const {
    std::vector<double> g(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        g[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    return g;
}

RunConfig parse_config(const json& document) {
    ObjectReader r(document, "");
    RunConfig c;
    c.document = document;
    if (!r.has("teleporter")) {
        throw ConfigError("teleporter", "missing required section");
    }
    c.teleporter = parse_teleporter(r.get("teleporter"), "teleporter");
    if (r.has("sweep")) c.sweep = parse_sweep(r.get("sweep"), "sweep");
    if (r.has("montecarlo")) c.montecarlo = parse_montecarlo(r.get("montecarlo"), "montecarlo");
    if (r.has("spectrum")) c.spectrum = parse_spectrum(r.get("spectrum"), "spectrum");
    if (r.has("output")) c.output = parse_output(r.get("output"), "output");
    r.finish();
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file " + path.string());
    }
    json document;
    try {
        document = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(document);
}

json with_parameter(const json& document, const std::string& path, double value) {
    json copy = document;
    const auto ptr = pointer_for(path);
    if (copy.contains(ptr) && !copy[ptr].is_number() && !copy[ptr].is_null()) {
        throw ConfigError(path, "sweep parameter must be a numeric field");
    }
    try {
        copy[ptr] = value;
    } catch (const json::exception&) {
        throw ConfigError(path, "not a config field");
    }
    // Re-parsing rejects paths outside the schema as unknown keys.
    (void)parse_config(copy);
    return copy;
}

std::string config_hash(const json& document) {
    const std::string text = document.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

const char* tool_version() { return CVTELE_VERSION; }

}  // namespace cvtele::experiment
