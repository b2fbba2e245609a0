#include "sechsim/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

using nlohmann::ordered_json;

namespace sechsim {

namespace {

// Cyclic-frequency suffixes -> rad/s, time suffixes -> s.
const std::vector<std::pair<std::string, double>> kFreqUnits = {
    {"_ghz", kTwoPi * 1e9}, {"_mhz", kTwoPi * 1e6}, {"_hz", kTwoPi}};
const std::vector<std::pair<std::string, double>> kTimeUnits = {
    {"_ns", 1e-9}, {"_us", 1e-6}, {"_s", 1.0}};

void check_keys(const ordered_json& sec, const std::string& name,
                const std::vector<std::string>& allowed) {
    for (const auto& item : sec.items()) {
        bool ok = false;
        for (const auto& k : allowed)
            if (item.key() == k) { ok = true; break; }
        if (!ok) throw ConfigError("unknown key \"" + item.key() + "\" in " + name);
    }
}

// Accepts any one unit variant of `base` (e.g. omega10_ghz or omega10_mhz).
double unit_field(const ordered_json& sec, const std::string& base,
                  const std::vector<std::pair<std::string, double>>& units,
                  double fallback) {
    int hits = 0;
    double value = fallback;
    for (const auto& [suffix, factor] : units) {
        const std::string key = base + suffix;
        if (!sec.contains(key)) continue;
        if (!sec[key].is_number()) throw ConfigError(key + " must be a number");
        value = sec[key].get<double>() * factor;
        ++hits;
    }
    if (hits > 1) throw ConfigError("conflicting unit variants for " + base);
    return value;
}

std::vector<std::string> with_units(std::initializer_list<std::string> plain,
                                    std::initializer_list<std::string> freq,
                                    std::initializer_list<std::string> time) {
    std::vector<std::string> out(plain);
    for (const auto& b : freq)
        for (const auto& [s, f] : kFreqUnits) out.push_back(b + s);
    for (const auto& b : time)
        for (const auto& [s, f] : kTimeUnits) out.push_back(b + s);
    return out;
}

template <typename T>
T plain_field(const ordered_json& sec, const char* key, T fallback) {
    if (!sec.contains(key)) return fallback;
    try {
        return sec[key].get<T>();
    } catch (const ordered_json::exception&) {
        throw ConfigError(std::string("bad value for ") + key);
    }
}

} // namespace

ExperimentConfig default_config() {
    ExperimentConfig c;
    const double sigma = 25e-9;
    const double rho = M_PI / (2.0 * sigma);
    c.pulse = make_pulse(Shape::Sech, 2.0 * rho, rho, 4.0, 1e-9, 8);
    return c;
}

void validate(const ExperimentConfig& c) {
    validate(c.model);
    validate(c.pulse);
    validate(c.evolution);
    validate(c.dissipation);
    if (!(c.thermal_excited >= 0.0 && c.thermal_excited <= 0.5))
        throw std::invalid_argument("thermal_excited must lie in [0, 0.5]");
    if (!(c.theory_excited >= 0.0 && c.theory_excited <= 0.5))
        throw std::invalid_argument("theory_excited must lie in [0, 0.5]");
    if (c.grids.amplitude_points < 5)
        throw std::invalid_argument("amplitude_points must be >= 5");
    if (c.grids.detuning_points < 3)
        throw std::invalid_argument("detuning_points must be >= 3");
    if (!(c.grids.amplitude_max_ratio > 0.0))
        throw std::invalid_argument("amplitude_max_ratio must be > 0");
    if (!(c.grids.detuning_max > 0.0))
        throw std::invalid_argument("detuning_max must be > 0");
    if (!(c.grids.curve_step > 0.0) || !(c.grids.curve_max >= c.grids.curve_step))
        throw std::invalid_argument("curve grid must satisfy 0 < step <= max");
    if (c.parallelism < 0)
        throw std::invalid_argument("parallelism must be >= 0");
    if (c.output_dir.empty())
        throw std::invalid_argument("output_dir must not be empty");
}

ExperimentConfig parse_config_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::exception& e) {
        throw ConfigError(std::string("config parse: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be an object");
    check_keys(j, "config root",
               {"model", "pulse", "evolution", "dissipation", "thermal_excited",
                "theory_excited", "grids", "parallelism", "output_dir"});

    ExperimentConfig c = default_config();

    if (j.contains("model")) {
        const auto& m = j["model"];
        check_keys(m, "model", with_units({"levels"}, {"omega10", "alpha", "delta"}, {}));
        c.model.n_levels = plain_field(m, "levels", c.model.n_levels);
        c.model.omega10 = unit_field(m, "omega10", kFreqUnits, c.model.omega10);
        c.model.alpha = unit_field(m, "alpha", kFreqUnits, c.model.alpha);
        c.model.delta = unit_field(m, "delta", kFreqUnits, c.model.delta);
    }
    if (j.contains("pulse")) {
        const auto& p = j["pulse"];
        check_keys(p, "pulse",
                   with_units({"shape", "amplitude_over_cyclic", "window_sigmas",
                               "bit_depth"},
                              {}, {"sigma", "sample_period"}));
        Shape shape = c.pulse.shape;
        if (p.contains("shape")) {
            try {
                shape = shape_from_name(p["shape"].get<std::string>());
            } catch (const std::exception& e) {
                throw ConfigError(e.what());
            }
        }
        const double sigma = unit_field(p, "sigma", kTimeUnits, c.pulse.sigma);
        if (!(sigma > 0.0)) throw ConfigError("pulse sigma must be > 0");
        const double rho = M_PI / (2.0 * sigma);
        const double ratio = plain_field(p, "amplitude_over_cyclic",
                                         c.pulse.omega0 / (2.0 * c.pulse.rho));
        c.pulse.shape = shape;
        c.pulse.sigma = sigma;
        c.pulse.rho = rho;
        c.pulse.omega0 = ratio * 2.0 * rho;
        c.pulse.window_sigmas =
            plain_field(p, "window_sigmas", c.pulse.window_sigmas);
        c.pulse.sample_period =
            unit_field(p, "sample_period", kTimeUnits, c.pulse.sample_period);
        c.pulse.bit_depth = plain_field(p, "bit_depth", c.pulse.bit_depth);
    }
    if (j.contains("evolution")) {
        const auto& e = j["evolution"];
        check_keys(e, "evolution", {"method", "rel_tol", "substeps_per_sample"});
        if (e.contains("method")) {
            try {
                c.evolution.method = method_from_name(e["method"].get<std::string>());
            } catch (const std::exception& ex) {
                throw ConfigError(ex.what());
            }
        }
        c.evolution.rel_tol = plain_field(e, "rel_tol", c.evolution.rel_tol);
        c.evolution.substeps_per_sample =
            plain_field(e, "substeps_per_sample", c.evolution.substeps_per_sample);
    }
    if (j.contains("dissipation")) {
        const auto& d = j["dissipation"];
        check_keys(d, "dissipation", with_units({"enabled"}, {}, {"t1", "t2_star"}));
        c.dissipation.enabled = plain_field(d, "enabled", c.dissipation.enabled);
        c.dissipation.t1 = unit_field(d, "t1", kTimeUnits, c.dissipation.t1);
        c.dissipation.t2_star =
            unit_field(d, "t2_star", kTimeUnits, c.dissipation.t2_star);
    }
    c.thermal_excited = plain_field(j, "thermal_excited", c.thermal_excited);
    c.theory_excited = plain_field(j, "theory_excited", c.theory_excited);
    if (j.contains("grids")) {
        const auto& g = j["grids"];
        check_keys(g, "grids",
                   with_units({"amplitude_points", "amplitude_max_ratio",
                               "detuning_points"},
                              {"detuning_max", "curve_step", "curve_max"}, {}));
        c.grids.amplitude_points =
            plain_field(g, "amplitude_points", c.grids.amplitude_points);
        c.grids.amplitude_max_ratio =
            plain_field(g, "amplitude_max_ratio", c.grids.amplitude_max_ratio);
        c.grids.detuning_points =
            plain_field(g, "detuning_points", c.grids.detuning_points);
        c.grids.detuning_max =
            unit_field(g, "detuning_max", kFreqUnits, c.grids.detuning_max);
        c.grids.curve_step =
            unit_field(g, "curve_step", kFreqUnits, c.grids.curve_step);
        c.grids.curve_max =
            unit_field(g, "curve_max", kFreqUnits, c.grids.curve_max);
    }
    c.parallelism = plain_field(j, "parallelism", c.parallelism);
    c.output_dir = plain_field(j, "output_dir", c.output_dir);

    try {
        validate(c);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string to_json_text(const ExperimentConfig& c) {
    ordered_json j;
    j["model"] = {{"levels", c.model.n_levels},
                  {"omega10_ghz", c.model.omega10 / (kTwoPi * 1e9)},
                  {"alpha_mhz", c.model.alpha / (kTwoPi * 1e6)},
                  {"delta_mhz", c.model.delta / (kTwoPi * 1e6)}};
    j["pulse"] = {{"shape", shape_name(c.pulse.shape)},
                  {"sigma_ns", c.pulse.sigma / 1e-9},
                  {"amplitude_over_cyclic", c.pulse.omega0 / (2.0 * c.pulse.rho)},
                  {"window_sigmas", c.pulse.window_sigmas},
                  {"sample_period_ns", c.pulse.sample_period / 1e-9},
                  {"bit_depth", c.pulse.bit_depth}};
    j["evolution"] = {{"method", method_name(c.evolution.method)},
                      {"rel_tol", c.evolution.rel_tol},
                      {"substeps_per_sample", c.evolution.substeps_per_sample}};
    j["dissipation"] = {{"enabled", c.dissipation.enabled},
                        {"t1_us", c.dissipation.t1 / 1e-6},
                        {"t2_star_us", c.dissipation.t2_star / 1e-6}};
    j["thermal_excited"] = c.thermal_excited;
    j["theory_excited"] = c.theory_excited;
    j["grids"] = {{"amplitude_points", c.grids.amplitude_points},
                  {"amplitude_max_ratio", c.grids.amplitude_max_ratio},
                  {"detuning_points", c.grids.detuning_points},
                  {"detuning_max_mhz", c.grids.detuning_max / (kTwoPi * 1e6)},
                  {"curve_step_mhz", c.grids.curve_step / (kTwoPi * 1e6)},
                  {"curve_max_mhz", c.grids.curve_max / (kTwoPi * 1e6)}};
    j["parallelism"] = c.parallelism;
    j["output_dir"] = c.output_dir;
    return j.dump(2) + "\n";
}

void save_config(const ExperimentConfig& c, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write config file: " + path);
    out << to_json_text(c);
    if (!out) throw ConfigError("config write failed: " + path);
}

} // namespace sechsim
