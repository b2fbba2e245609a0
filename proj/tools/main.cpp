#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "sechsim/config.hpp"
#include "sechsim/csv.hpp"
#include "sechsim/evolve.hpp"
#include "sechsim/kernels.hpp"
#include "sechsim/rosen_zener.hpp"
#include "sechsim/scans.hpp"
#include "sechsim/tomography.hpp"

namespace fs = std::filesystem;
using namespace sechsim;

namespace {

struct Opts {
    std::string config_path;
    std::string out_dir;
    std::string shape;
    std::string method;
    int bit_depth = -1;
    int levels = -1;
    double window_sigmas = 0.0;
    int parallelism = -1;
};

void add_common(CLI::App* cmd, Opts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--out", o.out_dir, "output directory (overrides config)");
    cmd->add_option("--shape", o.shape, "pulse envelope: sech|gaussian|square");
    cmd->add_option("--bit-depth", o.bit_depth, "DAC bits, 0 = unquantized");
    cmd->add_option("--levels", o.levels, "transmon levels simulated");
    cmd->add_option("--window-sigmas", o.window_sigmas, "half window, sigma units");
    cmd->add_option("--method", o.method, "integrator: pe|ark");
    cmd->add_option("--parallelism", o.parallelism, "worker threads, 0 = hardware");
}

// Flags win over the config file.
ExperimentConfig resolve(const Opts& o) {
    ExperimentConfig cfg =
        o.config_path.empty() ? default_config() : load_config(o.config_path);
    if (!o.out_dir.empty()) cfg.output_dir = o.out_dir;
    if (!o.shape.empty()) cfg.pulse.shape = shape_from_name(o.shape);
    if (o.bit_depth >= 0) cfg.pulse.bit_depth = o.bit_depth;
    if (o.levels > 0) cfg.model.n_levels = o.levels;
    if (o.window_sigmas > 0.0) cfg.pulse.window_sigmas = o.window_sigmas;
    if (!o.method.empty()) cfg.evolution.method = method_from_name(o.method);
    if (o.parallelism >= 0) cfg.parallelism = o.parallelism;
    validate(cfg);
    return cfg;
}

void prepare_out_dir(const ExperimentConfig& cfg) {
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    const fs::path probe = fs::path(cfg.output_dir) / ".write_probe";
    {
        std::ofstream f(probe);
        if (!f) throw ConfigError("output directory not writable: " + cfg.output_dir);
    }
    fs::remove(probe, ec);
}

std::string timestamp_utc() {
    char buf[32];
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// The timestamp lives here so the CSVs stay byte-stable run to run.
void write_sidecar(const ExperimentConfig& cfg, const std::string& command,
                   const fs::path& csv_path) {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["artifact"] = csv_path.filename().string();
    j["timestamp_utc"] = timestamp_utc();
    j["config"] = nlohmann::ordered_json::parse(to_json_text(cfg));
    fs::path p = csv_path;
    p.replace_extension(".json");
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write sidecar: " + p.string());
    f << j.dump(2) << "\n";
}

std::string fmt(const char* spec, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, spec);
    std::vsnprintf(buf, sizeof buf, spec, ap);
    va_end(ap);
    return buf;
}

std::vector<double> hz_axis(const std::vector<double>& rad) {
    std::vector<double> hz(rad.size());
    for (std::size_t i = 0; i < rad.size(); ++i) hz[i] = rad[i] / kTwoPi;
    return hz;
}

std::string run_rabi_scan(const ExperimentConfig& cfg) {
    const ScanGrid grid = default_scan_grid(cfg);
    const ScanResult res = rabi_scan_2d(cfg.pulse.shape, grid, cfg);
    double lo = 1.0, hi = 0.0;
    for (const auto& row : res.values)
        for (double v : row) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    const fs::path csv = fs::path(cfg.output_dir) /
                         (std::string("rabi_map_") + shape_name(res.shape) + ".csv");
    write_csv_matrix(csv.string(), "amplitude_rad_per_s\\detuning_hz",
                     hz_axis(grid.detunings), grid.amplitudes, res.values);
    write_sidecar(cfg, "rabi-scan", csv);
    return fmt("rabi-scan[%s]: %zux%zu map, P(excited) in [%.4f, %.4f] -> %s",
               shape_name(res.shape), grid.amplitudes.size(),
               grid.detunings.size(), lo, hi, csv.string().c_str());
}

std::string run_line_cuts(const ExperimentConfig& cfg) {
    const ScanGrid grid = default_scan_grid(cfg);
    const ScanResult res = rabi_scan_2d(cfg.pulse.shape, grid, cfg);
    const double cut_mhz[] = {0.0, 5.0, 10.0, 20.0};
    std::vector<std::string> header = {"amplitude_rad_per_s"};
    std::vector<LineCut> cuts;
    for (double m : cut_mhz) {
        cuts.push_back(line_cut(res, kTwoPi * m * 1e6));
        header.push_back(fmt("p_excited_%gmhz", cuts.back().delta / (kTwoPi * 1e6)));
    }
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < grid.amplitudes.size(); ++i) {
        std::vector<std::string> r = {format_sci(grid.amplitudes[i])};
        for (const auto& c : cuts) r.push_back(format_sci(c.probabilities[i]));
        rows.push_back(std::move(r));
    }
    const fs::path csv = fs::path(cfg.output_dir) /
                         (std::string("line_cuts_") + shape_name(res.shape) + ".csv");
    write_csv(csv.string(), header, rows);
    write_sidecar(cfg, "line-cuts", csv);
    return fmt("line-cuts[%s]: %zu cuts at {0,5,10,20} MHz -> %s",
               shape_name(res.shape), cuts.size(), csv.string().c_str());
}

std::string run_cyclic_amplitude(const ExperimentConfig& cfg) {
    const ScanGrid grid = default_scan_grid(cfg);
    const ScanResult res = rabi_scan_2d(cfg.pulse.shape, grid, cfg);
    const CyclicCurve curve = cyclic_amplitude_curve(res);
    const double var = amplitude_variation(curve, kTwoPi * 10e6);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < curve.detunings.size(); ++k)
        rows.push_back({format_sci(curve.detunings[k] / kTwoPi),
                        format_sci(curve.amplitudes[k]),
                        format_sci(curve.fit_residuals[k])});
    const fs::path csv = fs::path(cfg.output_dir) /
                         (std::string("cyclic_curve_") + shape_name(res.shape) + ".csv");
    write_csv(csv.string(),
              {"detuning_hz", "cyclic_amplitude_rad_per_s", "fit_residual"}, rows);
    write_sidecar(cfg, "cyclic-amplitude", csv);
    return fmt("cyclic-amplitude[%s]: variation=%.2f%% over |delta|<=10 MHz (%zu points) -> %s",
               shape_name(res.shape), var, curve.detunings.size(),
               csv.string().c_str());
}

std::string run_phase_curve(const ExperimentConfig& cfg) {
    const std::vector<double> deltas = default_curve_deltas(cfg, true);
    const std::vector<TomographyRecord> recs = phase_curve(deltas, cfg);
    double worst = 0.0;
    for (const auto& r : recs) {
        if (std::abs(r.delta) > kTwoPi * 10e6 * (1.0 + 1e-12)) continue;
        worst = std::max(worst,
                         std::abs(r.phi - sech_phase(cfg.pulse.rho, r.delta)));
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : recs)
        rows.push_back({format_sci(r.delta / kTwoPi), prep_name(r.prep),
                        format_sci(r.exp_x), format_sci(r.exp_y),
                        format_sci(r.exp_z), format_sci(r.leakage),
                        format_sci(r.theta), format_sci(r.phi)});
    const fs::path csv = fs::path(cfg.output_dir) / "phase_curve.csv";
    write_csv(csv.string(),
              {"delta_hz", "prep", "exp_x", "exp_y", "exp_z", "leakage",
               "theta_rad", "phi_rad"},
              rows);
    write_sidecar(cfg, "phase-curve", csv);
    return fmt("phase-curve: %zu points, max|phi - 4*atan(rho/delta)|=%.4f rad for |delta|<=10 MHz -> %s",
               recs.size(), worst, csv.string().c_str());
}

std::string run_fidelity_sweep(const ExperimentConfig& cfg) {
    const std::vector<double> deltas = default_curve_deltas(cfg, false);
    const std::vector<FidelityPoint> pts = fidelity_sweep(deltas, cfg);
    double worst = 1.0;
    for (const auto& p : pts)
        if (std::abs(p.delta) <= kTwoPi * 10e6 * (1.0 + 1e-12))
            worst = std::min(worst, p.f_avg);
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : pts)
        rows.push_back({format_sci(p.delta / kTwoPi), format_sci(p.f_avg)});
    const fs::path csv = fs::path(cfg.output_dir) / "fidelity_sweep.csv";
    write_csv(csv.string(), {"detuning_hz", "f_avg"}, rows);
    write_sidecar(cfg, "fidelity-sweep", csv);
    return fmt("fidelity-sweep: %zu points, min F_avg=%.5f for |delta|<=10 MHz -> %s",
               pts.size(), worst, csv.string().c_str());
}

std::string run_waveform_dump(const ExperimentConfig& cfg) {
    const SampledWaveform wf = sample_waveform(cfg.pulse);
    double peak = 0.0;
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < wf.samples.size(); ++k) {
        peak = std::max(peak, std::abs(wf.samples[k]));
        rows.push_back({format_sci(wf.t0 + wf.dt * static_cast<double>(k)),
                        format_sci(wf.samples[k])});
    }
    const fs::path csv = fs::path(cfg.output_dir) /
                         (std::string("waveform_") + shape_name(cfg.pulse.shape) + ".csv");
    write_csv(csv.string(), {"time_s", "rabi_rate_rad_per_s"}, rows);
    write_sidecar(cfg, "waveform-dump", csv);
    return fmt("waveform-dump[%s]: %zu samples, dt=%.3e s, peak=%.6e rad/s -> %s",
               shape_name(cfg.pulse.shape), wf.samples.size(), wf.dt, peak,
               csv.string().c_str());
}

// Fast oracle-vs-simulation checks; nonzero exit when anything drifts.
std::string run_selftest(const ExperimentConfig& cfg, bool& ok) {
    int failures = 0;
    auto report = [&](const char* name, bool pass, const std::string& detail) {
        std::printf("[%s] %-34s %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
        if (!pass) ++failures;
    };

    const double rho = cfg.pulse.rho;
    EvolutionConfig ark;
    ark.method = Method::AdaptiveRK;
    ark.rel_tol = 1e-11;

    { // two-level transition probability against the closed form
        double worst = 0.0;
        for (double a : {0.4, 1.0, 2.0})
            for (double dmult : {-1.5, 0.5}) {
                const PulseSpec p = make_pulse(Shape::Sech, a * rho, rho, 12.0,
                                               cfg.pulse.sample_period, 0);
                TransmonParams tp;
                tp.n_levels = 2;
                tp.delta = dmult * rho;
                QuantumState s = initial_thermal_state(0.0, 2);
                s = enter_drive_frame(s);
                s = evolve(s, p, tp, ark);
                const double sim = 1.0 - s.rho(0, 0).real();
                const double ref =
                    rz_transition_probability({a * rho, rho, dmult * rho});
                worst = std::max(worst, std::abs(sim - ref));
            }
        report("transition probability vs oracle", worst <= 1e-8,
               fmt("max|dP|=%.2e (tol 1e-8)", worst));
    }
    { // composed propagator unitarity, paper config
        TransmonParams tp = cfg.model;
        tp.delta = kTwoPi * 5e6;
        const Eigen::MatrixXcd u = pe_propagator(sample_waveform(cfg.pulse), tp);
        const double err = (u.adjoint() * u -
                            Eigen::MatrixXcd::Identity(u.rows(), u.cols()))
                               .cwiseAbs()
                               .maxCoeff();
        report("propagator unitarity", err <= 1e-9, fmt("max|U+U-I|=%.2e", err));
    }
    { // cyclic-return property
        double worstgap = 0.0;
        for (int n : {1, 2})
            for (double mhz : {0.0, 7.0}) {
                const PulseSpec p =
                    make_pulse(Shape::Sech, sech_cyclic_amplitude(n, rho), rho,
                               12.0, cfg.pulse.sample_period, 0);
                TransmonParams tp;
                tp.n_levels = 2;
                tp.delta = kTwoPi * mhz * 1e6;
                QuantumState s = initial_thermal_state(0.0, 2);
                s = enter_drive_frame(s);
                s = evolve(s, p, tp, ark);
                worstgap = std::max(worstgap, 1.0 - s.rho(0, 0).real());
            }
        report("cyclic return", worstgap <= 1e-6,
               fmt("max return gap=%.2e (tol 1e-6)", worstgap));
    }
    { // phase law, ideal two-level chain
        ExperimentConfig ideal = cfg;
        ideal.model.n_levels = 2;
        ideal.pulse.shape = Shape::Sech;
        ideal.pulse.omega0 = 2.0 * rho;
        ideal.pulse.bit_depth = 0;
        ideal.pulse.window_sigmas = 8.0;
        ideal.evolution = ark;
        ideal.thermal_excited = 0.0;
        ideal.dissipation.enabled = false;
        double worst = 0.0;
        for (double mhz : {-5.0, 5.0}) {
            const double d = kTwoPi * mhz * 1e6;
            const TomographyRecord r =
                zgate_tomography(d, PrepLabel::YPlus90, ideal);
            double dphi = r.phi - sech_phase(rho, d);
            dphi = std::remainder(dphi, kTwoPi);
            worst = std::max(worst, std::abs(dphi));
        }
        report("phase law", worst <= 1e-3, fmt("max|dphi|=%.2e rad", worst));
    }
    { // quantizer bound
        PulseSpec p8 = cfg.pulse;
        p8.bit_depth = 8;
        PulseSpec p0 = cfg.pulse;
        p0.bit_depth = 0;
        const SampledWaveform w8 = sample_waveform(p8);
        const SampledWaveform w0 = sample_waveform(p0);
        double worst = 0.0;
        for (std::size_t k = 0; k < w8.samples.size(); ++k)
            worst = std::max(worst, std::abs(w8.samples[k] - w0.samples[k]));
        const double bound = cfg.pulse.omega0 / (2.0 * 255.0) * (1.0 + 1e-12);
        report("quantizer bound", worst <= bound,
               fmt("max|dA|=%.3e <= %.3e", worst, bound));
    }
    { // SIMD kernel equivalence
        const kernels::Ops& act = kernels::active();
        const kernels::Ops& ref = kernels::scalar();
        std::mt19937_64 rng(12345);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        bool same = true;
        for (int trial = 0; trial < 4 && same; ++trial) {
            const int n = 4;
            std::vector<std::complex<double>> a(n * n), b(n * n), c1(n * n),
                c2(n * n);
            for (auto* v : {&a, &b})
                for (auto& z : *v) z = {u(rng), u(rng)};
            ref.matmul(n, a.data(), b.data(), c1.data());
            act.matmul(n, a.data(), b.data(), c2.data());
            for (int k = 0; k < n * n; ++k)
                if (std::memcmp(&c1[k], &c2[k], sizeof c1[k]) != 0) same = false;
        }
        report("kernel equivalence", same,
               fmt("%s vs scalar bitwise", act.name));
    }
    { // fidelity self-consistency
        Eigen::Matrix2cd r;
        r << 0.7, std::complex<double>(0.1, 0.2), std::complex<double>(0.1, -0.2),
            0.3;
        const double f = uhlmann_fidelity(r, r);
        report("fidelity self-overlap", std::abs(f - 1.0) <= 1e-12,
               fmt("F(rho,rho)=%.12f", f));
    }

    ok = failures == 0;
    return fmt("selftest: %d/7 checks passed", 7 - failures);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pulse-level simulator for sech-driven transmon phase gates"};
    app.require_subcommand(1);
    Opts o;
    const std::vector<std::pair<const char*, const char*>> cmds = {
        {"rabi-scan", "2D excited-state-probability map over amplitude x detuning"},
        {"line-cuts", "amplitude line cuts at fixed detunings"},
        {"cyclic-amplitude", "first-return amplitude curve + variation metric"},
        {"phase-curve", "tomography phase of the cyclic pulse vs detuning"},
        {"fidelity-sweep", "six-state average gate fidelity vs detuning"},
        {"waveform-dump", "emit the sampled, quantized waveform"},
        {"selftest", "oracle-vs-simulation invariant checks"}};
    for (const auto& [name, help] : cmds) add_common(app.add_subcommand(name, help), o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();

    ExperimentConfig cfg;
    try {
        cfg = resolve(o);
        if (cmd != "selftest") prepare_out_dir(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }

    try {
        std::string summary;
        if (cmd == "rabi-scan") summary = run_rabi_scan(cfg);
        else if (cmd == "line-cuts") summary = run_line_cuts(cfg);
        else if (cmd == "cyclic-amplitude") summary = run_cyclic_amplitude(cfg);
        else if (cmd == "phase-curve") summary = run_phase_curve(cfg);
        else if (cmd == "fidelity-sweep") summary = run_fidelity_sweep(cfg);
        else if (cmd == "waveform-dump") summary = run_waveform_dump(cfg);
        else if (cmd == "selftest") {
            bool ok = false;
            summary = run_selftest(cfg, ok);
            std::printf("%s\n", summary.c_str());
            return ok ? 0 : 3;
        }
        std::printf("%s\n", summary.c_str());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
    return 0;
}
