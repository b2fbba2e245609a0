#include "sechsim/scans.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "sechsim/evolve.hpp"
#include "sechsim/fitting.hpp"
#include "sechsim/parallel.hpp"

namespace sechsim {

namespace {

void require_increasing(const std::vector<double>& v, const char* name) {
    if (v.empty()) throw std::invalid_argument(std::string(name) + " axis is empty");
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1]))
            throw std::invalid_argument(std::string(name) + " axis must be strictly increasing");
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

std::size_t nearest_index(const std::vector<double>& axis, double x) {
    std::size_t best = 0;
    double dist = std::abs(axis[0] - x);
    for (std::size_t i = 1; i < axis.size(); ++i) {
        const double d = std::abs(axis[i] - x);
        if (d < dist) { // strict: ties keep the lower index
            dist = d;
            best = i;
        }
    }
    return best;
}

std::vector<std::size_t> interior_minima(const std::vector<double>& cut) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < cut.size(); ++i)
        if (cut[i] <= cut[i - 1] && cut[i] <= cut[i + 1]) out.push_back(i);
    return out;
}

// 5 points nearest the discrete minimum (window shifted inward at the edges).
QuadraticVertex fit_window(const std::vector<double>& amps,
                           const std::vector<double>& probs, std::size_t i) {
    const std::size_t n = amps.size();
    std::size_t lo = i >= 2 ? i - 2 : 0;
    lo = std::min(lo, n - 5);
    return fit_quadratic_vertex(amps.data() + lo, probs.data() + lo, 5);
}

std::vector<double> column(const ScanResult& r, std::size_t j) {
    std::vector<double> cut(r.grid.amplitudes.size());
    for (std::size_t i = 0; i < cut.size(); ++i) cut[i] = r.values[i][j];
    return cut;
}

} // namespace

void validate(const ScanGrid& g) {
    require_increasing(g.amplitudes, "amplitude");
    require_increasing(g.detunings, "detuning");
}

ScanGrid default_scan_grid(const ExperimentConfig& cfg) {
    ScanGrid g;
    g.amplitudes = linspace(0.0, cfg.grids.amplitude_max_ratio * 2.0 * cfg.pulse.rho,
                            cfg.grids.amplitude_points);
    g.detunings = linspace(-cfg.grids.detuning_max, cfg.grids.detuning_max,
                           cfg.grids.detuning_points);
    return g;
}

ScanResult rabi_scan_2d(Shape shape, const ScanGrid& grid,
                        const ExperimentConfig& cfg) {
    validate(grid);
    validate(cfg);
    const std::size_t na = grid.amplitudes.size();
    const std::size_t nd = grid.detunings.size();
    ScanResult res;
    res.grid = grid;
    res.shape = shape;
    res.values.assign(na, std::vector<double>(nd, 0.0));

    parallel_for(
        nd,
        [&](std::size_t j) {
            TransmonParams model = cfg.model;
            model.delta = grid.detunings[j];
            for (std::size_t i = 0; i < na; ++i) {
                PulseSpec spec = cfg.pulse;
                spec.shape = shape;
                spec.omega0 = grid.amplitudes[i];
                const SampledWaveform wf = sample_waveform(spec);
                QuantumState s =
                    initial_thermal_state(cfg.thermal_excited, model.n_levels);
                s = enter_drive_frame(s);
                if (cfg.dissipation.enabled)
                    s = evolve_lindblad(s, wf, model, cfg.dissipation, cfg.evolution);
                else
                    s = evolve(s, wf, model, cfg.evolution);
                // rho00 is frame-diagonal, so no frame restore needed here
                res.values[i][j] =
                    std::clamp(1.0 - s.rho(0, 0).real(), 0.0, 1.0);
            }
        },
        cfg.parallelism);
    return res;
}

LineCut line_cut(const ScanResult& result, double delta) {
    validate(result.grid);
    if (result.values.size() != result.grid.amplitudes.size())
        throw std::invalid_argument("line_cut: scan values do not match grid");
    const std::size_t j = nearest_index(result.grid.detunings, delta);
    LineCut cut;
    cut.delta = result.grid.detunings[j];
    cut.amplitudes = result.grid.amplitudes;
    cut.probabilities = column(result, j);
    return cut;
}

CyclicFit find_cyclic_amplitude(const std::vector<double>& amplitudes,
                                const std::vector<double>& probabilities,
                                double bracket_lo, double bracket_hi) {
    if (amplitudes.size() != probabilities.size())
        throw std::invalid_argument("find_cyclic_amplitude: size mismatch");
    const std::size_t n = amplitudes.size();
    if (n < 5)
        throw std::invalid_argument("find_cyclic_amplitude: need at least 5 points");
    require_increasing(amplitudes, "amplitude");

    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (amplitudes[i] < bracket_lo || amplitudes[i] > bracket_hi) continue;
        if (best == n || probabilities[i] < probabilities[best]) best = i;
    }
    if (best == n)
        throw std::invalid_argument("find_cyclic_amplitude: bracket holds no points");
    if (best == 0 || best + 1 == n || probabilities[best] > probabilities[best - 1] ||
        probabilities[best] > probabilities[best + 1])
        throw std::invalid_argument("find_cyclic_amplitude: no interior minimum in bracket");

    const QuadraticVertex v = fit_window(amplitudes, probabilities, best);
    if (!(v.curvature > 0.0))
        throw std::runtime_error("find_cyclic_amplitude: non-convex fit");
    return {v.x_star, v.residual};
}

CyclicCurve cyclic_amplitude_curve(const ScanResult& result) {
    validate(result.grid);
    const std::size_t na = result.grid.amplitudes.size();
    const std::size_t nd = result.grid.detunings.size();
    if (na < 5)
        throw std::invalid_argument("cyclic_amplitude_curve: need >= 5 amplitude points");

    const std::size_t j0 = nearest_index(result.grid.detunings, 0.0);
    const std::vector<double> col0 = column(result, j0);

    // Seed: first genuine Rabi peak above the thermal floor, then the valley
    // right after it — that valley is the first full cycle.
    const double floor = col0.front();
    std::size_t ipeak = na;
    for (std::size_t i = 1; i + 1 < na; ++i) {
        if (col0[i] >= col0[i - 1] && col0[i] >= col0[i + 1] &&
            col0[i] > floor + 0.05) {
            ipeak = i;
            break;
        }
    }
    if (ipeak == na)
        throw std::runtime_error("cyclic_amplitude_curve: no Rabi peak near zero detuning");
    std::size_t i0 = na;
    for (std::size_t i = ipeak + 1; i + 1 < na; ++i) {
        if (col0[i] <= col0[i - 1] && col0[i] <= col0[i + 1]) {
            i0 = i;
            break;
        }
    }
    if (i0 == na)
        throw std::runtime_error("cyclic_amplitude_curve: no first-return valley at zero detuning");

    std::map<std::size_t, CyclicFit> found;
    {
        const QuadraticVertex v = fit_window(result.grid.amplitudes, col0, i0);
        if (!(v.curvature > 0.0))
            throw std::runtime_error("cyclic_amplitude_curve: seed fit not convex");
        found[j0] = {v.x_star, v.residual};
    }

    auto sweep = [&](long j_from, long j_to, long step) {
        std::size_t prev = i0;
        for (long j = j_from; j != j_to; j += step) {
            const std::vector<double> cut = column(result, static_cast<std::size_t>(j));
            const std::vector<std::size_t> mins = interior_minima(cut);
            if (mins.empty()) continue;
            std::size_t pick = mins[0];
            for (std::size_t m : mins)
                if (std::llabs(static_cast<long long>(m) - static_cast<long long>(prev)) <
                    std::llabs(static_cast<long long>(pick) - static_cast<long long>(prev)))
                    pick = m;
            prev = pick;
            const QuadraticVertex v = fit_window(result.grid.amplitudes, cut, pick);
            if (v.curvature > 0.0)
                found[static_cast<std::size_t>(j)] = {v.x_star, v.residual};
        }
    };
    sweep(static_cast<long>(j0) + 1, static_cast<long>(nd), +1);
    sweep(static_cast<long>(j0) - 1, -1, -1);

    CyclicCurve curve;
    for (const auto& [j, fit] : found) {
        curve.detunings.push_back(result.grid.detunings[j]);
        curve.amplitudes.push_back(fit.amplitude);
        curve.fit_residuals.push_back(fit.residual);
    }
    return curve;
}

double amplitude_variation(const CyclicCurve& curve, double delta_bound) {
    if (!(delta_bound > 0.0))
        throw std::invalid_argument("amplitude_variation: bound must be > 0");
    const double slack = delta_bound * (1.0 + 1e-12);
    double amax = 0.0, amin = 0.0, a0 = 0.0;
    double dmin = 0.0, dmax = 0.0, dnear = 0.0;
    bool any = false;
    for (std::size_t k = 0; k < curve.detunings.size(); ++k) {
        const double d = curve.detunings[k];
        if (std::abs(d) > slack) continue;
        const double a = curve.amplitudes[k];
        if (!any) {
            amax = amin = a0 = a;
            dmin = dmax = dnear = d;
            any = true;
            continue;
        }
        amax = std::max(amax, a);
        amin = std::min(amin, a);
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
        if (std::abs(d) < std::abs(dnear)) {
            dnear = d;
            a0 = a;
        }
    }
    if (!any || dmax < 0.9 * delta_bound || dmin > -0.9 * delta_bound)
        throw std::invalid_argument("amplitude_variation: curve does not cover the range");
    if (std::abs(dnear) > 0.1 * delta_bound)
        throw std::invalid_argument("amplitude_variation: no curve point near zero detuning");
    if (!(a0 > 0.0))
        throw std::runtime_error("amplitude_variation: non-positive normalizer");
    return 100.0 * (amax - amin) / a0;
}

std::vector<TomographyRecord> phase_curve(const std::vector<double>& deltas,
                                          const ExperimentConfig& cfg) {
    require_increasing(deltas, "detuning");
    for (double d : deltas)
        if (d == 0.0)
            throw std::invalid_argument("phase_curve: delta = 0 is singular, exclude it");
    validate(cfg);

    std::vector<TomographyRecord> recs(deltas.size());
    parallel_for(
        deltas.size(),
        [&](std::size_t k) {
            recs[k] = zgate_tomography(deltas[k], PrepLabel::YPlus90, cfg);
        },
        cfg.parallelism);

    // Unwrap each detuning sign separately, anchored at the far end where the
    // phase has decayed into the principal band; a naive sweep across zero
    // would chase the wrong branch through the 4 pi jump.
    auto unwrap_group = [&](std::vector<std::size_t> order, bool positive) {
        if (order.empty()) return;
        double anchor = recs[order[0]].phi;
        if (positive && anchor <= 0.0) anchor += kTwoPi;
        if (!positive && anchor >= 0.0) anchor -= kTwoPi;
        recs[order[0]].phi = anchor;
        double prev = anchor;
        for (std::size_t k = 1; k < order.size(); ++k) {
            double p = recs[order[k]].phi;
            p += kTwoPi * std::round((prev - p) / kTwoPi);
            recs[order[k]].phi = p;
            prev = p;
        }
    };
    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < deltas.size(); ++k)
        (deltas[k] > 0.0 ? pos : neg).push_back(k);
    std::reverse(pos.begin(), pos.end()); // largest delta first, walk inward
    unwrap_group(pos, true);              // negatives already start far out
    unwrap_group(neg, false);
    return recs;
}

std::vector<FidelityPoint> fidelity_sweep(const std::vector<double>& deltas,
                                          const ExperimentConfig& cfg) {
    require_increasing(deltas, "detuning");
    validate(cfg);
    std::vector<FidelityPoint> out(deltas.size());
    parallel_for(
        deltas.size(),
        [&](std::size_t k) {
            double acc = 0.0;
            for (PrepLabel p : kAllPreps) {
                const TomographyRecord r = zgate_tomography(deltas[k], p, cfg);
                const Eigen::Matrix2cd rho1 =
                    reconstruct_qubit_dm(r.exp_x, r.exp_y, r.exp_z, r.leakage);
                const Eigen::Matrix2cd rho2 = theory_qubit_state(deltas[k], p, cfg);
                acc += uhlmann_fidelity(rho1, rho2);
            }
            out[k] = {deltas[k], acc / static_cast<double>(kAllPreps.size())};
        },
        cfg.parallelism);
    return out;
}

std::vector<double> default_curve_deltas(const ExperimentConfig& cfg,
                                         bool exclude_zero) {
    const long kmax = static_cast<long>(
        std::floor(cfg.grids.curve_max / cfg.grids.curve_step + 1e-9));
    std::vector<double> v;
    for (long k = -kmax; k <= kmax; ++k) {
        if (k == 0 && exclude_zero) continue;
        v.push_back(static_cast<double>(k) * cfg.grids.curve_step);
    }
    return v;
}

double area_matched_amplitude(const PulseSpec& spec, int n) {
    if (n < 1) throw std::invalid_argument("area_matched_amplitude: n must be >= 1");
    PulseSpec unit = spec;
    unit.omega0 = 1.0;
    unit.bit_depth = 0;
    const double area = pulse_area(unit);
    if (!(area > 0.0))
        throw std::runtime_error("area_matched_amplitude: zero envelope area");
    return kTwoPi * static_cast<double>(n) / area;
}

double calibrate_amplitude(Shape shape, const PulseSpec& ref, int n,
                           const TransmonParams& model,
                           const EvolutionConfig& evo) {
    if (n < 1) throw std::invalid_argument("calibrate_amplitude: n must be >= 1");
    if (shape == Shape::Sech) return sech_cyclic_amplitude(n, ref.rho);

    PulseSpec base = ref;
    base.shape = shape;
    const double seed = area_matched_amplitude(base, n);
    TransmonParams m = model;
    m.delta = 0.0;
    // +/-15% bracket: adjacent return valleys sit >= 33% apart for n <= 3, so
    // exactly one valley falls inside.
    const int npts = 81;
    std::vector<double> amps(npts), probs(npts);
    for (int i = 0; i < npts; ++i) {
        amps[i] = seed * (0.85 + 0.30 * static_cast<double>(i) /
                                     static_cast<double>(npts - 1));
        PulseSpec p = base;
        p.omega0 = amps[i];
        QuantumState s = initial_thermal_state(0.0, m.n_levels);
        s = enter_drive_frame(s);
        s = evolve(s, sample_waveform(p), m, evo);
        probs[i] = 1.0 - s.rho(0, 0).real();
    }
    return find_cyclic_amplitude(amps, probs, amps.front(), amps.back()).amplitude;
}

} // namespace sechsim
