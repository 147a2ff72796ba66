#include "gbbm/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "gbbm/conservation.hpp"
#include "gbbm/errors.hpp"

namespace gbbm {

void RunConfig::validate() const {
    params.validate();
    stepper.validate();
    if (n_modes < 8 || n_modes % 2 != 0) throw ContractError("n_modes must be even and >= 8");
    if (!(length > 0.0)) throw ContractError("grid length must be positive");
    if (!(t_end > 0.0)) throw ContractError("t_end must be positive");
    if (!(observer_interval > 0.0)) throw ContractError("observer_interval must be positive");
    if (data.kind != DataKind::GaussianBump && !(data.sigma0 > 0.0)) {
        throw ContractError("data sigma0 must be positive");
    }
    if (data.kind == DataKind::GaussianBump && !(data.width > 0.0)) {
        throw ContractError("gaussian width must be positive");
    }
    if (sigma_grid.empty()) throw ContractError("sigma_grid must not be empty");
    for (double s : sigma_grid) {
        if (!(s > 0.0) || s > data.sigma0) {
            throw ContractError("sigma_grid entries must lie in (0, sigma0]");
        }
    }
    if (!(continuation_c > 0.0)) throw ContractError("continuation_c must be positive");
    if (!(existence_constant > 0.0)) throw ContractError("existence_constant must be positive");
    if (!(tail_fraction > 0.0 && tail_fraction < 1.0)) throw ContractError("tail_fraction must be in (0,1)");
    if (min_tail_samples < 2) throw ContractError("min_tail_samples must be >= 2");
}

GridPtr make_grid(const RunConfig& cfg) { return Grid::make(cfg.n_modes, cfg.length); }

SpectralField initial_data(const RunConfig& cfg, const GridPtr& grid) {
    const DataSpec& d = cfg.data;
    switch (d.kind) {
        case DataKind::PoissonKernel: return poisson_kernel_spectrum(grid, d.sigma0, d.amplitude);
        case DataKind::GaussianBump: return gaussian_bump_spectrum(grid, d.amplitude, d.width);
        case DataKind::ModeSum: return mode_sum_spectrum(grid, d.sigma0, d.amplitude, d.modes, d.seed);
    }
    throw ContractError("unknown data kind");
}

TrajectoryRow observe(const EvolutionState& s, const std::vector<double>& sigma_grid,
                      const RadiusFitOptions& fit) {
    TrajectoryRow row;
    row.t = s.t;
    try {
        row.radius = estimate_radius(s.eta_hat, fit);
    } catch (const InsufficientDataError&) {
        row.radius = RadiusEstimate{};
        row.radius.floor_hit = true;
    }
    row.energy = energy(s.eta_hat, s.params);
    row.h2_norm = sobolev_norm(s.eta_hat, 2.0);
    for (double sigma : sigma_grid) row.modified_energy.push_back(modified_energy(s.eta_hat, sigma, s.params));
    const double sigma_cap = kMaxExponent / s.eta_hat.grid->xi_max();
    row.gevrey_norm_sigma_hat = gevrey_norm(s.eta_hat, {std::min(row.radius.sigma_hat, sigma_cap), 2.0});
    return row;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_csv(std::ostream& os, const RadiusTrajectory& traj) {
    os << "# gbbm radius trajectory, schema_version=" << kCsvSchemaVersion << '\n';
    os << "# schema_version,t,sigma_hat,fit_kmin,fit_kmax,fit_residual,floor_hit,energy,h2_norm";
    for (double s : traj.sigma_grid) os << ",modified_energy_sigma_" << fmt(s);
    os << ",gevrey_norm_sigma_hat\n";
    for (const auto& r : traj.rows) {
        os << kCsvSchemaVersion << ',' << fmt(r.t) << ',' << fmt(r.radius.sigma_hat) << ','
           << r.radius.k_min << ',' << r.radius.k_max << ',' << fmt(r.radius.residual) << ','
           << (r.radius.floor_hit ? 1 : 0) << ',' << fmt(r.energy) << ',' << fmt(r.h2_norm);
        for (double e : r.modified_energy) os << ',' << fmt(e);
        os << ',' << fmt(r.gevrey_norm_sigma_hat) << '\n';
    }
}

SimulationResult simulate(const RunConfig& cfg) {
    cfg.validate();
    const GridPtr grid = make_grid(cfg);
    EvolutionState state{0.0, initial_data(cfg, grid), cfg.params};

    SimulationResult res;
    res.trajectory.sigma_grid = cfg.sigma_grid;
    const Observer record = [&](const EvolutionState& s) {
        res.trajectory.rows.push_back(observe(s, cfg.sigma_grid, cfg.radius));
    };
    EvolveOptions opts;
    opts.observer_interval = cfg.observer_interval;
    opts.blowup_factor = cfg.blowup_factor;
    res.final_state = evolve(std::move(state), cfg.t_end, cfg.stepper, std::span(&record, 1), opts);
    return res;
}

ContinuationResult continuation_run(const RunConfig& cfg, double T_star) {
    cfg.validate();
    if (!(T_star > 0.0)) throw ContractError("T_star must be positive");
    const GridPtr grid = make_grid(cfg);
    EvolutionState state{0.0, initial_data(cfg, grid), cfg.params};

    ContinuationResult res;
    res.sigma = std::min(cfg.data.sigma0, cfg.continuation_c / T_star);
    const double reference = modified_energy(state.eta_hat, cfg.data.sigma0, cfg.params);
    EvolveOptions opts;
    opts.blowup_factor = cfg.blowup_factor;

    while (state.t < T_star) {
        const double local = existence_time(gevrey_norm(state.eta_hat, {res.sigma, 2.0}),
                                            cfg.existence_constant);
        double seg = std::max(local, cfg.stepper.dt);
        // Avoid a sliver of a final segment.
        if (state.t + seg > T_star || T_star - (state.t + seg) < 1e-9 * T_star) seg = T_star - state.t;
        const double t_next = state.t + seg;
        state = evolve(std::move(state), t_next, cfg.stepper, {}, opts);
        state.t = t_next;
        ++res.segments;

        const double e = modified_energy(state.eta_hat, res.sigma, cfg.params);
        const double ratio = reference > 0.0 ? e / reference : 0.0;
        res.max_ratio = std::max(res.max_ratio, ratio);
        if (res.keybound_ok && e > 2.0 * reference) {
            res.keybound_ok = false;
            res.fail_time = state.t;
        }
    }
    return res;
}

DecayLawResult decay_law_experiment(const RunConfig& cfg) {
    DecayLawResult res;
    res.trajectory = simulate(cfg).trajectory;

    const double t_tail = cfg.tail_fraction * cfg.t_end;
    int floor_hits = 0;
    int total = 0;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    res.inf_t_sigma = std::numeric_limits<double>::infinity();
    for (const auto& row : res.trajectory.rows) {
        if (row.t < t_tail || row.t <= 0.0) continue;
        ++total;
        if (row.radius.floor_hit) {
            ++floor_hits;
            continue;
        }
        res.inf_t_sigma = std::min(res.inf_t_sigma, row.t * row.radius.sigma_hat);
        if (row.radius.sigma_hat <= 0.0) continue;
        const double x = std::log(row.t);
        const double y = std::log(row.radius.sigma_hat);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++res.tail_samples;
    }
    if (2 * floor_hits > total) {
        throw InsufficientDataError("radius fit hit the noise floor on " + std::to_string(floor_hits) +
                                    " of " + std::to_string(total) +
                                    " tail samples; increase n_modes");
    }
    if (res.tail_samples < cfg.min_tail_samples) {
        throw InsufficientDataError("only " + std::to_string(res.tail_samples) +
                                    " usable samples with t >= " + std::to_string(t_tail) +
                                    "; need " + std::to_string(cfg.min_tail_samples));
    }
    const double m = res.tail_samples;
    const double den = m * sxx - sx * sx;
    res.exponent_hat = den > 0.0 ? (m * sxy - sx * sy) / den : 0.0;
    res.c_hat = std::exp((sy - res.exponent_hat * sx) / m);
    return res;
}

std::string to_string(DataKind k) {
    switch (k) {
        case DataKind::PoissonKernel: return "poisson_kernel";
        case DataKind::GaussianBump: return "gaussian_bump";
        case DataKind::ModeSum: return "mode_sum";
    }
    return "?";
}

DataKind data_kind_from_string(const std::string& s) {
    if (s == "poisson_kernel") return DataKind::PoissonKernel;
    if (s == "gaussian_bump") return DataKind::GaussianBump;
    if (s == "mode_sum") return DataKind::ModeSum;
    throw ContractError("unknown data kind '" + s + "'");
}

std::string to_string(Scheme s) {
    return s == Scheme::ExponentialRK4 ? "ExponentialRK4" : "PicardIteration";
}

Scheme scheme_from_string(const std::string& s) {
    if (s == "ExponentialRK4") return Scheme::ExponentialRK4;
    if (s == "PicardIteration") return Scheme::PicardIteration;
    throw ContractError("unknown scheme '" + s + "'");
}

void write_metadata(std::ostream& os, const EvolutionState& s, const RunConfig& cfg) {
    const Parameters& p = s.params;
    os << "t = " << fmt(s.t) << '\n'
       << "gamma1 = " << fmt(p.gamma1) << '\n'
       << "gamma2 = " << fmt(p.gamma2) << '\n'
       << "delta1 = " << fmt(p.delta1) << '\n'
       << "delta2 = " << fmt(p.delta2) << '\n'
       << "gamma = " << fmt(p.gamma) << '\n'
       << "gamma_x = " << fmt(p.gamma_x) << '\n'
       << "dt = " << fmt(cfg.stepper.dt) << '\n'
       << "scheme = " << to_string(cfg.stepper.scheme) << '\n'
       << "picard_tol = " << fmt(cfg.stepper.picard_tol) << '\n'
       << "picard_max_iter = " << cfg.stepper.picard_max_iter << '\n'
       << "nonlinear = " << (cfg.stepper.nonlinear ? "true" : "false") << '\n';
}

}  // namespace gbbm
