#include "gbbm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gbbm/errors.hpp"
#include "gbbm/gevrey.hpp"

namespace gbbm {

void StepperConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ContractError("stepper dt must be > 0");
    if (!(picard_tol > 0.0)) throw ContractError("picard_tol must be > 0");
    if (picard_max_iter < 1) throw ContractError("picard_max_iter must be >= 1");
}

SpectralField nonlinearity(const SpectralField& eta_hat, const Parameters& p) {
    const SpectralField eta_x = derivative(eta_hat);
    const SpectralField quad = square(eta_hat);
    const SpectralField cub = cube(eta_hat);
    const SpectralField grad2 = square(eta_x);

    SpectralField out(eta_hat.grid);
    const Grid& g = *eta_hat.grid;
    for (int k = 0; k < g.half(); ++k) {
        const double xi = g.xi(k);
        const double tau = symbol(p, SymbolKind::Tau, xi);
        const double psi = symbol(p, SymbolKind::Psi, xi);
        out.coeffs[k] = tau * quad.coeffs[k] - 0.125 * psi * cub.coeffs[k] -
                        p.gamma_x * psi * grad2.coeffs[k];
    }
    out.enforce_reality();
    return out;
}

SpectralField semigroup(const SpectralField& eta_hat, double dt, const Parameters& p) {
    SpectralField out = eta_hat;
    if (dt == 0.0) return out;
    const Grid& g = *eta_hat.grid;
    for (int k = 0; k < g.half(); ++k) {
        const double phase = -dt * symbol(p, SymbolKind::Phi, g.xi(k));
        out.coeffs[k] *= cplx{std::cos(phase), std::sin(phase)};
    }
    out.enforce_reality();
    return out;
}

double existence_time(double norm_data, double c_T) {
    if (!(norm_data >= 0.0)) throw ContractError("existence_time needs a non-negative norm");
    const double r = 1.0 + norm_data;
    return c_T / (r * r);
}

namespace {

constexpr cplx kMinusI{0.0, -1.0};

// ∂ₜη̂ minus the linear part: −iF̂(η).
SpectralField forcing(const SpectralField& eta_hat, const Parameters& p) {
    return kMinusI * nonlinearity(eta_hat, p);
}

void clean(SpectralField& f) {
    f.coeffs[f.grid->nyquist()] = cplx{};
    f.enforce_reality();
}

}  // namespace

SpectralField ifrk4_step(const SpectralField& eta, double h, const Parameters& p, bool nonlinear) {
    if (!nonlinear) return semigroup(eta, h, p);
    const SpectralField k1 = forcing(eta, p);
    const SpectralField half_eta = semigroup(eta, 0.5 * h, p);
    const SpectralField k2 = forcing(semigroup(eta + (0.5 * h) * k1, 0.5 * h, p), p);
    const SpectralField k3 = forcing(half_eta + (0.5 * h) * k2, p);
    const SpectralField full_eta = semigroup(eta, h, p);
    const SpectralField k4 = forcing(full_eta + h * semigroup(k3, 0.5 * h, p), p);

    SpectralField incr = semigroup(k1, h, p);
    incr += 2.0 * semigroup(k2 + k3, 0.5 * h, p);
    incr += k4;
    SpectralField next = full_eta + (h / 6.0) * incr;
    clean(next);
    return next;
}

PicardResult picard_solve(const EvolutionState& state, double T_local, const StepperConfig& cfg) {
    cfg.validate();
    if (!(T_local > 0.0)) throw ContractError("picard_solve needs T_local > 0");
    const Parameters& p = state.params;

    int m = static_cast<int>(std::ceil(T_local / cfg.dt - 1e-9));
    m = std::max(2, m + (m % 2));
    const double h = T_local / m;

    PicardResult res;
    res.node_times.resize(m + 1);
    for (int j = 0; j <= m; ++j) res.node_times[j] = j * h;

    // Iterate 1: free evolution of the data.
    res.nodes.reserve(m + 1);
    for (int j = 0; j <= m; ++j) res.nodes.push_back(semigroup(state.eta_hat, res.node_times[j], p));
    res.iterations = 1;

    std::vector<SpectralField> integrand(m + 1);
    double prev_increment = -1.0;
    while (true) {
        if (res.iterations >= cfg.picard_max_iter) {
            ConvergenceError err("picard iteration did not converge within " +
                                 std::to_string(cfg.picard_max_iter) + " iterations");
            err.ratio = res.max_ratio;
            throw err;
        }
        // Interaction picture: g(t') = e^{it'φ}(−iF(η(t'))).
        for (int j = 0; j <= m; ++j) {
            integrand[j] = cfg.nonlinear
                               ? semigroup(forcing(res.nodes[j], p), -res.node_times[j], p)
                               : SpectralField(state.eta_hat.grid);
        }
        SpectralField running(state.eta_hat.grid);
        SpectralField at_even(state.eta_hat.grid);
        double increment = 0.0;
        std::vector<SpectralField> next(m + 1);
        next[0] = state.eta_hat;
        for (int j = 1; j <= m; ++j) {
            if (j % 2 == 1) {
                running = at_even + (h / 12.0) * (5.0 * integrand[j - 1] + 8.0 * integrand[j] -
                                                  integrand[j + 1]);
            } else {
                at_even += (h / 3.0) * (integrand[j - 2] + 4.0 * integrand[j - 1] + integrand[j]);
                running = at_even;
            }
            next[j] = semigroup(state.eta_hat + running, res.node_times[j], p);
            clean(next[j]);
            increment = std::max(increment, sobolev_norm(next[j] - res.nodes[j], 2.0));
        }
        res.nodes = std::move(next);
        ++res.iterations;
        res.increments.push_back(increment);

        if (!std::isfinite(increment)) {
            ConvergenceError err("picard iteration produced non-finite values");
            err.ratio = res.max_ratio;
            throw err;
        }
        if (increment < cfg.picard_tol) break;
        if (prev_increment > 0.0) {
            const double ratio = increment / prev_increment;
            res.max_ratio = std::max(res.max_ratio, ratio);
            if (ratio >= 1.0) {
                std::ostringstream msg;
                msg << "picard map is not contracting (increment ratio " << ratio
                    << "); T_local=" << T_local << " is too large";
                ConvergenceError err(msg.str());
                err.ratio = ratio;
                throw err;
            }
        }
        prev_increment = increment;
    }

    res.state = state;
    res.state.t = state.t + T_local;
    res.state.eta_hat = res.nodes.back();
    return res;
}

EvolutionState evolve(EvolutionState state, double t_end, const StepperConfig& cfg,
                      std::span<const Observer> observers, const EvolveOptions& opts) {
    cfg.validate();
    if (!(t_end > state.t)) throw ContractError("evolve needs t_end > t");
    const Parameters& p = state.params;
    const double t0 = state.t;
    const double span = t_end - t0;
    const int steps = std::max(1, static_cast<int>(std::ceil(span / cfg.dt - 1e-9)));
    const double h = span / steps;
    const int every = opts.observer_interval > 0.0
                          ? std::max(1, static_cast<int>(std::lround(opts.observer_interval / h)))
                          : steps;
    const double h2_initial = sobolev_norm(state.eta_hat, 2.0);

    auto notify = [&] {
        for (const auto& obs : observers) obs(state);
    };
    clean(state.eta_hat);
    notify();

    StepperConfig seg = cfg;
    seg.dt = h;
    for (int i = 1; i <= steps; ++i) {
        if (cfg.scheme == Scheme::ExponentialRK4) {
            state.eta_hat = ifrk4_step(state.eta_hat, h, p, cfg.nonlinear);
        } else {
            EvolutionState local = state;
            local.t = 0.0;
            state.eta_hat = picard_solve(local, h, seg).state.eta_hat;
        }
        state.t = i == steps ? t_end : t0 + i * h;

        if (!state.eta_hat.all_finite()) {
            BlowUpError err("non-finite coefficients at t=" + std::to_string(state.t));
            err.t = state.t;
            throw err;
        }
        if (h2_initial > 0.0) {
            const double h2 = sobolev_norm(state.eta_hat, 2.0);
            if (h2 > opts.blowup_factor * h2_initial) {
                std::ostringstream msg;
                msg << "blow-up guard tripped at t=" << state.t << ": H2 norm " << h2 << " exceeds "
                    << opts.blowup_factor << " x initial " << h2_initial;
                BlowUpError err(msg.str());
                err.t = state.t;
                throw err;
            }
        }
        if (i % every == 0 || i == steps) notify();
    }
    return state;
}

}  // namespace gbbm
