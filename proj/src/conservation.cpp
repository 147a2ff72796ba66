#include "gbbm/conservation.hpp"

#include <algorithm>
#include <cmath>

#include "gbbm/errors.hpp"
#include "gbbm/gevrey.hpp"
#include "gbbm/rng.hpp"

namespace gbbm {

double energy(const SpectralField& eta_hat, const Parameters& p) {
    return 0.5 * eta_hat.grid->length() *
           weighted_sum(eta_hat, [&](double xi) { return varphi(p, xi); });
}

double modified_energy(const SpectralField& eta_hat, double sigma, const Parameters& p) {
    return energy(lambda_sigma(eta_hat, sigma), p);
}

RemainderParts remainder_parts(const SpectralField& v_hat, double sigma, const Parameters& p) {
    check_overflow_guard(*v_hat.grid, sigma);
    const SpectralField v_x = derivative(v_hat);
    const SpectralField eta = lambda_sigma(v_hat, -sigma);
    const SpectralField eta_x = lambda_sigma(v_x, -sigma);

    RemainderParts r;
    r.n1 = square(v_hat) - lambda_sigma(square(eta), sigma);
    r.n2 = square(v_x) - lambda_sigma(square(eta_x), sigma);
    r.n3 = cube(v_hat) - lambda_sigma(cube(eta), sigma);

    r.total = SpectralField(v_hat.grid);
    const Grid& g = *v_hat.grid;
    for (int k = 0; k < g.half(); ++k) {
        const double xi = g.xi(k);
        const cplx ixi{0.0, xi};
        r.total.coeffs[k] = (0.75 - p.gamma * xi * xi) * ixi * r.n1.coeffs[k] -
                            p.gamma_x * ixi * r.n2.coeffs[k] - 0.125 * ixi * r.n3.coeffs[k];
    }
    r.total.coeffs[g.nyquist()] = cplx{};
    r.total.enforce_reality();
    return r;
}

SpectralField remainder(const SpectralField& v_hat, double sigma, const Parameters& p) {
    return remainder_parts(v_hat, sigma, p).total;
}

double error_integral(const SpectralField& v_hat, double sigma, const Parameters& p) {
    // Half-spectrum storage pairs every mode with its conjugate, so the sum is real.
    return inner_product(v_hat, remainder(v_hat, sigma, p));
}

EnergyReport energy_report(const EvolutionState& s, double sigma) {
    const SpectralField v = lambda_sigma(s.eta_hat, sigma);
    EnergyReport rep;
    rep.t = s.t;
    rep.sigma = sigma;
    rep.energy = energy(s.eta_hat, s.params);
    rep.modified_energy = energy(v, s.params);
    rep.error_integral = error_integral(v, sigma, s.params);
    rep.h2_norm_v = sobolev_norm(v, 2.0);
    return rep;
}

// ---------------------------------------------------------------------------
// Multiplier bounds

double median_abs(double a, double b, double c) noexcept {
    a = std::abs(a);
    b = std::abs(b);
    c = std::abs(c);
    return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

MultiplierSample p_bound_check(double xi1, double xi2, double sigma) {
    const double gap = (std::abs(xi1) + std::abs(xi2)) - std::abs(xi1 + xi2);
    MultiplierSample s;
    s.frequencies = {xi1, xi2};
    s.sigma = sigma;
    s.value = -std::expm1(-sigma * gap);
    s.bound = 2.0 * sigma * std::min(std::abs(xi1), std::abs(xi2));
    return s;
}

MultiplierSample q_bound_check(double xi1, double xi2, double xi3, double sigma) {
    const double gap = (std::abs(xi1) + std::abs(xi2) + std::abs(xi3)) - std::abs(xi1 + xi2 + xi3);
    MultiplierSample s;
    s.frequencies = {xi1, xi2, xi3};
    s.sigma = sigma;
    s.value = -std::expm1(-sigma * gap);
    s.bound = 12.0 * sigma * median_abs(xi1, xi2, xi3);
    return s;
}

namespace {

constexpr std::size_t kMaxCounterexamples = 16;

void record(MultiplierSweepResult& r, MultiplierSample s) {
    ++r.samples;
    if (!s.ok()) {
        ++r.violations;
        if (r.counterexamples.size() < kMaxCounterexamples) r.counterexamples.push_back(std::move(s));
    }
}

}  // namespace

MultiplierSweepResult exhaustive_multiplier_sweep(int max_abs, const std::vector<double>& sigmas) {
    MultiplierSweepResult r;
    for (double sigma : sigmas) {
        for (int a = -max_abs; a <= max_abs; ++a) {
            for (int b = -max_abs; b <= max_abs; ++b) {
                record(r, p_bound_check(a, b, sigma));
                for (int c = -max_abs; c <= max_abs; ++c) record(r, q_bound_check(a, b, c, sigma));
            }
        }
    }
    return r;
}

MultiplierSweepResult random_multiplier_sweep(std::int64_t count, double max_abs, double max_sigma,
                                              std::uint64_t seed) {
    Rng rng(seed);
    MultiplierSweepResult r;
    for (std::int64_t i = 0; i < count; ++i) {
        const double sigma = rng.uniform(0.0, max_sigma);
        const double a = rng.uniform(-max_abs, max_abs);
        const double b = rng.uniform(-max_abs, max_abs);
        const double c = rng.uniform(-max_abs, max_abs);
        record(r, p_bound_check(a, b, sigma));
        record(r, q_bound_check(a, b, c, sigma));
    }
    return r;
}

// ---------------------------------------------------------------------------

AlmostConservationResult almost_conservation_experiment(const SpectralField& eta0_hat, double sigma,
                                                        const Parameters& p, const StepperConfig& cfg,
                                                        double T_span) {
    cfg.validate();
    if (!(T_span > 0.0)) throw ContractError("T_span must be positive");
    int steps = static_cast<int>(std::ceil(T_span / cfg.dt - 1e-9));
    steps = std::max(2, steps + (steps % 2));
    const double h = T_span / steps;

    AlmostConservationResult res;
    std::vector<double> rate;
    SpectralField eta = eta0_hat;
    double e0 = 0.0;
    for (int i = 0; i <= steps; ++i) {
        if (i > 0) eta = ifrk4_step(eta, h, p, cfg.nonlinear);
        const SpectralField v = lambda_sigma(eta, sigma);
        const double e = energy(v, p);
        if (i == 0) e0 = e;
        res.times.push_back(i * h);
        res.deviations.push_back(e - e0);
        rate.push_back(inner_product(v, remainder(v, sigma, p)));
    }

    // Cumulative Simpson on the uniform step grid; odd nodes use the quadratic through
    // the neighbouring triple.
    res.integrated.assign(steps + 1, 0.0);
    double at_even = 0.0;
    for (int j = 1; j <= steps; ++j) {
        if (j % 2 == 1) {
            res.integrated[j] = at_even + h / 12.0 * (5.0 * rate[j - 1] + 8.0 * rate[j] - rate[j + 1]);
        } else {
            at_even += h / 3.0 * (rate[j - 2] + 4.0 * rate[j - 1] + rate[j]);
            res.integrated[j] = at_even;
        }
    }

    double mismatch = 0.0;
    for (int j = 0; j <= steps; ++j) {
        res.sup_deviation = std::max(res.sup_deviation, std::abs(res.deviations[j]));
        mismatch = std::max(mismatch, std::abs(res.deviations[j] - res.integrated[j]));
    }
    res.identity_mismatch = res.sup_deviation > 0.0 ? mismatch / res.sup_deviation : mismatch;
    res.predicted = sigma * (1.0 + std::sqrt(e0)) * std::pow(e0, 1.5);
    return res;
}

}  // namespace gbbm
