#include "gbbm/gevrey.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gbbm/errors.hpp"
#include "gbbm/rng.hpp"

namespace gbbm {

double gevrey_norm(const SpectralField& f, GevreyPair gp) {
    const Grid& g = *f.grid;
    check_overflow_guard(g, gp.sigma);
    const int nyq = g.nyquist();
    auto term = [&](int k) {
        const double xi = g.xi(k);
        const double w = std::exp(gp.sigma * std::abs(xi)) * std::pow(1.0 + xi * xi, 0.5 * gp.s);
        const double a = w * std::abs(f.coeffs[k]);
        return a * a;
    };
    double sum = term(0);
    for (int k = 1; k < nyq; ++k) sum += 2.0 * term(k);
    sum += term(nyq);
    return std::sqrt(g.length() * sum);
}

double check_embedding(const SpectralField& f, GevreyPair small, GevreyPair big) {
    if (!(small.sigma < big.sigma)) {
        throw ContractError("check_embedding requires sigma_small < sigma_big");
    }
    const double den = gevrey_norm(f, big);
    if (den == 0.0) return 0.0;
    return gevrey_norm(f, small) / den;
}

SpectralField poisson_kernel_spectrum(const GridPtr& grid, double sigma0, double amplitude) {
    if (!(sigma0 > 0.0)) throw ContractError("poisson kernel data needs sigma0 > 0");
    SpectralField out(grid);
    const double scale = 2.0 * std::numbers::pi / grid->length();
    for (int k = 0; k < grid->nyquist(); ++k) {
        const double decay = std::exp(-sigma0 * grid->xi(k));
        if (decay < kDataFloor) break;
        out.coeffs[k] = scale * amplitude * decay;
    }
    return out;
}

RealField poisson_kernel_data(const GridPtr& grid, double sigma0, double amplitude) {
    return inverse(poisson_kernel_spectrum(grid, sigma0, amplitude));
}

SpectralField gaussian_bump_spectrum(const GridPtr& grid, double amplitude, double width) {
    if (!(width > 0.0)) throw ContractError("gaussian bump width must be positive");
    RealField f(grid);
    const double centre = 0.5 * grid->length();
    for (int j = 0; j < grid->n(); ++j) {
        const double u = (grid->x(j) - centre) / width;
        f[j] = amplitude * std::exp(-u * u);
    }
    SpectralField out = forward(f);
    out.coeffs[grid->nyquist()] = cplx{};
    const double cutoff = kDataFloor * std::abs(out.coeffs[0]);
    for (auto& c : out.coeffs) {
        if (std::abs(c) < cutoff) c = cplx{};
    }
    return out;
}

SpectralField mode_sum_spectrum(const GridPtr& grid, double sigma0, double amplitude, int count,
                                std::uint64_t seed) {
    if (count < 1 || count >= grid->nyquist()) throw ContractError("mode_sum count out of range");
    Rng rng(seed);
    SpectralField out(grid);
    for (int k = 1; k <= count; ++k) {
        const double phase = 2.0 * std::numbers::pi * rng.uniform();
        out.coeffs[k] = std::polar(amplitude * std::exp(-sigma0 * grid->xi(k)), phase);
    }
    return out;
}

RadiusEstimate estimate_radius(const SpectralField& f, const RadiusFitOptions& opts) {
    const Grid& g = *f.grid;
    const int nyq = g.nyquist();
    double peak = 0.0;
    for (int k = 1; k < nyq; ++k) peak = std::max(peak, std::abs(f.coeffs[k]));
    if (peak == 0.0) throw InsufficientDataError("insufficient spectral decay data: zero spectrum");
    const double threshold = opts.floor * peak;

    int top = 0;
    while (top + 1 < nyq && std::abs(f.coeffs[top + 1]) > threshold) ++top;

    const int k_max = top - opts.guard_modes;
    const int k_min = std::max(1, static_cast<int>(std::ceil(opts.window_start * top)));
    const int count = k_max - k_min + 1;
    if (count < opts.min_modes) {
        throw InsufficientDataError("insufficient spectral decay data: " +
                                    std::to_string(std::max(count, 0)) + " usable modes");
    }

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int k = k_min; k <= k_max; ++k) {
        const double x = g.xi(k);
        const double y = std::log(std::abs(f.coeffs[k]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = count;
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / m;
    double rss = 0.0;
    for (int k = k_min; k <= k_max; ++k) {
        const double r = std::log(std::abs(f.coeffs[k])) - (intercept + slope * g.xi(k));
        rss += r * r;
    }

    RadiusEstimate est;
    est.sigma_hat = std::max(0.0, -slope);
    est.k_min = k_min;
    est.k_max = k_max;
    est.residual = std::sqrt(rss / m);
    est.floor_hit = count < opts.floor_hit_modes;
    return est;
}

}  // namespace gbbm
