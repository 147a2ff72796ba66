#include "gbbm/verification.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <limits>
#include <numbers>
#include <sstream>

#include "gbbm/conservation.hpp"
#include "gbbm/dynamics.hpp"
#include "gbbm/errors.hpp"
#include "gbbm/gevrey.hpp"
#include "gbbm/tracker.hpp"

namespace gbbm {

SpectralField random_band_limited(const GridPtr& grid, int k_max, double h2_norm, Rng& rng) {
    if (k_max < 1 || k_max >= grid->nyquist()) throw ContractError("k_max out of range");
    SpectralField f(grid);
    f.coeffs[0] = rng.uniform(-1.0, 1.0);
    for (int k = 1; k <= k_max; ++k) f.coeffs[k] = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const double norm = sobolev_norm(f, 2.0);
    if (norm > 0.0) f *= h2_norm / norm;
    return f;
}

namespace {

GridPtr family_grid(const SampleFamily& fam) {
    return Grid::make(fam.n_modes, fam.length > 0.0 ? fam.length : 2.0 * std::numbers::pi);
}

double log_uniform(Rng& rng, double lo, double hi) {
    return std::exp(rng.uniform(std::log(lo), std::log(hi)));
}

void track(EmpiricalConstant& c, double ratio) {
    if (c.samples == 0) {
        c.max_ratio = c.min_ratio = ratio;
    } else {
        c.max_ratio = std::max(c.max_ratio, ratio);
        c.min_ratio = std::min(c.min_ratio, ratio);
    }
    ++c.samples;
}

}  // namespace

EmpiricalConstant nonlinear_estimate_constant(const Parameters& p, double sigma, double s, int samples,
                                              const SampleFamily& fam) {
    const GridPtr grid = family_grid(fam);
    Rng rng(fam.seed);
    EmpiricalConstant c;
    for (int i = 0; i < samples; ++i) {
        // Draw in H², then measure everything in G^{σ,s}.
        const SpectralField eta =
            random_band_limited(grid, fam.k_max, log_uniform(rng, fam.h2_min, fam.h2_max), rng);
        const double n = gevrey_norm(eta, {sigma, s});
        const double f = gevrey_norm(nonlinearity(eta, p), {sigma, s});
        track(c, f / ((1.0 + n) * n * n));
    }
    return c;
}

EmpiricalConstant error_estimate_ratio(const Parameters& p, double sigma, int samples,
                                       const SampleFamily& fam) {
    const GridPtr grid = family_grid(fam);
    Rng rng(fam.seed);
    EmpiricalConstant c;
    for (int i = 0; i < samples; ++i) {
        const SpectralField v =
            random_band_limited(grid, fam.k_max, log_uniform(rng, fam.h2_min, fam.h2_max), rng);
        const double h2 = sobolev_norm(v, 2.0);
        const double integral = error_integral(v, sigma, p);
        track(c, std::abs(integral) / (sigma * (1.0 + h2) * h2 * h2 * h2));
    }
    return c;
}

RemainderPieceConstants remainder_piece_constants(const Parameters& p, double sigma, int samples,
                                                  const SampleFamily& fam) {
    const GridPtr grid = family_grid(fam);
    Rng rng(fam.seed);
    RemainderPieceConstants c;
    for (int i = 0; i < samples; ++i) {
        const SpectralField v =
            random_band_limited(grid, fam.k_max, log_uniform(rng, fam.h2_min, fam.h2_max), rng);
        const double h2 = sobolev_norm(v, 2.0);
        const RemainderParts parts = remainder_parts(v, sigma, p);
        c.c1 = std::max(c.c1, l2_norm(derivative(parts.n1)) / (sigma * h2 * h2));
        c.c2 = std::max(c.c2, l2_norm(parts.n2) / (sigma * h2 * h2));
        c.c3 = std::max(c.c3, l2_norm(parts.n3) / (sigma * h2 * h2 * h2));
    }
    return c;
}

double error_integral_linearity(const Parameters& p, const std::vector<double>& sigmas, int samples,
                                const SampleFamily& fam) {
    const GridPtr grid = family_grid(fam);
    Rng rng(fam.seed);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const SpectralField v =
            random_band_limited(grid, fam.k_max, log_uniform(rng, fam.h2_min, fam.h2_max), rng);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (double sigma : sigmas) {
            const double r = error_integral(v, sigma, p) / sigma;
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        const double scale = std::max(std::abs(lo), std::abs(hi));
        if (scale > 0.0) worst = std::max(worst, (hi - lo) / scale);
    }
    return worst;
}

double remainder_at_zero(const Parameters& p, int samples, const SampleFamily& fam) {
    const GridPtr grid = family_grid(fam);
    Rng rng(fam.seed);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const SpectralField v =
            random_band_limited(grid, fam.k_max, log_uniform(rng, fam.h2_min, fam.h2_max), rng);
        const SpectralField n = remainder(v, 0.0, p);
        double peak = 0.0;
        for (const auto& c : n.coeffs) peak = std::max(peak, std::abs(c));
        worst = std::max(worst, peak / sobolev_norm(v, 2.0));
    }
    return worst;
}

}  // namespace gbbm

// ---------------------------------------------------------------------------
// Suite

namespace gbbm {

namespace {

bool within_factor_two(double measured, double pinned) {
    return measured <= 2.0 * pinned && measured >= 0.5 * pinned;
}

void print(std::ostream& out, const VerifyLine& l) {
    out << (l.pass ? "PASS " : "FAIL ") << std::left << std::setw(44) << l.name << std::right
        << std::scientific << std::setprecision(6) << std::setw(15) << l.value << "  thr "
        << std::setw(13) << l.threshold;
    if (!l.note.empty()) out << "  " << l.note;
    out << '\n' << std::defaultfloat;
}

}  // namespace

std::vector<VerifyLine> run_verify_suite(std::ostream& out) {
    std::vector<VerifyLine> lines;
    auto add = [&](VerifyLine l) {
        print(out, l);
        lines.push_back(std::move(l));
    };
    const Parameters p = Parameters::defaults();

    {
        const auto r = exhaustive_multiplier_sweep(40, {0.01, 0.1, 1.0});
        add({"multiplier bounds, integer sweep |xi|<=40", static_cast<double>(r.violations), 0.0,
             r.violations == 0, std::to_string(r.samples) + " samples"});
    }
    {
        const auto r = random_multiplier_sweep(1'000'000, 1e3, 1.0, 7);
        add({"multiplier bounds, 1e6 random samples", static_cast<double>(r.violations), 0.0,
             r.violations == 0, std::to_string(r.samples) + " samples"});
    }
    {
        const double v = remainder_at_zero(p, 100, estimate_family());
        add({"remainder(v, 0) max coefficient", v, 1e-12, v < 1e-12, ""});
    }
    {
        const double v = error_integral_linearity(p, {1e-3, 1e-2, 1e-1}, 100, linearity_family());
        add({"error_integral/sigma spread over sigma", v, 0.05, v < 0.05, ""});
    }
    {
        const auto c = error_estimate_ratio(p, kErrorEstimateSigma, 1000, estimate_family());
        add({"error estimate max ratio (sigma=0.1)", c.max_ratio, kPinnedErrorEstimateRatio,
             within_factor_two(c.max_ratio, kPinnedErrorEstimateRatio), "pinned, x2 band"});
    }
    for (const auto& pin : kPinnedNonlinearConstants) {
        const auto c = nonlinear_estimate_constant(p, pin.sigma, pin.s, 1000, estimate_family());
        std::ostringstream name;
        name << "nonlinear estimate C (sigma=" << pin.sigma << ", s=" << pin.s << ")";
        add({name.str(), c.max_ratio, pin.value, within_factor_two(c.max_ratio, pin.value),
             "pinned, x2 band"});
    }
    {
        const auto c = remainder_piece_constants(p, kRemainderPieceSigma, 1000, estimate_family());
        add({"|d/dx N1| / (sigma |v|^2)", c.c1, kPinnedRemainderPieces.c1,
             within_factor_two(c.c1, kPinnedRemainderPieces.c1), "pinned, x2 band"});
        add({"|N2| / (sigma |v|^2)", c.c2, kPinnedRemainderPieces.c2,
             within_factor_two(c.c2, kPinnedRemainderPieces.c2), "pinned, x2 band"});
        add({"|N3| / (sigma |v|^3)", c.c3, kPinnedRemainderPieces.c3,
             within_factor_two(c.c3, kPinnedRemainderPieces.c3), "pinned, x2 band"});
    }

    RunConfig run;
    run.n_modes = 256;
    run.length = 16.0 * std::numbers::pi;
    run.data = DataSpec{DataKind::PoissonKernel, 0.1, 0.5, 1, 2.0, 8};
    run.stepper.dt = 1e-2;
    run.t_end = 10.0;
    run.observer_interval = 1.0;
    run.sigma_grid = {0.25};
    {
        const auto sim = simulate(run);
        const double e0 = sim.trajectory.rows.front().energy;
        double drift = 0.0;
        for (const auto& row : sim.trajectory.rows) drift = std::max(drift, std::abs(row.energy - e0) / e0);
        add({"energy drift, gamma=7/48, t in [0,10]", drift, 1e-9, drift < 1e-9, ""});
    }
    {
        const double t_star = 20.0;
        double best = 0.0;
        for (double c : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
            run.continuation_c = c;
            if (continuation_run(run, t_star).keybound_ok) best = c;
        }
        std::ostringstream note;
        note << "largest c with E_sigma <= 2 E_sigma0 up to T*=" << t_star;
        add({"continuation constant", best, 0.0, best > 0.0, note.str()});
    }
    return lines;
}

}  // namespace gbbm
