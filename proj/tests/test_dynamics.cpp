#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "gbbm/dynamics.hpp"
#include "gbbm/errors.hpp"
#include "gbbm/gevrey.hpp"
#include "gbbm/rng.hpp"
#include "oracles.hpp"

using namespace gbbm;
constexpr double kPi = std::numbers::pi;

namespace {

SpectralField random_band(const GridPtr& g, int kmax, double scale, Rng& rng) {
    SpectralField s(g);
    s.coeffs[0] = scale * rng.uniform(-1.0, 1.0);
    for (int k = 1; k <= kmax; ++k)
        s.coeffs[k] = scale * cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return s;
}

SpectralField cos_mode(const GridPtr& g, int k, double amp) {
    SpectralField f(g);
    f.set_mode(k, 0.5 * amp);
    return f;
}

double h2_diff(const SpectralField& a, const SpectralField& b) { return sobolev_norm(a - b, 2.0); }

// m-th x-derivative of a full-lattice spectrum evaluated at the grid points.
std::vector<double> eval_derivative(const oracle::Spectrum& s, double L, int m) {
    std::vector<double> out(s.n, 0.0);
    for (int j = 0; j < s.n; ++j) {
        const double x = j * L / s.n;
        cplx sum{};
        for (int k = s.lo(); k < s.hi(); ++k) {
            const double xi = 2 * kPi * k / L;
            sum += std::pow(cplx{0.0, xi}, m) * s.at(k) * std::exp(cplx{0.0, xi * x});
        }
        out[j] = sum.real();
    }
    return out;
}

oracle::Spectrum to_oracle(const SpectralField& f) {
    oracle::Spectrum s(f.grid->n());
    for (int k = s.lo(); k <= s.hi(); ++k) s.at(k) = f.coeff(k);
    return s;
}

}  // namespace

TEST_CASE("nonlinearity of cos x") {
    const auto g = Grid::make(32, 2 * kPi);
    const Parameters p = Parameters::defaults();
    const SpectralField F = nonlinearity(cos_mode(g, 1, 1.0), p);
    // Coefficients are half the cosine amplitudes.
    CHECK(F.coeff(1).real() == doctest::Approx(-1.0 / 64).epsilon(1e-14));
    CHECK(F.coeff(2).real() == doctest::Approx(0.5 * (1.0 / 126 + 1.0 / 144)).epsilon(1e-14));
    CHECK(F.coeff(3).real() == doctest::Approx(-0.5 * 3.0 / 2912).epsilon(1e-14));
    CHECK(std::abs(F.coeff(0)) < 1e-16);
    for (int k = 1; k <= 16; ++k) CHECK(std::abs(F.coeff(k).imag()) < 1e-16);
    for (int k = 4; k <= 16; ++k) CHECK(std::abs(F.coeff(k)) < 1e-16);
}

TEST_CASE("nonlinearity of zero and single-mode support") {
    const auto g = Grid::make(64, 2 * kPi);
    const Parameters p = Parameters::defaults();
    const SpectralField F0 = nonlinearity(SpectralField(g), p);
    for (const auto& c : F0.coeffs) CHECK(c == cplx{});

    const SpectralField sq = square(cos_mode(g, 5, 0.7));
    for (int k = 0; k <= 32; ++k) {
        if (k == 0 || k == 10) CHECK(std::abs(sq.coeff(k)) > 0.0);
        else CHECK(std::abs(sq.coeff(k)) < 1e-16);
    }
}

TEST_CASE("gamma_x scales only the gradient-squared term") {
    const auto g = Grid::make(32, 2 * kPi);
    Parameters p = Parameters::defaults();
    const SpectralField eta = cos_mode(g, 1, 1.0);
    const SpectralField base = nonlinearity(eta, p);
    p.gamma_x = 0.0;
    const SpectralField no_grad = nonlinearity(eta, p);
    // The gradient term only contributes (7/48)·ψ(2)·½ cos 2x.
    CHECK((base.coeff(2) - no_grad.coeff(2)).real() == doctest::Approx(0.5 / 144).epsilon(1e-13));
    CHECK(std::abs(base.coeff(1) - no_grad.coeff(1)) < 1e-16);
}

TEST_CASE("semigroup") {
    const auto g = Grid::make(64, 2 * kPi);
    const Parameters p = Parameters::defaults();
    Rng rng(1);
    const SpectralField f = random_band(g, 31, 1.0, rng);

    const SpectralField id = semigroup(f, 0.0, p);
    CHECK(id.coeffs == f.coeffs);

    for (double dt : {0.1, 3.7, -12.0}) {
        const SpectralField e = semigroup(f, dt, p);
        for (int k = 0; k < g->half(); ++k)
            CHECK(std::abs(e.coeffs[k]) == doctest::Approx(std::abs(f.coeffs[k])).epsilon(1e-14));
        CHECK(gevrey_norm(e, {0.3, 2.0}) == doctest::Approx(gevrey_norm(f, {0.3, 2.0})).epsilon(1e-12));
        const SpectralField back = semigroup(e, -dt, p);
        CHECK(h2_diff(back, f) <= 1e-12 * sobolev_norm(f, 2.0));
    }
}

TEST_CASE("existence time") {
    CHECK(existence_time(0.0) == 0.5);
    CHECK(existence_time(1.0) == 0.125);
    CHECK(existence_time(0.0, 2.0) == 2.0);
    CHECK(existence_time(3.0) == doctest::Approx(existence_time(1.0) / 4));
    CHECK(existence_time(2.0) < existence_time(1.5));
    CHECK_THROWS_AS((void)existence_time(-1.0), ContractError);
}

TEST_CASE("stepper config validation") {
    StepperConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ContractError);
    cfg = {};
    cfg.picard_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ContractError);
    cfg = {};
    cfg.picard_max_iter = 0;
    CHECK_THROWS_AS(cfg.validate(), ContractError);
}

TEST_CASE("time derivative satisfies the equation in physical space") {
    // ∂ₜη from a symmetric difference of two tiny steps, checked against the equation
    // written with x-derivatives evaluated pointwise from the full lattice.
    const double L = 2 * kPi;
    const auto g = Grid::make(64, L);
    Parameters p;
    p.gamma1 = 1.3;
    p.gamma2 = 0.7;
    p.delta1 = 0.9;
    p.delta2 = 1.1;
    p.gamma = 0.2;
    p.gamma_x = 0.05;
    Rng rng(12);
    SpectralField eta = random_band(g, 5, 0.3, rng);
    eta.coeffs[0] = 0.1;

    const double h = 1e-4;
    const SpectralField fwd = ifrk4_step(eta, h, p);
    const SpectralField bwd = ifrk4_step(eta, -h, p);
    const SpectralField eta_t = (1.0 / (2 * h)) * (fwd - bwd);

    const auto E = to_oracle(eta);
    const auto Et = to_oracle(eta_t);
    const auto u = eval_derivative(E, L, 0);
    const auto ux = eval_derivative(E, L, 1);
    const auto uxx = eval_derivative(E, L, 2);
    const auto uxxx = eval_derivative(E, L, 3);
    const auto u5 = eval_derivative(E, L, 5);
    const auto ut = eval_derivative(Et, L, 0);
    const auto utxx = eval_derivative(Et, L, 2);
    const auto utxxxx = eval_derivative(Et, L, 4);

    double worst = 0.0;
    double scale = 0.0;
    for (int j = 0; j < g->n(); ++j) {
        // (η²)_x, (η²)_xxx, (η_x²)_x, (η³)_x by the product rule.
        const double sq_x = 2 * u[j] * ux[j];
        const double sq_xxx = 2 * u[j] * uxxx[j] + 6 * ux[j] * uxx[j];
        const double grad_x = 2 * ux[j] * uxx[j];
        const double cube_x = 3 * u[j] * u[j] * ux[j];
        const double lhs = ut[j] + ux[j] - p.gamma1 * utxx[j] + p.gamma2 * uxxx[j] + p.delta1 * utxxxx[j] +
                           p.delta2 * u5[j];
        const double rhs = -0.75 * sq_x - p.gamma * sq_xxx + p.gamma_x * grad_x + 0.125 * cube_x;
        worst = std::max(worst, std::abs(lhs - rhs));
        scale = std::max(scale, std::abs(ut[j]) + std::abs(u5[j]));
    }
    CHECK(worst < 1e-7 * scale);
}

TEST_CASE("picard solve") {
    const auto g = Grid::make(64, 2 * kPi);
    const Parameters p = Parameters::defaults();
    StepperConfig cfg;
    cfg.dt = 1e-2;

    SUBCASE("zero data stays zero") {
        const PicardResult r = picard_solve({0.0, SpectralField(g), p}, 0.1, cfg);
        for (const auto& c : r.state.eta_hat.coeffs) CHECK(c == cplx{});
        CHECK(r.state.t == doctest::Approx(0.1));
    }
    SUBCASE("linear flow is the free evolution") {
        Rng rng(2);
        const SpectralField f = random_band(g, 10, 0.2, rng);
        cfg.nonlinear = false;
        const PicardResult r = picard_solve({0.0, f, p}, 0.3, cfg);
        CHECK(h2_diff(r.state.eta_hat, semigroup(f, 0.3, p)) < 1e-15);
    }
    SUBCASE("agrees with IFRK4 and contracts") {
        Rng rng(3);
        SpectralField f = random_band(g, 8, 1.0, rng);
        f *= 0.5 / gevrey_norm(f, {0.1, 2.0});
        const double T = existence_time(gevrey_norm(f, {0.1, 2.0}));
        const PicardResult r = picard_solve({0.0, f, p}, T, cfg);
        CHECK(r.max_ratio < 1.0);
        CHECK(r.iterations > 2);
        CHECK(r.node_times.size() == r.nodes.size());

        const int steps = static_cast<int>(r.node_times.size()) - 1;
        SpectralField rk = f;
        for (int i = 0; i < steps; ++i) rk = ifrk4_step(rk, T / steps, p);
        CHECK(h2_diff(rk, r.state.eta_hat) < 1e-8);

        // Local bound along the nodes, data with norm ≤ 1.
        const double n0 = gevrey_norm(f, {0.1, 2.0});
        REQUIRE(n0 <= 1.0);
        for (const auto& node : r.nodes) CHECK(gevrey_norm(node, {0.1, 2.0}) <= 2.0 * n0);
    }
    SUBCASE("too long an interval is reported") {
        Rng rng(4);
        const SpectralField f = random_band(g, 20, 3.0, rng);
        cfg.picard_max_iter = 30;
        CHECK_THROWS_AS((void)picard_solve({0.0, f, p}, 5.0, cfg), ConvergenceError);
    }
}

TEST_CASE("linear evolution preserves every coefficient modulus") {
    const auto g = Grid::make(64, 2 * kPi);
    const Parameters p = Parameters::defaults();
    Rng rng(5);
    const SpectralField f = random_band(g, 31, 1.0, rng);
    StepperConfig cfg;
    cfg.dt = 1e-2;
    cfg.nonlinear = false;
    const EvolutionState end = evolve({0.0, f, p}, 100.0, cfg, {});
    CHECK(end.t == 100.0);
    for (int k = 0; k < g->nyquist(); ++k)
        CHECK(std::abs(std::abs(end.eta_hat.coeffs[k]) - std::abs(f.coeffs[k])) <= 1e-12 * std::abs(f.coeffs[k]));
}

TEST_CASE("observers and guards") {
    const auto g = Grid::make(32, 2 * kPi);
    const Parameters p = Parameters::defaults();
    const SpectralField f = cos_mode(g, 1, 0.2);
    StepperConfig cfg;
    cfg.dt = 0.01;

    std::vector<double> times;
    const Observer obs = [&](const EvolutionState& s) { times.push_back(s.t); };
    EvolveOptions opts;
    opts.observer_interval = 0.25;
    (void)evolve({0.0, f, p}, 1.0, cfg, std::span(&obs, 1), opts);
    REQUIRE(times.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(times[i] == doctest::Approx(0.25 * i));

    CHECK_THROWS_AS((void)evolve({1.0, f, p}, 1.0, cfg, {}), ContractError);

    SpectralField bad = f;
    bad.coeffs[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS((void)evolve({0.0, bad, p}, 0.1, cfg, {}), BlowUpError);

    opts.blowup_factor = 0.5;
    CHECK_THROWS_AS((void)evolve({0.0, f, p}, 0.1, cfg, {}, opts), BlowUpError);
}

TEST_CASE("fourth-order self-convergence") {
    const auto g = Grid::make(64, 2 * kPi);
    const Parameters p = Parameters::defaults();
    SpectralField f = cos_mode(g, 1, 0.8);
    f.set_mode(2, 0.3);
    const double dt = 0.1;
    auto run = [&](double h) {
        StepperConfig cfg;
        cfg.dt = h;
        return evolve({0.0, f, p}, 1.0, cfg, {}).eta_hat;
    };
    const SpectralField ref = run(dt / 8);
    const double e1 = h2_diff(run(dt), ref);
    const double e2 = h2_diff(run(dt / 2), ref);
    CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("picard scheme inside evolve") {
    const auto g = Grid::make(32, 2 * kPi);
    const Parameters p = Parameters::defaults();
    const SpectralField f = cos_mode(g, 2, 0.1);
    StepperConfig a;
    a.dt = 0.01;
    StepperConfig b = a;
    b.scheme = Scheme::PicardIteration;
    const auto ea = evolve({0.0, f, p}, 0.5, a, {});
    const auto eb = evolve({0.0, f, p}, 0.5, b, {});
    CHECK(h2_diff(ea.eta_hat, eb.eta_hat) < 1e-9);
}
