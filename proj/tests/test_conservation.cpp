#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gbbm/conservation.hpp"
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

oracle::Spectrum to_oracle(const SpectralField& f) {
    oracle::Spectrum s(f.grid->n());
    for (int k = s.lo(); k <= s.hi(); ++k) s.at(k) = f.coeff(k);
    return s;
}

}  // namespace

TEST_CASE("energy") {
    const auto g = Grid::make(32, 2 * kPi);
    const Parameters p = Parameters::defaults();
    CHECK(energy(cos_mode(g, 1, 1.0), p) == doctest::Approx(1.5 * kPi).epsilon(1e-14));
    // (πA²/2)(1 + k² + k⁴) for A = 0.4, k = 3.
    CHECK(energy(cos_mode(g, 3, 0.4), p) == doctest::Approx(kPi * 0.16 / 2 * 91).epsilon(1e-14));
    CHECK(energy(SpectralField(g), p) == 0.0);

    Rng rng(1);
    const SpectralField f = random_band(g, 15, 1.0, rng);
    CHECK(energy(2.5 * f, p) == doctest::Approx(6.25 * energy(f, p)).epsilon(1e-14));

    // Physical-space integral by the rectangle rule, exact for band-limited integrands.
    const RealField u = inverse(f);
    const RealField ux = inverse(derivative(f));
    const RealField uxx = inverse(derivative(f, 2));
    double direct = 0.0;
    for (int j = 0; j < g->n(); ++j) direct += u[j] * u[j] + ux[j] * ux[j] + uxx[j] * uxx[j];
    direct *= 0.5 * g->dx();
    CHECK(energy(f, p) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("modified energy") {
    const auto g = Grid::make(32, 2 * kPi);
    const Parameters p = Parameters::defaults();
    const SpectralField c1 = cos_mode(g, 1, 1.0);
    CHECK(modified_energy(c1, 0.2, p) == doctest::Approx(std::exp(0.4) * 1.5 * kPi).epsilon(1e-14));
    CHECK(modified_energy(c1, 0.2, p) == doctest::Approx(7.0302).epsilon(1e-4));

    Rng rng(2);
    const SpectralField f = random_band(g, 15, 1.0, rng);
    CHECK(modified_energy(f, 0.0, p) == energy(f, p));
    double prev = 0.0;
    for (double s : {0.0, 0.1, 0.3, 1.0}) {
        const double e = modified_energy(f, s, p);
        CHECK(e >= prev);
        prev = e;
        // ϕ(ξ)/⟨ξ⟩⁴ lies in [3/4, 1] for the default constants.
        const double h2 = sobolev_norm(lambda_sigma(f, s), 2.0);
        CHECK(e >= 0.375 * h2 * h2 * (1 - 1e-14));
        CHECK(e <= 0.5 * h2 * h2 * (1 + 1e-14));
    }
}

TEST_CASE("remainder pieces of cos x") {
    const auto g = Grid::make(32, 2 * kPi);
    const Parameters p = Parameters::defaults();
    for (double sigma : {0.05, 0.3}) {
        const RemainderParts r = remainder_parts(cos_mode(g, 1, 1.0), sigma, p);
        const double c = (1 - std::exp(-2 * sigma)) / 2;
        CHECK(r.n1.coeff(0).real() == doctest::Approx(c).epsilon(1e-13));
        CHECK(std::abs(r.n1.coeff(2)) < 1e-16);
        CHECK(r.n2.coeff(0).real() == doctest::Approx(c).epsilon(1e-13));
        CHECK(std::abs(r.n2.coeff(2)) < 1e-16);
        // N₃ = ¾(1 − e^{−2σ}) cos x, so N = (3/32)(1 − e^{−2σ}) sin x.
        CHECK(r.n3.coeff(1).real() == doctest::Approx(0.375 * (1 - std::exp(-2 * sigma))).epsilon(1e-13));
        CHECK(std::abs(r.n3.coeff(3)) < 1e-16);
        CHECK(r.total.coeff(1).imag() == doctest::Approx(-0.125 * 0.375 * (1 - std::exp(-2 * sigma))).epsilon(1e-13));
        CHECK(std::abs(error_integral(cos_mode(g, 1, 1.0), sigma, p)) < 1e-16);
    }
}

TEST_CASE("remainder against the brute-force multiplier oracle") {
    const double L = 2 * kPi;
    const auto g = Grid::make(16, L);
    Parameters p = Parameters::defaults();
    p.gamma = 0.3;
    p.gamma_x = 0.1;
    Rng rng(3);
    const SpectralField v = random_band(g, 7, 1.0, rng);
    const double sigma = 0.17;
    const RemainderParts r = remainder_parts(v, sigma, p);
    const auto ov = to_oracle(v);
    const auto o1 = oracle::remainder_piece(ov, L, sigma, 1);
    const auto o2 = oracle::remainder_piece(ov, L, sigma, 2);
    const auto o3 = oracle::remainder_piece(ov, L, sigma, 3);
    double ip = 0.0;
    for (int k = -7; k <= 7; ++k) {
        CHECK(std::abs(r.n1.coeff(k) - o1.at(k)) < 1e-12);
        CHECK(std::abs(r.n2.coeff(k) - o2.at(k)) < 1e-11);
        CHECK(std::abs(r.n3.coeff(k) - o3.at(k)) < 1e-12);
        const double xi = g->xi(k);
        const cplx ixi{0.0, xi};
        const cplx total = (0.75 - p.gamma * xi * xi) * ixi * o1.at(k) - p.gamma_x * ixi * o2.at(k) -
                           0.125 * ixi * o3.at(k);
        CHECK(std::abs(r.total.coeff(k) - total) < 1e-10);
        const cplx term = std::conj(ov.at(k)) * total;
        ip += term.real();
    }
    CHECK(error_integral(v, sigma, p) == doctest::Approx(L * ip).epsilon(1e-10));
}

TEST_CASE("remainder vanishes at sigma zero") {
    const auto g = Grid::make(64, 2 * kPi);
    const Parameters p = Parameters::defaults();
    Rng rng(4);
    for (int i = 0; i < 10; ++i) {
        const SpectralField v = random_band(g, 31, 1.0, rng);
        const SpectralField N = remainder(v, 0.0, p);
        for (const auto& c : N.coeffs) CHECK(std::abs(c) < 1e-12);
        CHECK(std::abs(error_integral(v, 0.0, p)) < 1e-12);
    }
}

TEST_CASE("error integral is linear in small sigma") {
    const auto g = Grid::make(64, 64 * kPi);
    const Parameters p = Parameters::defaults();
    Rng rng(5);
    const SpectralField v = random_band(g, 4, 1.0, rng);
    const double base = error_integral(v, 1e-3, p) / 1e-3;
    REQUIRE(base != 0.0);
    for (double s : {1e-2, 1e-1}) CHECK(error_integral(v, s, p) / s == doctest::Approx(base).epsilon(0.05));
}

TEST_CASE("multiplier bounds") {
    const MultiplierSample p = p_bound_check(1.0, -1.0, 0.5);
    CHECK(p.value == doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-15));
    CHECK(p.value == doctest::Approx(0.632121).epsilon(1e-6));
    CHECK(p.bound == 1.0);
    CHECK(p.ok());

    const MultiplierSample q = q_bound_check(1.0, 1.0, -2.0, 0.25);
    CHECK(q.value == doctest::Approx(0.632121).epsilon(1e-6));
    CHECK(q.bound == 3.0);
    CHECK(q.ok());

    CHECK(p_bound_check(3.0, 7.5, 0.9).value == 0.0);
    CHECK(p_bound_check(-3.0, -7.5, 0.9).value == 0.0);
    CHECK(q_bound_check(1.0, 2.0, 3.0, 0.9).value == 0.0);

    // p_σ/σ → gap as σ → 0.
    CHECK(p_bound_check(4.0, -1.5, 1e-9).value / 1e-9 == doctest::Approx(3.0).epsilon(1e-8));

    CHECK(median_abs(-5.0, 1.0, 3.0) == 3.0);
    CHECK(median_abs(2.0, -2.0, 7.0) == 2.0);
    CHECK(median_abs(0.0, 0.0, -1.0) == 0.0);

    const MultiplierSweepResult ex = exhaustive_multiplier_sweep(12, {0.01, 0.1, 1.0});
    CHECK(ex.samples == 3 * (25 * 25 + 25 * 25 * 25));
    CHECK(ex.violations == 0);
    const MultiplierSweepResult rnd = random_multiplier_sweep(20000, 1e3, 1.0, 1);
    CHECK(rnd.samples == 40000);
    CHECK(rnd.violations == 0);
}

TEST_CASE("energy rate equals the error integral") {
    // Central differences of E_σ along an IFRK4 trajectory at dt = 1e-3.
    const auto g = Grid::make(64, 2 * kPi);
    const Parameters p = Parameters::defaults();
    Rng rng(6);
    const SpectralField eta0 = random_band(g, 6, 0.1, rng);
    const double sigma = 0.1;
    const double h = 1e-3;
    SpectralField eta = eta0;
    for (int i = 0; i < 200; ++i) eta = ifrk4_step(eta, h, p);
    const SpectralField ahead = ifrk4_step(eta, h, p);
    const SpectralField behind = ifrk4_step(eta, -h, p);
    const double rate = (modified_energy(ahead, sigma, p) - modified_energy(behind, sigma, p)) / (2 * h);
    const double predicted = error_integral(lambda_sigma(eta, sigma), sigma, p);
    REQUIRE(std::abs(predicted) > 0.0);
    CHECK(std::abs(rate - predicted) <= 1e-4 * std::abs(predicted));
}

TEST_CASE("almost conservation experiment") {
    const auto g = Grid::make(64, 2 * kPi);
    const Parameters p = Parameters::defaults();
    Rng rng(7);
    const SpectralField eta0 = random_band(g, 6, 0.1, rng);
    StepperConfig cfg;
    cfg.dt = 1e-2;

    const AlmostConservationResult zero = almost_conservation_experiment(eta0, 0.0, p, cfg, 1.0);
    CHECK(zero.sup_deviation < 1e-9 * energy(eta0, p));

    const AlmostConservationResult r = almost_conservation_experiment(eta0, 0.05, p, cfg, 1.0);
    CHECK(r.sup_deviation > 0.0);
    CHECK(r.identity_mismatch < 1e-6);
    CHECK(r.times.size() == r.deviations.size());
    CHECK(r.times.back() == doctest::Approx(1.0));
    const double e0 = modified_energy(eta0, 0.05, p);
    CHECK(r.predicted == doctest::Approx(0.05 * (1 + std::sqrt(e0)) * std::pow(e0, 1.5)));
    CHECK(r.sup_deviation < r.predicted);
}

TEST_CASE("energy report") {
    const auto g = Grid::make(32, 2 * kPi);
    const EvolutionState s{1.5, cos_mode(g, 1, 1.0), Parameters::defaults()};
    const EnergyReport rep = energy_report(s, 0.2);
    CHECK(rep.t == 1.5);
    CHECK(rep.energy == doctest::Approx(1.5 * kPi));
    CHECK(rep.modified_energy == doctest::Approx(std::exp(0.4) * 1.5 * kPi));
    CHECK(std::abs(rep.error_integral) < 1e-15);
    CHECK(rep.h2_norm_v == doctest::Approx(std::sqrt(2 * kPi * 2 * 0.25 * std::exp(0.4) * 4)));
}
