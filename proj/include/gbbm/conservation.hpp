#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "gbbm/dynamics.hpp"
#include "gbbm/params.hpp"
#include "gbbm/spectral.hpp"

namespace gbbm {

struct EnergyReport {
    double t = 0.0;
    double energy = 0.0;
    double modified_energy = 0.0;
    double sigma = 0.0;
    double error_integral = 0.0;
    double h2_norm_v = 0.0;
};

/// E[η] = ½∫(η² + γ₁η_x² + δ₁η_xx²)dx = ½L Σ_k ϕ(ξ_k)|η̂_k|².
[[nodiscard]] double energy(const SpectralField& eta_hat, const Parameters& p);

/// E_σ[v] with v = Λ_σ η.
[[nodiscard]] double modified_energy(const SpectralField& eta_hat, double sigma, const Parameters& p);

struct RemainderParts {
    SpectralField n1;     // v² − Λ_σ[(Λ_{−σ}v)²]
    SpectralField n2;     // v_x² − Λ_σ[(Λ_{−σ}v_x)²]
    SpectralField n3;     // v³ − Λ_σ[(Λ_{−σ}v)³]
    SpectralField total;  // (¾ + γ∂ₓ²)∂ₓN₁ − γₓ∂ₓN₂ − ⅛∂ₓN₃
};

/// Commutator defect produced by moving Λ_σ through the nonlinearity.
[[nodiscard]] RemainderParts remainder_parts(const SpectralField& v_hat, double sigma, const Parameters& p);
[[nodiscard]] SpectralField remainder(const SpectralField& v_hat, double sigma, const Parameters& p);

/// ∫ v N(v) dx, the time derivative of E_σ along the flow (when γ = γₓ).
[[nodiscard]] double error_integral(const SpectralField& v_hat, double sigma, const Parameters& p);

[[nodiscard]] EnergyReport energy_report(const EvolutionState& s, double sigma);

/// One evaluation of p_σ or q_σ against its bound.
struct MultiplierSample {
    std::vector<double> frequencies;
    double sigma = 0.0;
    double value = 0.0;
    double bound = 0.0;

    [[nodiscard]] bool ok() const noexcept { return value >= 0.0 && value <= bound; }
};

/// p_σ(ξ₁,ξ₂) = 1 − exp(−σ[(|ξ₁|+|ξ₂|) − |ξ₁+ξ₂|]) against 2σ·min(|ξ₁|,|ξ₂|).
[[nodiscard]] MultiplierSample p_bound_check(double xi1, double xi2, double sigma);

/// q_σ(ξ₁,ξ₂,ξ₃) against 12σ·med(|ξ₁|,|ξ₂|,|ξ₃|).
[[nodiscard]] MultiplierSample q_bound_check(double xi1, double xi2, double xi3, double sigma);

/// Second smallest of |a|, |b|, |c|.
[[nodiscard]] double median_abs(double a, double b, double c) noexcept;

struct MultiplierSweepResult {
    std::int64_t samples = 0;
    std::int64_t violations = 0;
    std::vector<MultiplierSample> counterexamples;  // first few only
};

/// Every integer triple (ξ₁,ξ₂,ξ₃) with |ξ_j| ≤ max_abs, for each σ; checks both p and q.
[[nodiscard]] MultiplierSweepResult exhaustive_multiplier_sweep(int max_abs, const std::vector<double>& sigmas);

/// Uniform random frequencies in [−max_abs, max_abs] and σ in [0, max_sigma].
[[nodiscard]] MultiplierSweepResult random_multiplier_sweep(std::int64_t count, double max_abs,
                                                            double max_sigma, std::uint64_t seed);

struct AlmostConservationResult {
    double sup_deviation = 0.0;       // sup_t |E_σ[v(t)] − E_σ[v₀]|
    double predicted = 0.0;           // σ(1 + E_σ[v₀]^{1/2})E_σ[v₀]^{3/2}
    double identity_mismatch = 0.0;   // max_t |deviation − ∫₀ᵗ∫vN| / sup_deviation
    std::vector<double> times;
    std::vector<double> deviations;
    std::vector<double> integrated;   // ∫₀ᵗ error_integral ds by Simpson
};

/// Evolves η₀ over [0, T_span] with IFRK4 at cfg.dt, tracking E_σ and ∫vN(v) at every step.
[[nodiscard]] AlmostConservationResult almost_conservation_experiment(const SpectralField& eta0_hat,
                                                                      double sigma,
                                                                      const Parameters& p,
                                                                      const StepperConfig& cfg,
                                                                      double T_span);

}  // namespace gbbm
