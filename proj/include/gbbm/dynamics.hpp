#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gbbm/params.hpp"
#include "gbbm/spectral.hpp"

namespace gbbm {

struct EvolutionState {
    double t = 0.0;
    SpectralField eta_hat;
    Parameters params;
};

enum class Scheme { ExponentialRK4, PicardIteration };

struct StepperConfig {
    double dt = 1e-2;
    Scheme scheme = Scheme::ExponentialRK4;
    double picard_tol = 1e-12;
    int picard_max_iter = 60;
    /// false forces F ≡ 0 (pure linear flow), used for control runs.
    bool nonlinear = true;

    void validate() const;
};

/// F̂(η) = τ(ξ)·(η²)^ − ⅛ψ(ξ)·(η³)^ − γₓψ(ξ)·(η_x²)^ on the stored modes k ≥ 0.
///
/// The equation reads i∂ₜη̂ − φ(ξ)η̂ = F̂(η), so ∂ₜη̂ = −iφη̂ − iF̂.
[[nodiscard]] SpectralField nonlinearity(const SpectralField& eta_hat, const Parameters& p);

/// coeff(k) ↦ e^{−i·dt·φ(ξ_k)}·coeff(k), the free flow over time dt.
[[nodiscard]] SpectralField semigroup(const SpectralField& eta_hat, double dt, const Parameters& p);

/// c_T·(1 + norm)^{−2}.
inline constexpr double kDefaultExistenceConstant = 0.5;
[[nodiscard]] double existence_time(double norm_data, double c_T = kDefaultExistenceConstant);

struct PicardResult {
    EvolutionState state;            // η at t + T_local
    std::vector<double> node_times;  // quadrature nodes, relative to the start
    std::vector<SpectralField> nodes;
    int iterations = 0;
    double max_ratio = 0.0;          // largest ratio of successive H² increments
    std::vector<double> increments;
};

/// Fixed point of the Duhamel map
///   η(t) = e^{−itφ(D)}η₀ − i∫₀ᵗ e^{−i(t−t')φ(D)} F(η(t')) dt'
/// on [0, T_local], seeded with the free evolution. The integral uses composite
/// Simpson weights on a node grid of spacing ≤ cfg.dt. Iteration stops once the
/// H² increment (max over nodes) drops below cfg.picard_tol.
/// Throws ConvergenceError when an increment fails to shrink or max_iter is hit.
[[nodiscard]] PicardResult picard_solve(const EvolutionState& state, double T_local,
                                        const StepperConfig& cfg);

/// One integrating-factor RK4 step of size h.
[[nodiscard]] SpectralField ifrk4_step(const SpectralField& eta_hat, double h, const Parameters& p,
                                       bool nonlinear = true);

using Observer = std::function<void(const EvolutionState&)>;

struct EvolveOptions {
    double observer_interval = 0.0;  // 0: observe only at start and end
    double blowup_factor = 1e6;      // relative to the initial H² norm
};

/// Advances to t_end, calling observers at the start, every observer_interval and at t_end.
/// Throws BlowUpError on non-finite coefficients or H² growth beyond the guard.
EvolutionState evolve(EvolutionState state, double t_end, const StepperConfig& cfg,
                      std::span<const Observer> observers, const EvolveOptions& opts = {});

}  // namespace gbbm
