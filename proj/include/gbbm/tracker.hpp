#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gbbm/dynamics.hpp"
#include "gbbm/gevrey.hpp"
#include "gbbm/params.hpp"

namespace gbbm {

enum class DataKind { PoissonKernel, GaussianBump, ModeSum };

struct DataSpec {
    DataKind kind = DataKind::PoissonKernel;
    double amplitude = 0.1;
    double sigma0 = 0.5;
    std::uint64_t seed = 1;
    double width = 2.0;  // gaussian_bump only
    int modes = 8;       // mode_sum only
};

struct RunConfig {
    Parameters params;
    int n_modes = 1024;
    double length = 0.0;  // 0 until set; validate() rejects it
    DataSpec data;
    StepperConfig stepper;
    double t_end = 10.0;
    double observer_interval = 1.0;
    std::vector<double> sigma_grid{0.25};
    std::string output_dir = "out";

    double continuation_c = 1.0;
    double existence_constant = kDefaultExistenceConstant;
    double tail_fraction = 0.5;
    int min_tail_samples = 10;
    double blowup_factor = 1e6;
    RadiusFitOptions radius;

    /// Throws ContractError describing the first violated invariant.
    void validate() const;
};

[[nodiscard]] GridPtr make_grid(const RunConfig& cfg);
[[nodiscard]] SpectralField initial_data(const RunConfig& cfg, const GridPtr& grid);

struct TrajectoryRow {
    double t = 0.0;
    RadiusEstimate radius;  // floor_hit with k_min = k_max = 0 when no fit was possible
    double energy = 0.0;
    double h2_norm = 0.0;
    std::vector<double> modified_energy;  // one per sigma_grid entry
    double gevrey_norm_sigma_hat = 0.0;
};

struct RadiusTrajectory {
    std::vector<double> sigma_grid;
    std::vector<TrajectoryRow> rows;
};

/// Observer building one trajectory row per call.
[[nodiscard]] TrajectoryRow observe(const EvolutionState& s, const std::vector<double>& sigma_grid,
                                    const RadiusFitOptions& fit);

inline constexpr int kCsvSchemaVersion = 1;

/// Header comment line, then "# column,…" and one row per observation.
void write_csv(std::ostream& os, const RadiusTrajectory& traj);

struct SimulationResult {
    RadiusTrajectory trajectory;
    EvolutionState final_state;
};

[[nodiscard]] SimulationResult simulate(const RunConfig& cfg);

struct ContinuationResult {
    double sigma = 0.0;
    bool keybound_ok = true;
    double fail_time = 0.0;      // first time E_σ exceeded 2E_{σ₀}[v₀]
    double max_ratio = 0.0;      // sup_t E_σ[v(t)] / E_{σ₀}[v₀]
    int segments = 0;
};

/// Evolves to T_star in local segments of length existence_time(‖η‖_{G^{σ,2}}) (at least
/// one time step), checking E_σ[v(t)] ≤ 2E_{σ₀}[v₀] after each, with σ = min(σ₀, c/T_star).
[[nodiscard]] ContinuationResult continuation_run(const RunConfig& cfg, double T_star);

struct DecayLawResult {
    double c_hat = 0.0;
    double exponent_hat = 0.0;
    double inf_t_sigma = 0.0;  // inf over the tail of t·σ̂(t)
    int tail_samples = 0;
    RadiusTrajectory trajectory;
};

/// Fits log σ̂(t) = log ĉ + exponent·log t on t ≥ tail_fraction·t_end.
/// Throws InsufficientDataError when the tail is too short or mostly floor-limited.
[[nodiscard]] DecayLawResult decay_law_experiment(const RunConfig& cfg);

[[nodiscard]] std::string to_string(DataKind k);
[[nodiscard]] DataKind data_kind_from_string(const std::string& s);
[[nodiscard]] std::string to_string(Scheme s);
[[nodiscard]] Scheme scheme_from_string(const std::string& s);

/// Metadata sidecar written next to checkpoints: one "key = value" per line.
void write_metadata(std::ostream& os, const EvolutionState& s, const RunConfig& cfg);

}  // namespace gbbm
