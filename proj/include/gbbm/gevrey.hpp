#pragma once

#include <cstdint>

#include "gbbm/spectral.hpp"

namespace gbbm {

/// Point (σ, s) of the Gevrey scale G^{σ,s}; σ = 0 is the Sobolev space H^s.
struct GevreyPair {
    double sigma = 0.0;
    double s = 0.0;
};

/// ‖e^{σ|D|}⟨D⟩^s f‖_{L²} = sqrt(L Σ_k e^{2σ|ξ_k|}(1+ξ_k²)^s |coeff(k)|²).
[[nodiscard]] double gevrey_norm(const SpectralField& f, GevreyPair gp);

[[nodiscard]] inline double sobolev_norm(const SpectralField& f, double s) {
    return gevrey_norm(f, {0.0, s});
}

/// ‖f‖_{G^{σ,s}} / ‖f‖_{G^{σ',s'}} for σ < σ'. Zero field gives 0.
[[nodiscard]] double check_embedding(const SpectralField& f, GevreyPair small, GevreyPair big);

/// Relative level below which generated data coefficients are set to zero.
inline constexpr double kDataFloor = 1e-15;

/// Spectrum coeff(k) = (2π/L)·amplitude·e^{−σ₀|ξ_k|}: the periodic Poisson kernel, whose
/// holomorphic extension lives exactly in the strip |Im z| < σ₀.
///
/// The 2π/L factor makes `amplitude` the continuous Fourier amplitude, so the field
/// approaches 2·amplitude·σ₀/(σ₀² + x²) as L grows instead of scaling with L.
/// On L = 2π the coefficients are exactly amplitude·e^{−σ₀|ξ_k|}.
[[nodiscard]] SpectralField poisson_kernel_spectrum(const GridPtr& grid, double sigma0, double amplitude);
[[nodiscard]] RealField poisson_kernel_data(const GridPtr& grid, double sigma0, double amplitude);

/// amplitude·exp(−(x − L/2)²/width²). Entire, so its spectrum decays super-exponentially.
[[nodiscard]] SpectralField gaussian_bump_spectrum(const GridPtr& grid, double amplitude, double width);

/// Modes k = 1 … count with magnitude amplitude·e^{−σ₀|ξ_k|} and seeded random phases.
[[nodiscard]] SpectralField mode_sum_spectrum(const GridPtr& grid, double sigma0, double amplitude,
                                              int count, std::uint64_t seed);

struct RadiusEstimate {
    double sigma_hat = 0.0;
    int k_min = 0;
    int k_max = 0;
    double residual = 0.0;  // RMS of the log-linear fit residuals
    bool floor_hit = false;
};

struct RadiusFitOptions {
    double floor = 1e-13;          // relative to the largest |coeff(k)|, k ≥ 1
    double window_start = 0.5;     // fit starts at this fraction of the active band
    int guard_modes = 2;           // highest retained modes left out of the fit
    int min_modes = 4;             // fewer usable modes is an error
    int floor_hit_modes = 8;       // fewer modes than this sets floor_hit
};

/// Reads the radius of analyticity off the exponential decay of |coeff(k)|.
///
/// The active band is the contiguous run k = 1, 2, … whose magnitudes exceed
/// floor·max|coeff|, stopping before the Nyquist mode. ln|coeff(k)| is fitted
/// against ξ_k by least squares on the upper part of that band, minus the guard
/// modes at its top; sigma_hat = −slope, clamped at 0.
/// Throws InsufficientDataError if fewer than min_modes remain.
[[nodiscard]] RadiusEstimate estimate_radius(const SpectralField& f, const RadiusFitOptions& opts = {});

}  // namespace gbbm
