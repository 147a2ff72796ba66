#pragma once

#include <string>

namespace gbbm {

/// Model constants of the fifth-order KdV-BBM equation
///
///   η_t + η_x − γ₁η_txx + γ₂η_xxx + δ₁η_txxxx + δ₂η_xxxxx
///       = −¾(η²)_x − γ(η²)_xxx + γₓ(η_x²)_x + ⅛(η³)_x
///
/// gamma_x is the coefficient of (η_x²)_x. It is 7/48 in the classical model and
/// defaults to gamma; the flow conserves energy iff gamma == gamma_x == 7/48.
struct Parameters {
    double gamma1 = 1.0;
    double gamma2 = 1.0;
    double delta1 = 1.0;
    double delta2 = 1.0;
    double gamma = 7.0 / 48.0;
    double gamma_x = 7.0 / 48.0;

    /// Default set: all structural constants 1, gamma = gamma_x = 7/48.
    static Parameters defaults() { return {}; }

    /// Throws std::invalid_argument unless gamma1 > 0, delta1 > 0 and all values finite.
    void validate() const;

    [[nodiscard]] bool energy_conserving() const noexcept;
};

inline constexpr double kSevenFortyEighths = 7.0 / 48.0;

enum class SymbolKind { Phi, Psi, Tau, Varphi };

/// 1 + γ₁ξ² + δ₁ξ⁴, the common denominator of the other symbols.
[[nodiscard]] double varphi(const Parameters& p, double xi) noexcept;

/// Exact value of a rational symbol at frequency xi.
///   Phi:    ξ(1 − γ₂ξ² + δ₂ξ⁴)/ϕ(ξ)   (dispersion relation)
///   Psi:    ξ/ϕ(ξ)
///   Tau:    ξ(3 − 4γξ²)/(4ϕ(ξ))
///   Varphi: ϕ(ξ)
[[nodiscard]] double symbol(const Parameters& p, SymbolKind kind, double xi) noexcept;

/// Parses a coefficient given either as a decimal literal or as a fraction "a/b".
[[nodiscard]] double parse_coefficient(const std::string& text);

}  // namespace gbbm
