#pragma once

// Reference computations used only by the tests. They work on the full frequency
// lattice with plain O(n²) loops and share no code with the FFT-based paths.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// Full-lattice spectrum: index k ∈ [−n/2+1, n/2] stored at k + n/2 − 1.
struct Spectrum {
    int n = 0;
    std::vector<cplx> c;

    explicit Spectrum(int n_) : n(n_), c(n_, cplx{}) {}
    cplx& at(int k) { return c[k + n / 2 - 1]; }
    cplx at(int k) const { return c[k + n / 2 - 1]; }
    int lo() const { return -n / 2 + 1; }
    int hi() const { return n / 2; }
};

inline Spectrum direct_dft(const std::vector<double>& f, double L) {
    const int n = static_cast<int>(f.size());
    Spectrum s(n);
    for (int k = s.lo(); k <= s.hi(); ++k) {
        cplx sum{};
        const double xi = 2.0 * std::numbers::pi * k / L;
        for (int j = 0; j < n; ++j) sum += f[j] * std::exp(cplx{0.0, -xi * j * L / n});
        s.at(k) = sum / static_cast<double>(n);
    }
    return s;
}

/// Truncated convolution on the lattice, output restricted to |k| < n/2
/// (the Nyquist mode is dropped on input and output).
inline Spectrum convolve(const Spectrum& a, const Spectrum& b) {
    Spectrum out(a.n);
    const int m = a.n / 2 - 1;
    for (int k1 = -m; k1 <= m; ++k1) {
        for (int k2 = -m; k2 <= m; ++k2) {
            const int k = k1 + k2;
            if (k < -m || k > m) continue;
            out.at(k) += a.at(k1) * b.at(k2);
        }
    }
    return out;
}

/// Sum over the lattice of e^{2σ|ξ|}(1+ξ²)^s |c_k|², times L, square-rooted.
inline double gevrey_norm(const Spectrum& s, double L, double sigma, double sob) {
    double sum = 0.0;
    for (int k = s.lo(); k <= s.hi(); ++k) {
        const double xi = 2.0 * std::numbers::pi * k / L;
        sum += std::exp(2.0 * sigma * std::abs(xi)) * std::pow(1.0 + xi * xi, sob) * std::norm(s.at(k));
    }
    return std::sqrt(L * sum);
}

/// Quadratic and cubic remainder pieces from their multiplier definitions:
///   N̂₁(ξ) = Σ_{ξ₁+ξ₂=ξ} (1 − e^{σ(|ξ|−|ξ₁|−|ξ₂|)}) v̂(ξ₁)v̂(ξ₂), same idea for N₂ (with iξ factors)
/// and N₃. Output restricted to |k| < n/2.
inline Spectrum remainder_piece(const Spectrum& v, double L, double sigma, int which) {
    Spectrum out(v.n);
    const int m = v.n / 2 - 1;
    auto xi = [&](int k) { return 2.0 * std::numbers::pi * k / L; };
    if (which == 3) {
        for (int a = -m; a <= m; ++a)
            for (int b = -m; b <= m; ++b)
                for (int c = -m; c <= m; ++c) {
                    const int k = a + b + c;
                    if (k < -m || k > m) continue;
                    const double gap = std::abs(xi(a)) + std::abs(xi(b)) + std::abs(xi(c)) - std::abs(xi(k));
                    out.at(k) += (1.0 - std::exp(-sigma * gap)) * v.at(a) * v.at(b) * v.at(c);
                }
        return out;
    }
    for (int a = -m; a <= m; ++a)
        for (int b = -m; b <= m; ++b) {
            const int k = a + b;
            if (k < -m || k > m) continue;
            const double gap = std::abs(xi(a)) + std::abs(xi(b)) - std::abs(xi(k));
            cplx term = (1.0 - std::exp(-sigma * gap)) * v.at(a) * v.at(b);
            if (which == 2) term *= cplx{0.0, xi(a)} * cplx{0.0, xi(b)};
            out.at(k) += term;
        }
    return out;
}

}  // namespace oracle
