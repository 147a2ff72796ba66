#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace gbbm {

using cplx = std::complex<double>;

class FftPlan;

/// Periodic grid on [0, L) with n collocation points.
///
/// Frequencies are ξ_k = 2πk/L for k = −n/2+1 … n/2. Real fields only store
/// the non-negative half k = 0 … n/2; negative modes are conjugates.
/// A Grid also owns the FFT plans used for the plain and zero-padded transforms,
/// so it is created once through make() and shared between fields.
class Grid {
public:
    static std::shared_ptr<const Grid> make(int n_modes, double length);

    Grid(const Grid&) = delete;
    Grid& operator=(const Grid&) = delete;
    ~Grid();

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int half() const noexcept { return n_ / 2 + 1; }
    [[nodiscard]] int nyquist() const noexcept { return n_ / 2; }
    [[nodiscard]] double length() const noexcept { return length_; }
    [[nodiscard]] double dx() const noexcept { return length_ / n_; }
    [[nodiscard]] double x(int j) const noexcept { return j * dx(); }
    [[nodiscard]] double xi(int k) const noexcept;
    [[nodiscard]] double xi_max() const noexcept { return xi(n_ / 2); }

    [[nodiscard]] bool same_as(const Grid& other) const noexcept {
        return n_ == other.n_ && length_ == other.length_;
    }

    // Transform sizes: plain, padded for quadratic products, padded for cubic products.
    [[nodiscard]] const FftPlan& plan() const { return *plain_; }
    [[nodiscard]] const FftPlan& plan_quadratic() const { return *quad_; }
    [[nodiscard]] const FftPlan& plan_cubic() const { return *cubic_; }

private:
    Grid(int n_modes, double length);

    int n_;
    double length_;
    std::unique_ptr<FftPlan> plain_;
    std::unique_ptr<FftPlan> quad_;
    std::unique_ptr<FftPlan> cubic_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Point values of a real field on the grid.
struct RealField {
    GridPtr grid;
    std::vector<double> values;

    RealField() = default;
    explicit RealField(GridPtr g);
    RealField(GridPtr g, std::vector<double> v);

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    double& operator[](std::size_t j) { return values[j]; }
    double operator[](std::size_t j) const { return values[j]; }
};

/// Fourier coefficients of a real field, coeff(k) = (1/n) Σ_j f(x_j) e^{−iξ_k x_j}.
///
/// Storage holds k = 0 … n/2. coeff(−k) = conj(coeff(k)); modes 0 and n/2 are real.
struct SpectralField {
    GridPtr grid;
    std::vector<cplx> coeffs;

    SpectralField() = default;
    explicit SpectralField(GridPtr g);
    SpectralField(GridPtr g, std::vector<cplx> c);

    /// Coefficient at any lattice index k ∈ [−n/2+1, n/2].
    [[nodiscard]] cplx coeff(int k) const;
    void set_mode(int k, cplx value);

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double s);
    SpectralField& operator*=(cplx s);

    /// Drops the imaginary parts of modes 0 and n/2.
    void enforce_reality();
    [[nodiscard]] bool all_finite() const;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);
SpectralField operator*(cplx s, SpectralField a);

void require_same_grid(const Grid& a, const Grid& b);

[[nodiscard]] SpectralField forward(const RealField& f);
[[nodiscard]] RealField inverse(const SpectralField& f);

using Multiplier = std::function<cplx(double)>;

/// coeff(k) ↦ m(ξ_k)·coeff(k) for k ≥ 0, then reality is re-asserted at modes 0 and n/2.
/// Throws ContractError naming the frequency if m(ξ_k) is not finite.
[[nodiscard]] SpectralField apply_multiplier(const SpectralField& f, const Multiplier& m);

/// Multiplier iξ.
[[nodiscard]] SpectralField derivative(const SpectralField& f, int order = 1);

/// Products computed on a zero-padded grid (3n/2 for quadratic, 2n for cubic) and
/// truncated back to the retained modes |k| < n/2; the Nyquist mode is zeroed.
[[nodiscard]] SpectralField product(const SpectralField& f, const SpectralField& g);
[[nodiscard]] SpectralField product(const SpectralField& f, const SpectralField& g,
                                    const SpectralField& h);
/// product(f, f) and product(f, f, f) with a single padded evaluation of f.
[[nodiscard]] SpectralField square(const SpectralField& f);
[[nodiscard]] SpectralField cube(const SpectralField& f);
[[nodiscard]] RealField dealiased_product(const RealField& f, const RealField& g);
[[nodiscard]] RealField dealiased_triple(const RealField& f, const RealField& g,
                                         const RealField& h);

inline constexpr double kMaxExponent = 700.0;

/// Throws OverflowGuardError when |σ|·ξ_max exceeds kMaxExponent.
void check_overflow_guard(const Grid& g, double sigma);

/// Λ_σ = e^{σ|D|}: coeff(k) ↦ e^{σ|ξ_k|}·coeff(k).
[[nodiscard]] SpectralField lambda_sigma(const SpectralField& f, double sigma);

/// Σ over the full lattice of w(ξ_k)|coeff(k)|², each conjugate pair counted twice.
[[nodiscard]] double weighted_sum(const SpectralField& f, const std::function<double(double)>& w);

/// Discrete L² norm, sqrt(L Σ_k |coeff(k)|²).
[[nodiscard]] double l2_norm(const SpectralField& f);

/// L Σ_k conj(f_k)·g_k over the full lattice; equals ∫ f g dx for real band-limited fields.
[[nodiscard]] double inner_product(const SpectralField& f, const SpectralField& g);

/// Binary snapshot: "GBBM", u32 version, u32 n_modes, f64 length, n f64 values, little-endian.
inline constexpr std::uint32_t kSnapshotVersion = 1;
void write_snapshot(std::ostream& os, const RealField& f);
[[nodiscard]] RealField read_snapshot(std::istream& is);
void write_snapshot_file(const std::string& path, const RealField& f);
[[nodiscard]] RealField read_snapshot_file(const std::string& path);

}  // namespace gbbm
