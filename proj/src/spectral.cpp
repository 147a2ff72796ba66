#include "gbbm/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>

#include "fft_plan.hpp"
#include "gbbm/errors.hpp"

namespace gbbm {

namespace {

// FFTW planning is not thread-safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

int even_ceil(int v) { return v % 2 == 0 ? v : v + 1; }

}  // namespace

FftPlan::FftPlan(int size) : size_(size) {
    std::vector<double> re(size);
    std::vector<std::complex<double>> co(size / 2 + 1);
    auto* cp = reinterpret_cast<fftw_complex*>(co.data());
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft_r2c_1d(size, re.data(), cp, FFTW_ESTIMATE | FFTW_UNALIGNED);
    backward_ = fftw_plan_dft_c2r_1d(size, cp, re.data(),
                                     FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_DESTROY_INPUT);
}

FftPlan::~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
}

void FftPlan::r2c(std::vector<double>& in, std::vector<std::complex<double>>& out) const {
    out.resize(half());
    fftw_execute_dft_r2c(forward_, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
}

void FftPlan::c2r(std::vector<std::complex<double>>& in, std::vector<double>& out) const {
    out.resize(size_);
    fftw_execute_dft_c2r(backward_, reinterpret_cast<fftw_complex*>(in.data()), out.data());
}

// ---------------------------------------------------------------------------
// Grid

Grid::Grid(int n_modes, double length) : n_(n_modes), length_(length) {
    plain_ = std::make_unique<FftPlan>(n_);
    quad_ = std::make_unique<FftPlan>(even_ceil(3 * n_ / 2));
    cubic_ = std::make_unique<FftPlan>(2 * n_);
}

Grid::~Grid() = default;

std::shared_ptr<const Grid> Grid::make(int n_modes, double length) {
    if (n_modes < 8 || n_modes % 2 != 0) {
        throw ContractError("n_modes must be even and >= 8, got " + std::to_string(n_modes));
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw ContractError("grid length must be positive and finite");
    }
    return std::shared_ptr<const Grid>(new Grid(n_modes, length));
}

double Grid::xi(int k) const noexcept { return 2.0 * std::numbers::pi * k / length_; }

void require_same_grid(const Grid& a, const Grid& b) {
    if (!a.same_as(b)) throw ContractError("grid mismatch between fields");
}

// ---------------------------------------------------------------------------
// Fields

RealField::RealField(GridPtr g) : grid(std::move(g)), values(grid->n(), 0.0) {}

RealField::RealField(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid->n()) {
        throw ContractError("field size " + std::to_string(values.size()) +
                            " does not match grid size " + std::to_string(grid->n()));
    }
}

SpectralField::SpectralField(GridPtr g) : grid(std::move(g)), coeffs(grid->half(), cplx{}) {}

SpectralField::SpectralField(GridPtr g, std::vector<cplx> c) : grid(std::move(g)), coeffs(std::move(c)) {
    if (static_cast<int>(coeffs.size()) != grid->half()) {
        throw ContractError("spectral size mismatch");
    }
}

cplx SpectralField::coeff(int k) const {
    const int nyq = grid->nyquist();
    if (k > nyq || k <= -nyq) throw ContractError("mode index out of lattice: " + std::to_string(k));
    return k >= 0 ? coeffs[k] : std::conj(coeffs[-k]);
}

void SpectralField::set_mode(int k, cplx value) {
    const int nyq = grid->nyquist();
    if (k > nyq || k <= -nyq) throw ContractError("mode index out of lattice: " + std::to_string(k));
    if (k >= 0) {
        coeffs[k] = value;
    } else {
        coeffs[-k] = std::conj(value);
    }
    enforce_reality();
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    require_same_grid(*grid, *o.grid);
    for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] += o.coeffs[k];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    require_same_grid(*grid, *o.grid);
    for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] -= o.coeffs[k];
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& c : coeffs) c *= s;
    return *this;
}

SpectralField& SpectralField::operator*=(cplx s) {
    for (auto& c : coeffs) c *= s;
    enforce_reality();
    return *this;
}

void SpectralField::enforce_reality() {
    coeffs.front().imag(0.0);
    coeffs.back().imag(0.0);
}

bool SpectralField::all_finite() const {
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }
SpectralField operator*(cplx s, SpectralField a) { return a *= s; }

// ---------------------------------------------------------------------------
// Transforms

SpectralField forward(const RealField& f) {
    if (static_cast<int>(f.values.size()) != f.grid->n()) {
        throw ContractError("field size does not match grid");
    }
    std::vector<double> work = f.values;
    SpectralField out(f.grid);
    f.grid->plan().r2c(work, out.coeffs);
    const double scale = 1.0 / f.grid->n();
    for (auto& c : out.coeffs) c *= scale;
    out.enforce_reality();
    return out;
}

RealField inverse(const SpectralField& f) {
    if (static_cast<int>(f.coeffs.size()) != f.grid->half()) {
        throw ContractError("spectral size does not match grid");
    }
    std::vector<cplx> work = f.coeffs;
    RealField out(f.grid);
    f.grid->plan().c2r(work, out.values);
    return out;
}

SpectralField apply_multiplier(const SpectralField& f, const Multiplier& m) {
    SpectralField out(f.grid);
    const Grid& g = *f.grid;
    for (int k = 0; k < g.half(); ++k) {
        const double xi = g.xi(k);
        const cplx mk = m(xi);
        if (!std::isfinite(mk.real()) || !std::isfinite(mk.imag())) {
            std::ostringstream msg;
            msg << "multiplier is not finite at frequency xi=" << xi << " (k=" << k << ")";
            throw ContractError(msg.str());
        }
        out.coeffs[k] = mk * f.coeffs[k];
    }
    out.enforce_reality();
    return out;
}

SpectralField derivative(const SpectralField& f, int order) {
    SpectralField out = f;
    const Grid& g = *f.grid;
    for (int k = 0; k < g.half(); ++k) {
        const cplx ik{0.0, g.xi(k)};
        cplx factor{1.0, 0.0};
        for (int i = 0; i < order; ++i) factor *= ik;
        out.coeffs[k] *= factor;
    }
    out.enforce_reality();
    return out;
}

namespace {

// Evaluates the band-limited field on a padded grid of the plan's size.
std::vector<double> to_padded(const SpectralField& f, const FftPlan& plan) {
    std::vector<cplx> padded(plan.half(), cplx{});
    const int nyq = f.grid->nyquist();
    // Nyquist mode is never carried into products.
    std::copy(f.coeffs.begin(), f.coeffs.begin() + nyq, padded.begin());
    std::vector<double> values;
    plan.c2r(padded, values);
    return values;
}

SpectralField from_padded(std::vector<double>& values, const FftPlan& plan, const GridPtr& grid) {
    std::vector<cplx> spec;
    plan.r2c(values, spec);
    SpectralField out(grid);
    const double scale = 1.0 / plan.size();
    const int nyq = grid->nyquist();
    for (int k = 0; k < nyq; ++k) out.coeffs[k] = spec[k] * scale;
    out.coeffs[nyq] = cplx{};
    out.enforce_reality();
    return out;
}

}  // namespace

SpectralField product(const SpectralField& f, const SpectralField& g) {
    require_same_grid(*f.grid, *g.grid);
    const FftPlan& plan = f.grid->plan_quadratic();
    auto a = to_padded(f, plan);
    const auto b = to_padded(g, plan);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] *= b[j];
    return from_padded(a, plan, f.grid);
}

SpectralField product(const SpectralField& f, const SpectralField& g, const SpectralField& h) {
    require_same_grid(*f.grid, *g.grid);
    require_same_grid(*f.grid, *h.grid);
    const FftPlan& plan = f.grid->plan_cubic();
    auto a = to_padded(f, plan);
    const auto b = to_padded(g, plan);
    const auto c = to_padded(h, plan);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] *= b[j] * c[j];
    return from_padded(a, plan, f.grid);
}

SpectralField square(const SpectralField& f) {
    const FftPlan& plan = f.grid->plan_quadratic();
    auto a = to_padded(f, plan);
    for (double& v : a) v *= v;
    return from_padded(a, plan, f.grid);
}

SpectralField cube(const SpectralField& f) {
    const FftPlan& plan = f.grid->plan_cubic();
    auto a = to_padded(f, plan);
    for (double& v : a) v = v * v * v;
    return from_padded(a, plan, f.grid);
}

RealField dealiased_product(const RealField& f, const RealField& g) {
    require_same_grid(*f.grid, *g.grid);
    return inverse(product(forward(f), forward(g)));
}

RealField dealiased_triple(const RealField& f, const RealField& g, const RealField& h) {
    require_same_grid(*f.grid, *g.grid);
    require_same_grid(*f.grid, *h.grid);
    return inverse(product(forward(f), forward(g), forward(h)));
}

void check_overflow_guard(const Grid& g, double sigma) {
    if (std::abs(sigma) * g.xi_max() > kMaxExponent) {
        std::ostringstream msg;
        msg << "exponent |sigma|*xi_max = " << std::abs(sigma) * g.xi_max() << " exceeds "
            << kMaxExponent << "; use a smaller sigma or a coarser grid";
        throw OverflowGuardError(msg.str());
    }
}

SpectralField lambda_sigma(const SpectralField& f, double sigma) {
    const Grid& g = *f.grid;
    check_overflow_guard(g, sigma);
    SpectralField out = f;
    if (sigma == 0.0) return out;
    for (int k = 0; k < g.half(); ++k) out.coeffs[k] *= std::exp(sigma * std::abs(g.xi(k)));
    return out;
}

double weighted_sum(const SpectralField& f, const std::function<double(double)>& w) {
    const Grid& g = *f.grid;
    const int nyq = g.nyquist();
    double sum = w(0.0) * std::norm(f.coeffs[0]);
    for (int k = 1; k < nyq; ++k) sum += 2.0 * w(g.xi(k)) * std::norm(f.coeffs[k]);
    sum += w(g.xi(nyq)) * std::norm(f.coeffs[nyq]);
    return sum;
}

double l2_norm(const SpectralField& f) {
    return std::sqrt(f.grid->length() * weighted_sum(f, [](double) { return 1.0; }));
}

double inner_product(const SpectralField& f, const SpectralField& g) {
    require_same_grid(*f.grid, *g.grid);
    const int nyq = f.grid->nyquist();
    double sum = (std::conj(f.coeffs[0]) * g.coeffs[0]).real();
    for (int k = 1; k < nyq; ++k) sum += 2.0 * (std::conj(f.coeffs[k]) * g.coeffs[k]).real();
    sum += (std::conj(f.coeffs[nyq]) * g.coeffs[nyq]).real();
    return f.grid->length() * sum;
}

// ---------------------------------------------------------------------------
// Snapshots

namespace {

template <typename T>
void put_le(std::ostream& os, T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
    unsigned char bytes[sizeof(T)];
    if (!is.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
        throw ContractError("truncated snapshot");
    }
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
}

}  // namespace

void write_snapshot(std::ostream& os, const RealField& f) {
    os.write("GBBM", 4);
    put_le<std::uint32_t>(os, kSnapshotVersion);
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid->n()));
    put_le<double>(os, f.grid->length());
    for (double v : f.values) put_le<double>(os, v);
}

RealField read_snapshot(std::istream& is) {
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, "GBBM", 4) != 0) {
        throw ContractError("not a GBBM snapshot");
    }
    const auto version = get_le<std::uint32_t>(is);
    if (version != kSnapshotVersion) {
        throw ContractError("unsupported snapshot version " + std::to_string(version));
    }
    const auto n = get_le<std::uint32_t>(is);
    const auto length = get_le<double>(is);
    auto grid = Grid::make(static_cast<int>(n), length);
    std::vector<double> values(n);
    for (auto& v : values) v = get_le<double>(is);
    return RealField(std::move(grid), std::move(values));
}

void write_snapshot_file(const std::string& path, const RealField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_snapshot(os, f);
}

RealField read_snapshot_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_snapshot(is);
}

}  // namespace gbbm
