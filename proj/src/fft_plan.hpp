#pragma once

#include <fftw3.h>

#include <complex>
#include <vector>

namespace gbbm {

/// Real-to-complex / complex-to-real FFTW plan pair of one size.
/// Execution uses the new-array interface, so one plan serves concurrent callers.
class FftPlan {
public:
    explicit FftPlan(int size);
    ~FftPlan();
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    [[nodiscard]] int size() const noexcept { return size_; }
    [[nodiscard]] int half() const noexcept { return size_ / 2 + 1; }

    /// Unnormalized forward transform.
    void r2c(std::vector<double>& in, std::vector<std::complex<double>>& out) const;
    /// Unnormalized inverse transform; clobbers `in`.
    void c2r(std::vector<std::complex<double>>& in, std::vector<double>& out) const;

private:
    int size_;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
};

}  // namespace gbbm
