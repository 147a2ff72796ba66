#pragma once

#include <cstdint>
#include <random>

namespace gbbm {

/// Seeded generator with portable uniform draws (std distributions differ between
/// standard libraries, mt19937_64 output does not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    long long integer(long long lo, long long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(engine_() % span);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace gbbm
