#pragma once

#include <cstdint>
#include <random>

namespace modeconv {

// splitmix64: used to derive independent per-run seeds from one master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    return splitmix64(s);
}

// Gaussian stream for one trajectory.  Streams for different (master, run)
// pairs are statistically independent; draws within a stream are sequential,
// so results are reproducible regardless of thread scheduling.
class GaussStream {
public:
    explicit GaussStream(std::uint64_t seed) : eng_(seed) {}
    GaussStream(std::uint64_t master, std::uint64_t run) : eng_(derive_seed(master, run)) {}

    double normal() { return dist_(eng_); }

    // circularly symmetric complex gaussian with <|z|^2> = var
    std::complex<double> cnormal(double var) {
        double s = std::sqrt(0.5 * var);
        return {s * normal(), s * normal()};
    }

private:
    std::mt19937_64 eng_;
    std::normal_distribution<double> dist_{0.0, 1.0};
};

} // namespace modeconv
