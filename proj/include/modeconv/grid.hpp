#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace modeconv {

// Uniform sample grid: t_k = t0 + k*dt, k = 0..n-1.
struct SampleGrid {
    double t0 = 0.0;
    double dt = 0.0;
    std::size_t n = 0;

    double time(std::size_t k) const { return t0 + static_cast<double>(k) * dt; }
    double duration() const { return n > 1 ? static_cast<double>(n - 1) * dt : 0.0; }

    bool aligned_with(const SampleGrid& other, double tol = 1e-9) const {
        if (n != other.n) return false;
        if (dt <= 0.0 || other.dt <= 0.0) return false;
        return std::abs(dt - other.dt) <= tol * dt &&
               std::abs(t0 - other.t0) <= tol * dt;
    }
};

inline void require_aligned(const SampleGrid& a, const SampleGrid& b, const char* what) {
    if (!a.aligned_with(b))
        throw std::invalid_argument(std::string("misaligned sample grids in ") + what);
}

} // namespace modeconv
