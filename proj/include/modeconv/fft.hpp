#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "modeconv/constants.hpp"

namespace modeconv {

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place iterative radix-2 Cooley-Tukey, forward sign = -1.
inline void fft_pow2(std::complex<double>* x, std::size_t n, int sign,
                     const std::vector<std::complex<double>>& tw) {
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> w = tw[k * step];
                if (sign > 0) w = std::conj(w);
                std::complex<double> u = x[i + k];
                std::complex<double> v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
            }
        }
    }
}

} // namespace detail

// FFT plan for a fixed size.  Power-of-two sizes run radix-2 directly;
// other sizes use Bluestein's chirp-z embedding in a power-of-two FFT.
// forward: X[k] = sum_j x[j] exp(-2 pi i j k / n); inverse divides by n.
class Fft {
public:
    explicit Fft(std::size_t n) : n_(n) {
        if (n == 0) throw std::invalid_argument("Fft size must be positive");
        if (detail::is_pow2(n)) {
            m_ = n;
            make_twiddles(m_);
        } else {
            m_ = detail::next_pow2(2 * n - 1);
            make_twiddles(m_);
            // chirp c_j = exp(-i pi j^2 / n); j^2 taken mod 2n to keep the
            // argument bounded for large sizes.
            chirp_.resize(n_);
            for (std::size_t j = 0; j < n_; ++j) {
                std::size_t j2 = (j * j) % (2 * n_);
                double ph = pi * static_cast<double>(j2) / static_cast<double>(n_);
                chirp_[j] = std::complex<double>(std::cos(ph), -std::sin(ph));
            }
            bq_.assign(m_, {0.0, 0.0});
            bq_[0] = std::conj(chirp_[0]);
            for (std::size_t j = 1; j < n_; ++j)
                bq_[j] = bq_[m_ - j] = std::conj(chirp_[j]);
            detail::fft_pow2(bq_.data(), m_, -1, tw_);
        }
    }

    std::size_t size() const { return n_; }

    void forward(std::vector<std::complex<double>>& x) const { run(x, -1); }
    void inverse(std::vector<std::complex<double>>& x) const {
        run(x, +1);
        double inv = 1.0 / static_cast<double>(n_);
        for (auto& v : x) v *= inv;
    }

private:
    void make_twiddles(std::size_t m) {
        tw_.resize(m / 2);
        for (std::size_t k = 0; k < m / 2; ++k) {
            double ph = two_pi * static_cast<double>(k) / static_cast<double>(m);
            tw_[k] = std::complex<double>(std::cos(ph), -std::sin(ph));
        }
    }

    void run(std::vector<std::complex<double>>& x, int sign) const {
        if (x.size() != n_) throw std::invalid_argument("Fft: buffer size mismatch");
        if (n_ == 1) return;
        if (detail::is_pow2(n_)) {
            detail::fft_pow2(x.data(), n_, sign, tw_);
            return;
        }
        // Bluestein: a_j = x_j c_j (conjugate chirp for the inverse), then
        // circular convolution with the precomputed chirp kernel.
        std::vector<std::complex<double>> a(m_, {0.0, 0.0});
        for (std::size_t j = 0; j < n_; ++j)
            a[j] = x[j] * (sign < 0 ? chirp_[j] : std::conj(chirp_[j]));
        detail::fft_pow2(a.data(), m_, -1, tw_);
        if (sign < 0) {
            for (std::size_t j = 0; j < m_; ++j) a[j] *= bq_[j];
        } else {
            for (std::size_t j = 0; j < m_; ++j) a[j] *= std::conj(bq_[j]);
        }
        detail::fft_pow2(a.data(), m_, +1, tw_);
        double inv = 1.0 / static_cast<double>(m_);
        for (std::size_t k = 0; k < n_; ++k) {
            std::complex<double> v = a[k] * inv;
            x[k] = v * (sign < 0 ? chirp_[k] : std::conj(chirp_[k]));
        }
    }

    std::size_t n_, m_;
    std::vector<std::complex<double>> tw_;    // twiddles for size m_
    std::vector<std::complex<double>> chirp_; // Bluestein chirp, size n_
    std::vector<std::complex<double>> bq_;    // FFT of chirp kernel, size m_
};

inline void fft_forward(std::vector<std::complex<double>>& x) { Fft(x.size()).forward(x); }
inline void fft_inverse(std::vector<std::complex<double>>& x) { Fft(x.size()).inverse(x); }

} // namespace modeconv
