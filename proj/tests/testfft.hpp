#pragma once

// Test-side spectral oracles: radix-2 FFT, Hann-windowed PSD, 99%-energy
// occupied bandwidth, and a windowed-sinc interpolator for fractional-rate
// chip sampling. Independent of the library code under test.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace testfft {

inline void fft_inplace(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft length must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

// Hann-windowed power spectrum, bins reordered to ascending frequency
// [-fs/2, fs/2); returns per-bin power and fills freq_hz.
inline std::vector<double> psd(const std::vector<std::complex<double>>& x, double fs, std::vector<double>& freq_hz) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n)));
        a[i] = x[i] * w;
    }
    fft_inplace(a);
    std::vector<double> p(n);
    freq_hz.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t src = (i + n / 2) % n;  // fftshift
        p[i] = std::norm(a[src]);
        freq_hz[i] = (static_cast<double>(i) - static_cast<double>(n / 2)) * fs / static_cast<double>(n);
    }
    return p;
}

// 99%-energy occupied bandwidth: frequency span between the 0.5% and 99.5%
// points of the cumulative spectrum.
inline double occupied_bw_99(const std::vector<std::complex<double>>& x, double fs) {
    std::vector<double> freq;
    const std::vector<double> p = psd(x, fs, freq);
    double total = 0.0;
    for (double v : p) total += v;
    double acc = 0.0;
    double lo = freq.front(), hi = freq.back();
    bool lo_set = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        if (!lo_set && acc >= 0.005 * total) {
            lo = freq[i];
            lo_set = true;
        }
        if (acc >= 0.995 * total) {
            hi = freq[i];
            break;
        }
    }
    return hi - lo;
}

// Windowed-sinc interpolation at fractional position t (samples).
inline std::complex<double> interp(const std::vector<std::complex<double>>& x, double t, int half_width = 16) {
    std::complex<double> acc{0.0, 0.0};
    const int lo = static_cast<int>(std::ceil(t)) - half_width;
    const int hi = static_cast<int>(std::floor(t)) + half_width;
    for (int i = lo; i <= hi; ++i) {
        if (i < 0 || i >= static_cast<int>(x.size())) continue;
        const double d = t - static_cast<double>(i);
        const double s = d == 0.0 ? 1.0 : std::sin(M_PI * d) / (M_PI * d);
        const double w = 0.5 * (1.0 + std::cos(M_PI * d / static_cast<double>(half_width)));
        acc += x[static_cast<std::size_t>(i)] * (s * w);
    }
    return acc;
}

}  // namespace testfft
