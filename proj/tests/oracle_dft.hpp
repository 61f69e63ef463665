#pragma once

// Brute-force O(N^2) reference for the real cepstrum. Deliberately naive:
// full complex DFT sums, no FFT, no shared code with the production route.
// The only convention shared with production is the definition itself:
//   C = Re{ IDFT( log(|DFT(x)| + eps) ) },  eps = 1e-12 * max|DFT(x)|.

#include "cepstra/imaging.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

inline std::vector<std::complex<double>> dft_1d(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    const double two_pi = 6.283185307179586476925286766559;
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t t = 0; t < n; ++t) {
            const double ang = -two_pi * static_cast<double>(k) * static_cast<double>(t) /
                               static_cast<double>(n);
            acc += x[t] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

inline std::vector<double> real_cepstrum_1d(const std::vector<double>& x) {
    const std::size_t n = x.size();
    const auto spec = dft_1d(x);
    double max_mag = 0.0;
    for (const auto& c : spec) max_mag = std::max(max_mag, std::abs(c));
    const double eps = 1e-12 * max_mag;
    std::vector<double> logmag(n);
    for (std::size_t k = 0; k < n; ++k) logmag[k] = std::log(std::abs(spec[k]) + eps);
    // inverse DFT, real part, 1/N normalization
    std::vector<double> out(n);
    const double two_pi = 6.283185307179586476925286766559;
    for (std::size_t t = 0; t < n; ++t) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double ang = two_pi * static_cast<double>(k) * static_cast<double>(t) /
                               static_cast<double>(n);
            acc += logmag[k] * std::cos(ang);
        }
        out[t] = acc / static_cast<double>(n);
    }
    return out;
}

inline std::vector<double> real_cepstrum_2d(const cepstra::Plane& p) {
    const int h = p.height, w = p.width;
    const double two_pi = 6.283185307179586476925286766559;
    std::vector<std::complex<double>> spec(static_cast<std::size_t>(h) * w);
    for (int u = 0; u < h; ++u)
        for (int v = 0; v < w; ++v) {
            std::complex<double> acc(0.0, 0.0);
            for (int r = 0; r < h; ++r)
                for (int c = 0; c < w; ++c) {
                    const double ang = -two_pi * (static_cast<double>(u) * r / h +
                                                  static_cast<double>(v) * c / w);
                    acc += p.at(r, c) * std::complex<double>(std::cos(ang), std::sin(ang));
                }
            spec[static_cast<std::size_t>(u) * w + v] = acc;
        }
    double max_mag = 0.0;
    for (const auto& c : spec) max_mag = std::max(max_mag, std::abs(c));
    const double eps = 1e-12 * max_mag;
    std::vector<double> logmag(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) logmag[i] = std::log(std::abs(spec[i]) + eps);
    std::vector<double> out(spec.size());
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int u = 0; u < h; ++u)
                for (int v = 0; v < w; ++v) {
                    const double ang = two_pi * (static_cast<double>(u) * r / h +
                                                 static_cast<double>(v) * c / w);
                    acc += logmag[static_cast<std::size_t>(u) * w + v] * std::cos(ang);
                }
            out[static_cast<std::size_t>(r) * w + c] = acc / (static_cast<double>(h) * w);
        }
    return out;
}

} // namespace oracle
