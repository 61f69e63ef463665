#pragma once

#include "cepstra/imaging.hpp"

#include <cstdint>
#include <vector>

namespace cepstra {

/// Real 2D cepstrum of an image plane. The zero-quefrency origin sits at
/// index (0,0) until center_shift moves it to (floor(h/2), floor(w/2)).
/// When valid is false (all-zero source plane) the data is all zeros and
/// downstream features fall back to their sentinel values.
struct Cepstrum {
    int width = 0;
    int height = 0;
    std::vector<double> data;
    bool centered = false;
    bool valid = false;

    double at(int row, int col) const { return data[static_cast<std::size_t>(row) * width + col]; }
    double& at(int row, int col) { return data[static_cast<std::size_t>(row) * width + col]; }
};

/// Signal with one artificial echo: y(t) = x(t) + alpha * x(t - tau).
struct EchoSignal {
    std::vector<double> samples;
    double alpha = 0.0;
    int tau = 0;
};

/// Mean absolute cepstral value per integer radius from the centered origin.
struct RadialProfile {
    std::vector<double> bins;       // bin r = mean |value| over pixels with floor(dist) == r
    std::vector<std::size_t> counts; // pixels contributing to each bin
};

/// Real cepstrum of a 1D signal: Re{IDFT(log(|DFT(x)| + eps))} with the
/// relative floor eps = 1e-12 * max|DFT(x)|. Throws DataError on an
/// all-zero signal, ContractError on length < 2.
std::vector<double> real_cepstrum_1d(const std::vector<double>& x);

/// 2D analogue of real_cepstrum_1d. An all-zero plane yields a Cepstrum
/// with valid = false instead of throwing.
Cepstrum real_cepstrum_2d(const Plane& plane);

/// Move the origin to (floor(h/2), floor(w/2)) by circular half-plane
/// shift. An involution on even dimensions. Throws ContractError if the
/// cepstrum is already centered.
Cepstrum center_shift(const Cepstrum& c);

/// Radial profile of a centered cepstrum: floor-of-Euclidean-distance
/// binning, bin width 1 pixel, floor(min(w,h)/2) bins, statistic is the
/// mean of absolute values. Throws ContractError unless valid and centered.
RadialProfile radial_profile(const Cepstrum& c);

/// Peak (max) and trapezoidal area of the profile over bins r >= 1; the
/// origin bin is excluded since it only encodes overall gain.
/// Throws ContractError on an empty profile.
std::pair<double, double> radial_peak_and_auc(const RadialProfile& p);

/// Build the echoed signal with zero padding for t < tau. Valid range:
/// 0 < alpha < 1 and 0 < tau <= length/2.
EchoSignal make_echo_signal(const std::vector<double>& base, double alpha, int tau);

/// Spectrally flat white noise: unit-magnitude spectrum with seeded random
/// phases, inverted to a real signal. Under this noise the cepstrum of an
/// echoed signal carries only the echo peaks, so the tau-detection law
/// holds for every seed.
std::vector<double> white_noise(int n, std::uint64_t seed);

} // namespace cepstra
