#include "cepstra/cepstrum.hpp"
#include "cepstra/errors.hpp"
#include "cepstra/rng.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>

#include <fftw3.h>

namespace cepstra {

namespace {

// FFTW plan creation is not thread-safe; execution of distinct plans is.
std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

struct PlanGuard {
    fftw_plan plan = nullptr;
    ~PlanGuard() {
        if (plan) {
            std::lock_guard lock(fftw_mutex());
            fftw_destroy_plan(plan);
        }
    }
};

constexpr double kEpsRel = 1e-12;

// Shared forward-log-inverse core. spectrum holds the r2c half plane.
std::vector<double> log_mag_inverse(std::vector<std::complex<double>>& spectrum,
                                    std::vector<double>& out, int h, int w) {
    double max_mag = 0.0;
    for (const auto& z : spectrum) max_mag = std::max(max_mag, std::abs(z));

    const double eps = kEpsRel * max_mag;
    for (auto& z : spectrum) z = {std::log(std::abs(z) + eps), 0.0};

    PlanGuard inv;
    {
        std::lock_guard lock(fftw_mutex());
        if (h == 1)
            inv.plan = fftw_plan_dft_c2r_1d(w, reinterpret_cast<fftw_complex*>(spectrum.data()),
                                            out.data(), FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
        else
            inv.plan = fftw_plan_dft_c2r_2d(h, w, reinterpret_cast<fftw_complex*>(spectrum.data()),
                                            out.data(), FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
    }
    fftw_execute(inv.plan);

    const double norm = 1.0 / (static_cast<double>(h) * w);
    for (auto& v : out) v *= norm;
    return out;
}

} // namespace

std::vector<double> real_cepstrum_1d(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    if (n < 2) throw ContractError("real_cepstrum_1d: need at least 2 samples");
    if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; }))
        throw DataError("real_cepstrum_1d: all-zero signal");

    std::vector<double> in(x);
    std::vector<std::complex<double>> spectrum(n / 2 + 1);
    PlanGuard fwd;
    {
        std::lock_guard lock(fftw_mutex());
        fwd.plan = fftw_plan_dft_r2c_1d(n, in.data(),
                                        reinterpret_cast<fftw_complex*>(spectrum.data()),
                                        FFTW_ESTIMATE);
    }
    fftw_execute(fwd.plan);

    std::vector<double> out(x.size());
    return log_mag_inverse(spectrum, out, 1, n);
}

Cepstrum real_cepstrum_2d(const Plane& plane) {
    const int w = plane.width, h = plane.height;
    if (w < 2 || h < 2) throw ContractError("real_cepstrum_2d: plane must be at least 2x2");
    if (plane.data.size() != static_cast<std::size_t>(w) * h)
        throw ContractError("real_cepstrum_2d: inconsistent plane dimensions");

    Cepstrum c;
    c.width = w;
    c.height = h;
    c.data.assign(plane.data.size(), 0.0);
    if (std::all_of(plane.data.begin(), plane.data.end(), [](double v) { return v == 0.0; })) {
        c.valid = false;
        return c;
    }

    std::vector<double> in(plane.data);
    std::vector<std::complex<double>> spectrum(static_cast<std::size_t>(h) * (w / 2 + 1));
    PlanGuard fwd;
    {
        std::lock_guard lock(fftw_mutex());
        fwd.plan = fftw_plan_dft_r2c_2d(h, w, in.data(),
                                        reinterpret_cast<fftw_complex*>(spectrum.data()),
                                        FFTW_ESTIMATE);
    }
    fftw_execute(fwd.plan);

    log_mag_inverse(spectrum, c.data, h, w);
    c.valid = true;
    return c;
}

Cepstrum center_shift(const Cepstrum& c) {
    if (c.centered) throw ContractError("center_shift: cepstrum is already centered");

    Cepstrum out;
    out.width = c.width;
    out.height = c.height;
    out.valid = c.valid;
    out.centered = true;
    out.data.resize(c.data.size());
    const int dr = c.height / 2, dc = c.width / 2;
    for (int r = 0; r < c.height; ++r)
        for (int col = 0; col < c.width; ++col)
            out.at((r + dr) % c.height, (col + dc) % c.width) = c.at(r, col);
    return out;
}

RadialProfile radial_profile(const Cepstrum& c) {
    if (!c.valid) throw ContractError("radial_profile: invalid cepstrum");
    if (!c.centered) throw ContractError("radial_profile: cepstrum must be centered");

    const int n_bins = std::min(c.width, c.height) / 2;
    RadialProfile p;
    p.bins.assign(n_bins, 0.0);
    p.counts.assign(n_bins, 0);

    const int orig_r = c.height / 2, orig_c = c.width / 2;
    for (int r = 0; r < c.height; ++r) {
        for (int col = 0; col < c.width; ++col) {
            const double dy = r - orig_r, dx = col - orig_c;
            const int bin = static_cast<int>(std::floor(std::sqrt(dy * dy + dx * dx)));
            if (bin < n_bins) {
                p.bins[bin] += std::abs(c.at(r, col));
                p.counts[bin] += 1;
            }
        }
    }
    for (int b = 0; b < n_bins; ++b)
        if (p.counts[b] > 0) p.bins[b] /= static_cast<double>(p.counts[b]);
    return p;
}

std::pair<double, double> radial_peak_and_auc(const RadialProfile& p) {
    const std::size_t n = p.bins.size();
    if (n == 0) throw ContractError("radial_peak_and_auc: empty profile");

    double peak = 0.0;
    for (std::size_t r = 1; r < n; ++r) peak = std::max(peak, p.bins[r]);

    double auc = 0.0;
    for (std::size_t r = 1; r + 1 < n; ++r) auc += 0.5 * (p.bins[r] + p.bins[r + 1]);
    return {peak, auc};
}

EchoSignal make_echo_signal(const std::vector<double>& base, double alpha, int tau) {
    const int n = static_cast<int>(base.size());
    if (alpha <= 0.0 || alpha >= 1.0)
        throw ContractError("make_echo_signal: alpha must be in (0,1)");
    if (tau <= 0 || tau > n / 2)
        throw ContractError("make_echo_signal: tau must be in (0, length/2]");

    EchoSignal e;
    e.alpha = alpha;
    e.tau = tau;
    e.samples = base;
    for (int t = tau; t < n; ++t) e.samples[t] += alpha * base[t - tau];
    return e;
}

std::vector<double> white_noise(int n, std::uint64_t seed) {
    if (n < 2) throw ContractError("white_noise: need n >= 2");

    Rng rng(seed);
    const int half = n / 2 + 1;
    std::vector<std::complex<double>> spectrum(half);
    spectrum[0] = {1.0, 0.0}; // DC and Nyquist must be real
    for (int k = 1; k < half; ++k) {
        const double phase = rng.uniform() * 6.283185307179586476925286766559;
        spectrum[k] = {std::cos(phase), std::sin(phase)};
    }
    if (n % 2 == 0) spectrum[half - 1] = {1.0, 0.0};

    std::vector<double> out(n);
    PlanGuard inv;
    {
        std::lock_guard lock(fftw_mutex());
        inv.plan = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(spectrum.data()),
                                        out.data(), FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
    }
    fftw_execute(inv.plan);
    const double norm = 1.0 / n;
    for (auto& v : out) v *= norm;
    return out;
}

} // namespace cepstra
