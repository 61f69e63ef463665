#pragma once

// Naive textbook reference for the 14 co-occurrence texture features.
// Every statistic is a direct double loop over the matrix — no shared
// marginal-histogram shortcuts, no algebraic identities (HXY1 and HXY2 are
// summed explicitly). Shares only the convention choices with production:
// base-2 logs, 0*log0 == 0, zero-variance correlation == 0, sum variance
// about the sum average, difference variance of the |i-j| distribution,
// degenerate IMC1 == 0, maximal correlation coefficient excluded.

#include "cepstra/texture.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace oracle {

inline double ld(double x) { return std::log(x) / std::log(2.0); }

inline std::array<double, 14> haralick14(const cepstra::CooccurrenceMatrix& m) {
    const int L = m.levels;
    std::array<double, 14> f{};

    // marginals
    std::vector<double> px(L, 0.0), py(L, 0.0);
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) {
            px[i] += m.at(i, j);
            py[j] += m.at(i, j);
        }
    double mu_x = 0.0, mu_y = 0.0;
    for (int i = 0; i < L; ++i) {
        mu_x += i * px[i];
        mu_y += i * py[i];
    }
    double var_x = 0.0, var_y = 0.0;
    for (int i = 0; i < L; ++i) {
        var_x += (i - mu_x) * (i - mu_x) * px[i];
        var_y += (i - mu_y) * (i - mu_y) * py[i];
    }

    // f1 energy
    double energy = 0.0;
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) energy += m.at(i, j) * m.at(i, j);
    f[0] = energy;

    // f2 contrast
    double contrast = 0.0;
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) contrast += (i - j) * (i - j) * m.at(i, j);
    f[1] = contrast;

    // f3 correlation
    if (var_x > 0.0 && var_y > 0.0) {
        double cross = 0.0;
        for (int i = 0; i < L; ++i)
            for (int j = 0; j < L; ++j) cross += i * j * m.at(i, j);
        f[2] = (cross - mu_x * mu_y) / std::sqrt(var_x * var_y);
    } else {
        f[2] = 0.0;
    }

    // f4 variance, about the grand gray-level mean
    double grand = 0.0;
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) grand += i * m.at(i, j);
    double variance = 0.0;
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) variance += (i - grand) * (i - grand) * m.at(i, j);
    f[3] = variance;

    // f5 homogeneity (inverse difference moment)
    double homog = 0.0;
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) homog += m.at(i, j) / (1.0 + (i - j) * (i - j));
    f[4] = homog;

    // f6 sum average, directly over pairs
    double sum_avg = 0.0;
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) sum_avg += (i + j) * m.at(i, j);
    f[5] = sum_avg;

    // f7 sum variance, about the sum average
    double sum_var = 0.0;
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j)
            sum_var += (i + j - sum_avg) * (i + j - sum_avg) * m.at(i, j);
    f[6] = sum_var;

    // f8 sum entropy over the i+j distribution
    std::vector<double> psum(static_cast<std::size_t>(2 * L - 1), 0.0);
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) psum[static_cast<std::size_t>(i + j)] += m.at(i, j);
    double sum_ent = 0.0;
    for (double v : psum)
        if (v > 0.0) sum_ent -= v * ld(v);
    f[7] = sum_ent;

    // f9 entropy
    double entropy = 0.0;
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j)
            if (m.at(i, j) > 0.0) entropy -= m.at(i, j) * ld(m.at(i, j));
    f[8] = entropy;

    // f10 difference variance: variance of the |i-j| distribution
    std::vector<double> pdiff(static_cast<std::size_t>(L), 0.0);
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) pdiff[static_cast<std::size_t>(std::abs(i - j))] += m.at(i, j);
    double mu_d = 0.0;
    for (int k = 0; k < L; ++k) mu_d += k * pdiff[static_cast<std::size_t>(k)];
    double diff_var = 0.0;
    for (int k = 0; k < L; ++k)
        diff_var += (k - mu_d) * (k - mu_d) * pdiff[static_cast<std::size_t>(k)];
    f[9] = diff_var;

    // f11 difference entropy
    double diff_ent = 0.0;
    for (double v : pdiff)
        if (v > 0.0) diff_ent -= v * ld(v);
    f[10] = diff_ent;

    // f12/f13 information measures of correlation, with explicit
    // HXY1 = -sum p(i,j) log(px(i) py(j)) and
    // HXY2 = -sum px(i) py(j) log(px(i) py(j)).
    double hx = 0.0, hy = 0.0;
    for (int i = 0; i < L; ++i) {
        if (px[i] > 0.0) hx -= px[i] * ld(px[i]);
        if (py[i] > 0.0) hy -= py[i] * ld(py[i]);
    }
    double hxy1 = 0.0, hxy2 = 0.0;
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) {
            const double prod = px[i] * py[j];
            if (m.at(i, j) > 0.0 && prod > 0.0) hxy1 -= m.at(i, j) * ld(prod);
            if (prod > 0.0) hxy2 -= prod * ld(prod);
        }
    const double hmax = std::max(hx, hy);
    f[11] = hmax > 0.0 ? (entropy - hxy1) / hmax : 0.0;
    // exponent applied to the bit-valued difference, matching the library
    const double radicand = 1.0 - std::exp(-2.0 * (hxy2 - entropy));
    f[12] = std::sqrt(std::max(0.0, radicand));

    // f14 trace
    double trace = 0.0;
    for (int i = 0; i < L; ++i) trace += m.at(i, i);
    f[13] = trace;

    return f;
}

} // namespace oracle
