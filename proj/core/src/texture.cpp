#include "cepstra/texture.hpp"
#include "cepstra/errors.hpp"

#include <cmath>

namespace cepstra {

namespace {

double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

} // namespace

std::pair<int, int> direction_offset(Direction d) {
    switch (d) {
    case Direction::Deg0: return {0, 1};
    case Direction::Deg45: return {-1, 1};
    case Direction::Deg90: return {-1, 0};
    case Direction::Deg135: return {-1, -1};
    }
    return {0, 1};
}

CooccurrenceMatrix glcm(const QuantizedPlane& q, Direction direction) {
    if (q.levels < 2) throw ContractError("glcm: need at least 2 gray levels");

    CooccurrenceMatrix m;
    m.levels = q.levels;
    m.direction = direction;
    m.p.assign(static_cast<std::size_t>(q.levels) * q.levels, 0.0);

    const auto [dr, dc] = direction_offset(direction);
    std::size_t pairs = 0;
    for (int r = 0; r < q.height; ++r) {
        const int r2 = r + dr;
        if (r2 < 0 || r2 >= q.height) continue;
        for (int c = 0; c < q.width; ++c) {
            const int c2 = c + dc;
            if (c2 < 0 || c2 >= q.width) continue;
            const int a = q.at(r, c), b = q.at(r2, c2);
            m.at(a, b) += 1.0;
            m.at(b, a) += 1.0; // symmetrize
            ++pairs;
        }
    }
    if (pairs == 0)
        throw DataError("glcm: plane too small for direction offset");

    const double norm = 1.0 / (2.0 * static_cast<double>(pairs));
    for (auto& v : m.p) v *= norm;
    return m;
}

std::array<double, 13> haralick13(const CooccurrenceMatrix& m) {
    const int L = m.levels;
    std::vector<double> px(L, 0.0), py(L, 0.0);
    std::vector<double> p_sum(2 * L - 1, 0.0); // index i+j
    std::vector<double> p_diff(L, 0.0);        // index |i-j|

    double energy = 0.0, entropy = 0.0, homogeneity = 0.0, cross = 0.0;
    for (int i = 0; i < L; ++i) {
        const double* row = m.p.data() + static_cast<std::size_t>(i) * L;
        for (int j = 0; j < L; ++j) {
            const double p = row[j];
            if (p == 0.0) continue;
            px[i] += p;
            py[j] += p;
            p_sum[i + j] += p;
            p_diff[std::abs(i - j)] += p;
            energy += p * p;
            entropy -= p * std::log2(p);
            homogeneity += p / (1.0 + static_cast<double>(i - j) * (i - j));
            cross += static_cast<double>(i) * j * p;
        }
    }

    double mu_x = 0.0, mu_y = 0.0;
    for (int i = 0; i < L; ++i) {
        mu_x += i * px[i];
        mu_y += i * py[i];
    }
    double var_x = 0.0, var_y = 0.0, hx = 0.0, hy = 0.0;
    for (int i = 0; i < L; ++i) {
        var_x += (i - mu_x) * (i - mu_x) * px[i];
        var_y += (i - mu_y) * (i - mu_y) * py[i];
        hx -= xlog2x(px[i]);
        hy -= xlog2x(py[i]);
    }

    const double sd_x = std::sqrt(var_x), sd_y = std::sqrt(var_y);
    const double correlation = (sd_x > 0.0 && sd_y > 0.0)
                                   ? (cross - mu_x * mu_y) / (sd_x * sd_y)
                                   : 0.0;

    // sum of squares: the per-index variance of the joint, which reduces
    // to the marginal variance
    const double variance = var_x;

    double sum_average = 0.0, sum_entropy = 0.0;
    for (int k = 0; k < 2 * L - 1; ++k) {
        sum_average += k * p_sum[k];
        sum_entropy -= xlog2x(p_sum[k]);
    }
    double sum_variance = 0.0;
    for (int k = 0; k < 2 * L - 1; ++k)
        sum_variance += (k - sum_average) * (k - sum_average) * p_sum[k];

    double contrast = 0.0, diff_mean = 0.0, diff_entropy = 0.0;
    for (int k = 0; k < L; ++k) {
        contrast += static_cast<double>(k) * k * p_diff[k];
        diff_mean += k * p_diff[k];
        diff_entropy -= xlog2x(p_diff[k]);
    }
    double difference_variance = 0.0;
    for (int k = 0; k < L; ++k)
        difference_variance += (k - diff_mean) * (k - diff_mean) * p_diff[k];

    // HXY1 and HXY2 both reduce to HX + HY, so the information measures
    // only need the marginal entropies and the joint entropy
    const double hmax = std::max(hx, hy);
    const double imc1 = hmax > 0.0 ? (entropy - hx - hy) / hmax : 0.0;
    const double imc2 =
        std::sqrt(std::max(0.0, 1.0 - std::exp(-2.0 * (hx + hy - entropy))));

    return {energy,       contrast,    correlation,         variance,
            homogeneity,  sum_average, sum_variance,        sum_entropy,
            entropy,      difference_variance, diff_entropy, imc1,
            imc2};
}

double glcm_trace(const CooccurrenceMatrix& m) {
    double t = 0.0;
    for (int i = 0; i < m.levels; ++i) t += m.at(i, i);
    return t;
}

DirectionalFeatureSet directional_features(const QuantizedPlane& q) {
    if (q.width < 2 || q.height < 2)
        throw ContractError("directional_features: plane must admit all four directions");

    DirectionalFeatureSet out{};
    for (int d = 0; d < 4; ++d) {
        const auto m = glcm(q, kAllDirections[d]);
        const auto h = haralick13(m);
        for (int f = 0; f < 13; ++f) out.per_direction[d][f] = h[f];
        out.per_direction[d][13] = glcm_trace(m);
    }

    for (int f = 0; f < kTextureFeatureCount; ++f) {
        const double v0 = out.per_direction[0][f], v1 = out.per_direction[1][f];
        const double v2 = out.per_direction[2][f], v3 = out.per_direction[3][f];
        // pairwise sum keeps the all-equal case exact
        const double mean = ((v0 + v1) + (v2 + v3)) / 4.0;
        const double abs_max =
            std::max(std::max(std::abs(v0), std::abs(v1)), std::max(std::abs(v2), std::abs(v3)));
        out.mean[f] = mean;
        if (mean == 0.0) {
            out.directionality[f] = 1.0;
            out.degenerate[f] = true;
        } else {
            out.directionality[f] = abs_max / std::abs(mean);
            out.degenerate[f] = false;
        }
    }
    return out;
}

} // namespace cepstra
