#include "cepstra/analysis.hpp"

#include "cepstra/csv.hpp"
#include "cepstra/errors.hpp"
#include "cepstra/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <numeric>
#include <unordered_set>

namespace cepstra {

double pearson(const std::vector<double>& x, const std::vector<double>& y, bool* degenerate) {
    if (x.size() != y.size()) throw ContractError("pearson: size mismatch");
    if (x.size() < 2) throw ContractError("pearson: need at least 2 samples");
    if (degenerate) *degenerate = false;
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    return sxy / std::sqrt(sxx * syy);
}

double mutual_information(const std::vector<double>& x, const std::vector<int>& y) {
    if (x.size() != y.size()) throw ContractError("mutual_information: size mismatch");
    const std::size_t n = x.size();
    if (n < kMutualInformationMinSamples)
        throw DataError("mutual_information: need at least " +
                        std::to_string(kMutualInformationMinSamples) + " samples, got " +
                        std::to_string(n));

    const double first = x[0];
    bool constant = true;
    for (const double v : x) {
        if (v != first) {
            constant = false;
            break;
        }
    }
    if (constant) return 0.0;

    // Equal-frequency binning on the (value, index) order: stable under
    // ties and under any strictly increasing transform of x.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&x](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return a < b;
    });
    std::vector<int> xbin(n);
    for (std::size_t pos = 0; pos < n; ++pos)
        xbin[order[pos]] = static_cast<int>(pos * kMutualInformationBins / n);

    std::map<int, int> class_index;
    for (const int label : y) class_index.emplace(label, static_cast<int>(class_index.size()));
    const std::size_t n_classes = class_index.size();

    std::vector<double> joint(kMutualInformationBins * n_classes, 0.0);
    std::vector<double> px(kMutualInformationBins, 0.0);
    std::vector<double> py(n_classes, 0.0);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int b = xbin[i];
        const int c = class_index.at(y[i]);
        joint[b * n_classes + c] += inv_n;
        px[b] += inv_n;
        py[c] += inv_n;
    }

    double mi = 0.0;
    for (int b = 0; b < kMutualInformationBins; ++b) {
        for (std::size_t c = 0; c < n_classes; ++c) {
            const double pxy = joint[b * n_classes + c];
            if (pxy <= 0.0) continue;
            mi += pxy * std::log(pxy / (px[b] * py[c]));
        }
    }
    return std::max(0.0, mi);
}

std::vector<FeatureRanking> rank_features(const FeatureTable& table) {
    if (!table.has_labels) throw ContractError("rank_features: table has no labels");
    const std::vector<std::string>& flags = flag_column_names();
    const std::unordered_set<std::string> flag_set(flags.begin(), flags.end());
    std::vector<double> y(table.labels.begin(), table.labels.end());
    std::vector<FeatureRanking> out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (flag_set.count(table.columns[c])) continue; // extraction bookkeeping
        FeatureRanking r;
        r.feature = table.columns[c];
        r.pearson_r = pearson(table.values[c], y, &r.degenerate);
        r.mutual_information = mutual_information(table.values[c], table.labels);
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [](const FeatureRanking& a, const FeatureRanking& b) {
        const double aa = std::fabs(a.pearson_r);
        const double bb = std::fabs(b.pearson_r);
        if (aa != bb) return aa > bb;
        return a.feature < b.feature;
    });
    return out;
}

std::vector<FeatureRanking> top_k_by_abs_r(const std::vector<FeatureRanking>& rankings, int k) {
    std::vector<FeatureRanking> out = rankings;
    std::sort(out.begin(), out.end(), [](const FeatureRanking& a, const FeatureRanking& b) {
        const double aa = std::fabs(a.pearson_r);
        const double bb = std::fabs(b.pearson_r);
        if (aa != bb) return aa > bb;
        return a.feature < b.feature;
    });
    if (k >= 0 && out.size() > static_cast<std::size_t>(k)) out.resize(static_cast<std::size_t>(k));
    return out;
}

std::vector<FeatureRanking> top_k_by_mi(const std::vector<FeatureRanking>& rankings, int k) {
    std::vector<FeatureRanking> out = rankings;
    std::sort(out.begin(), out.end(), [](const FeatureRanking& a, const FeatureRanking& b) {
        if (a.mutual_information != b.mutual_information)
            return a.mutual_information > b.mutual_information;
        return a.feature < b.feature;
    });
    if (k >= 0 && out.size() > static_cast<std::size_t>(k)) out.resize(static_cast<std::size_t>(k));
    return out;
}

void write_ranking_csv(const std::string& path, const std::vector<FeatureRanking>& rankings,
                       const std::vector<std::string>& comments) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open for writing: " + path);
    for (const std::string& c : comments) out << "# " << c << "\n";
    out << "feature,pearson_r,mutual_information\n";
    for (const FeatureRanking& r : rankings)
        out << csv_quote(r.feature) << ',' << format_double(r.pearson_r) << ','
            << format_double(r.mutual_information) << "\n";
    if (!out) throw DataError("write failed: " + path);
}

std::vector<FeatureRanking> read_ranking_csv(const std::string& path) {
    const std::vector<std::vector<std::string>> rows = read_csv_rows(path);
    if (rows.empty()) throw DataError("empty ranking file: " + path);
    const std::vector<std::string> expected = {"feature", "pearson_r", "mutual_information"};
    if (rows[0] != expected) throw DataError("unexpected ranking header in " + path);
    std::vector<FeatureRanking> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 3)
            throw DataError("ranking row " + std::to_string(i) + " malformed in " + path);
        FeatureRanking r;
        r.feature = rows[i][0];
        r.pearson_r = parse_double(rows[i][1], path + " pearson_r");
        r.mutual_information = parse_double(rows[i][2], path + " mutual_information");
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace cepstra
