#pragma once

#include "cepstra/table.hpp"

#include <string>
#include <vector>

namespace cepstra {

/// Pearson correlation between a feature column and the labels. Either
/// side having zero variance yields 0 (degenerate set when provided).
double pearson(const std::vector<double>& x, const std::vector<double>& y,
               bool* degenerate = nullptr);

/// Plug-in mutual information estimate, in nats, between a continuous
/// feature and integer class labels. The feature is discretized into 10
/// equal-frequency bins (ties broken by original index, so the estimate
/// is invariant under strictly monotone transforms); the result is
/// clamped to be non-negative. A constant feature yields exactly 0.
/// Fewer than 20 samples is a data error.
double mutual_information(const std::vector<double>& x, const std::vector<int>& y);

inline constexpr int kMutualInformationBins = 10;
inline constexpr std::size_t kMutualInformationMinSamples = 20;

struct FeatureRanking {
    std::string feature;
    double pearson_r = 0.0;
    double mutual_information = 0.0;
    bool degenerate = false; // constant column: both metrics forced to 0
};

/// Score every canonical feature column of a labeled table against the
/// labels and sort by |pearson_r| descending, ties by name ascending.
/// Bookkeeping (valid/flag) columns are skipped.
std::vector<FeatureRanking> rank_features(const FeatureTable& table);

/// First k rows by |pearson_r| descending (name-ascending ties); k is
/// clamped to the available row count.
std::vector<FeatureRanking> top_k_by_abs_r(const std::vector<FeatureRanking>& rankings, int k);

/// First k rows by mutual information descending (name-ascending ties).
std::vector<FeatureRanking> top_k_by_mi(const std::vector<FeatureRanking>& rankings, int k);

/// Write `feature,pearson_r,mutual_information` rows, preceded by `# `
/// comment lines when given.
void write_ranking_csv(const std::string& path, const std::vector<FeatureRanking>& rankings,
                       const std::vector<std::string>& comments = {});

std::vector<FeatureRanking> read_ranking_csv(const std::string& path);

} // namespace cepstra
