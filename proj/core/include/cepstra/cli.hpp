#pragma once

#include "cepstra/learn.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cepstra {

/// All knobs for the batch subcommands. A flat key=value config file
/// maps onto these one-to-one; command-line flags override file values.
struct RunConfig {
    std::string manifest_path;
    std::string features_path; // empty -> <output_dir>/features.csv
    std::string output_dir = "out";
    std::uint64_t seed = 0;
    int levels = 256; // gray levels for cepstrum quantization
    int jobs = 1;
    GbmParams gbm;
    int greedy_k = 0;       // 0 disables forward selection
    int scorer_rounds = 50; // boosting rounds for the selection scorer
    std::vector<std::string> merge_csvs;
    int top_k = 20; // rows in the ranking chart views
    std::string synth_kind = "grating";
    int synth_count = 40;
    int synth_size = 96;
    double synth_period = 8.0;
};

/// FNV-1a over the canonical serialization of every config field, as 16
/// hex digits. Stamped into every artifact together with the seed.
std::string config_hash_hex(const RunConfig& config);

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitPartial = 3;

/// Extract features for every manifest row into the features CSV.
/// Failing images are logged and quarantined to a sidecar CSV; returns
/// partial-success when any row failed.
int cmd_extract(const RunConfig& config);

/// Rank features of a labeled feature CSV; writes the ranking CSV plus
/// top-K bar charts by |Pearson r| and by mutual information.
int cmd_stats(const RunConfig& config);

/// Split, optionally greedy-select, train, and evaluate; writes the
/// metrics report JSON, the model JSON, the gain report CSV, and (when
/// selection is on) the selection trace CSV and AUC-per-step chart.
/// With merge CSVs, also trains base and base-plus-cepstrum models and
/// reports the paired comparison.
int cmd_run(const RunConfig& config);

/// Generate a synthetic two-class dataset plus manifest.
int cmd_synth(const RunConfig& config);

} // namespace cepstra
