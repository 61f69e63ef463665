#pragma once

#include "cepstra/table.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cepstra {

/// Train/test split at the lesion level: a lesion's images never straddle
/// the two sides, and lesions with more than one image go entirely to
/// train.
struct DatasetSplit {
    std::vector<std::string> train_ids;
    std::vector<std::string> test_ids;
    std::uint64_t seed = 0;
};

/// Multi-image lesions go to train wholesale; single-image lesions are
/// pooled per class and a seeded shuffle sends round(20%) of each class
/// to test. Both classes must be present in the single-image pool.
DatasetSplit split_dataset(const std::vector<ManifestRow>& rows, std::uint64_t seed,
                           double test_fraction = 0.2);

struct GbmParams {
    int rounds = 200;
    int depth = 3;
    double learning_rate = 0.1;
    double min_child_weight = 1.0;
    double lambda = 1.0;
};

struct TreeNode {
    int feature = -1; // index into the model's feature list; -1 for leaves
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double leaf = 0.0;
    double gain = 0.0; // split gain, internal nodes only
    bool is_leaf() const { return feature < 0; }
};

struct DecisionTree {
    std::vector<TreeNode> nodes; // nodes[0] is the root
    double output(const std::vector<double>& row) const;
};

/// Gradient-boosted trees for binary classification on logistic loss.
/// Newton boosting with exact greedy split search, L2 leaf
/// regularization, and no subsampling; training is deterministic given
/// the input order. Margin = base_score + lr * sum(tree outputs).
class GbmModel {
public:
    GbmParams params;
    double base_score = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::string> features;  // training schema, in training order
    std::vector<DecisionTree> trees;
    std::vector<double> train_loss; // mean logistic loss after each round

    /// Per-row probability of the positive class; columns are looked up
    /// by name, so column order of the table is irrelevant. A missing
    /// feature column is a data error naming the column.
    std::vector<double> predict(const FeatureTable& table) const;

    std::string to_json() const;
    static GbmModel from_json(const std::string& text);
    void save(const std::string& path) const;
    static GbmModel load(const std::string& path);
};

/// Train on the listed feature columns of a labeled table. Both classes
/// must be present.
GbmModel train_gbm(const FeatureTable& table, const std::vector<std::string>& features,
                   const GbmParams& params, std::uint64_t seed);

struct Metrics {
    double accuracy = 0.0;
    double f1 = 0.0; // positive class
    double roc_auc = 0.0;
};

/// Accuracy and positive-class F1 at the threshold (score >= threshold
/// predicts positive), plus ROC AUC by the Mann-Whitney rank statistic
/// with ties counted 0.5. AUC needs both classes present.
Metrics compute_metrics(const std::vector<double>& probabilities, const std::vector<int>& labels,
                        double threshold = 0.5);

/// AUC alone, same convention.
double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

struct SelectionStep {
    std::string feature;
    double val_auc = 0.0;
};

struct SelectionTrace {
    std::vector<SelectionStep> steps; // in selection order
    int k = 0;
    /// 1-based index of the best prefix (highest val AUC; earliest wins ties).
    int best_step = 0;
};

/// Greedy forward selection: at each step train the scorer on the current
/// set plus each remaining candidate and keep the candidate with the
/// best validation AUC (ties broken by feature name). Runs to exactly K
/// steps even through non-positive improvements. `jobs` > 1 evaluates
/// candidates concurrently; the argmax reduction stays deterministic.
SelectionTrace greedy_select(const FeatureTable& train, const FeatureTable& validation,
                             const std::vector<std::string>& candidates, int k,
                             const GbmParams& scorer_params, std::uint64_t seed, int jobs = 1);

/// Split labeled rows 75:25 by lesion into (train, validation) for the
/// selection loop, stratified by class over single-image lesions with
/// multi-image lesions kept in train.
std::pair<std::vector<std::string>, std::vector<std::string>>
carve_validation(const std::vector<ManifestRow>& rows, std::uint64_t seed);

struct FeatureGain {
    std::string feature;
    double mean_gain = 0.0;
    int splits = 0;
};

/// Mean split gain per schema feature over all splits using it; features
/// never used by any tree report 0. Order follows the model schema.
std::vector<FeatureGain> gain_report(const GbmModel& model);

/// All table columns that hold model-ready features, i.e. everything
/// except the extraction bookkeeping (validity/degeneracy) columns.
std::vector<std::string> modeling_columns(const FeatureTable& table);

void write_selection_trace(const std::string& path, const SelectionTrace& trace,
                           const std::vector<std::string>& comments = {});

} // namespace cepstra
