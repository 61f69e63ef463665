#include "cepstra/learn.hpp"

#include "cepstra/csv.hpp"
#include "cepstra/errors.hpp"
#include "cepstra/features.hpp"
#include "cepstra/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace cepstra {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

/// Group rows by lesion: multi-image lesions all go to the keep side,
/// single-image lesions are class-stratified and round(fraction) of each
/// class moves to the held-out side via a seeded shuffle.
DatasetSplit lesion_split(const std::vector<ManifestRow>& rows, std::uint64_t seed,
                          double fraction) {
    for (const ManifestRow& r : rows) {
        if (r.lesion_id.empty()) throw DataError("split: row " + r.image_id + " has no lesion_id");
        if (r.label != 0 && r.label != 1)
            throw DataError("split: row " + r.image_id + " has no binary label");
    }
    std::map<std::string, std::vector<std::size_t>> by_lesion;
    for (std::size_t i = 0; i < rows.size(); ++i) by_lesion[rows[i].lesion_id].push_back(i);

    std::array<std::vector<std::string>, 2> unique_pool; // image ids per class
    for (const auto& [lesion, members] : by_lesion) {
        if (members.size() == 1) {
            const ManifestRow& r = rows[members[0]];
            unique_pool[r.label].push_back(r.image_id);
        }
    }
    if (unique_pool[0].empty() || unique_pool[1].empty())
        throw DataError("split: stratification needs single-image lesions of both classes");

    Rng rng(seed);
    std::set<std::string> held_out;
    for (int c = 0; c < 2; ++c) {
        std::vector<std::string>& pool = unique_pool[c];
        std::sort(pool.begin(), pool.end());
        rng.shuffle(pool);
        const std::size_t k = static_cast<std::size_t>(
            std::floor(fraction * static_cast<double>(pool.size()) + 0.5));
        for (std::size_t i = 0; i < k; ++i) held_out.insert(pool[i]);
    }

    DatasetSplit split;
    split.seed = seed;
    for (const ManifestRow& r : rows) {
        if (held_out.count(r.image_id))
            split.test_ids.push_back(r.image_id);
        else
            split.train_ids.push_back(r.image_id);
    }
    return split;
}

} // namespace

DatasetSplit split_dataset(const std::vector<ManifestRow>& rows, std::uint64_t seed,
                           double test_fraction) {
    return lesion_split(rows, seed, test_fraction);
}

std::pair<std::vector<std::string>, std::vector<std::string>>
carve_validation(const std::vector<ManifestRow>& rows, std::uint64_t seed) {
    const DatasetSplit s = lesion_split(rows, seed, 0.25);
    return {s.train_ids, s.test_ids};
}

double DecisionTree::output(const std::vector<double>& row) const {
    int idx = 0;
    while (!nodes[idx].is_leaf())
        idx = row[nodes[idx].feature] < nodes[idx].threshold ? nodes[idx].left : nodes[idx].right;
    return nodes[idx].leaf;
}

namespace {

struct TreeBuilder {
    const std::vector<const std::vector<double>*>& cols;
    const std::vector<double>& grad;
    const std::vector<double>& hess;
    const GbmParams& p;
    std::vector<TreeNode> nodes;

    int build(std::vector<int>& samples, int depth) {
        double g_sum = 0.0, h_sum = 0.0;
        for (const int i : samples) {
            g_sum += grad[i];
            h_sum += hess[i];
        }
        const int node_idx = static_cast<int>(nodes.size());
        nodes.emplace_back();

        if (depth < p.depth && samples.size() >= 2) {
            double best_gain = 0.0, best_thr = 0.0;
            int best_feature = -1;
            const double parent_score = g_sum * g_sum / (h_sum + p.lambda);
            std::vector<std::pair<double, int>> order(samples.size());
            for (std::size_t f = 0; f < cols.size(); ++f) {
                const std::vector<double>& col = *cols[f];
                for (std::size_t i = 0; i < samples.size(); ++i)
                    order[i] = {col[samples[i]], samples[i]};
                std::sort(order.begin(), order.end());
                double gl = 0.0, hl = 0.0;
                for (std::size_t i = 0; i + 1 < order.size(); ++i) {
                    gl += grad[order[i].second];
                    hl += hess[order[i].second];
                    if (order[i].first == order[i + 1].first) continue;
                    const double hr = h_sum - hl;
                    if (hl < p.min_child_weight || hr < p.min_child_weight) continue;
                    const double gr = g_sum - gl;
                    const double gain = 0.5 * (gl * gl / (hl + p.lambda) +
                                               gr * gr / (hr + p.lambda) - parent_score);
                    if (gain > best_gain) {
                        best_gain = gain;
                        best_feature = static_cast<int>(f);
                        best_thr = order[i].first + (order[i + 1].first - order[i].first) / 2.0;
                    }
                }
            }
            if (best_feature >= 0) {
                std::vector<int> left, right;
                const std::vector<double>& col = *cols[best_feature];
                for (const int i : samples)
                    (col[i] < best_thr ? left : right).push_back(i);
                const int l = build(left, depth + 1);
                const int r = build(right, depth + 1);
                nodes[node_idx].feature = best_feature;
                nodes[node_idx].threshold = best_thr;
                nodes[node_idx].gain = best_gain;
                nodes[node_idx].left = l;
                nodes[node_idx].right = r;
                return node_idx;
            }
        }
        nodes[node_idx].leaf = -g_sum / (h_sum + p.lambda);
        return node_idx;
    }
};

double mean_logistic_loss(const std::vector<double>& margins, const std::vector<int>& labels) {
    double loss = 0.0;
    for (std::size_t i = 0; i < margins.size(); ++i) {
        const double pr = std::clamp(sigmoid(margins[i]), 1e-15, 1.0 - 1e-15);
        loss -= labels[i] == 1 ? std::log(pr) : std::log(1.0 - pr);
    }
    return loss / static_cast<double>(margins.size());
}

} // namespace

GbmModel train_gbm(const FeatureTable& table, const std::vector<std::string>& features,
                   const GbmParams& params, std::uint64_t seed) {
    if (!table.has_labels) throw ContractError("train_gbm: table has no labels");
    if (table.ids.empty()) throw ContractError("train_gbm: empty table");
    if (features.empty()) throw ContractError("train_gbm: feature list is empty");
    std::size_t positives = 0;
    for (const int y : table.labels) positives += y == 1 ? 1 : 0;
    if (positives == 0 || positives == table.labels.size())
        throw DataError("train_gbm: both classes must be present");

    std::vector<const std::vector<double>*> cols;
    cols.reserve(features.size());
    for (const std::string& f : features) cols.push_back(&table.column(f));

    GbmModel model;
    model.params = params;
    model.seed = seed;
    model.features = features;
    const double prevalence = static_cast<double>(positives) / static_cast<double>(table.labels.size());
    model.base_score = std::log(prevalence / (1.0 - prevalence));

    const std::size_t n = table.ids.size();
    std::vector<double> margins(n, model.base_score);
    std::vector<double> grad(n), hess(n);
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);

    for (int round = 0; round < params.rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            const double pr = sigmoid(margins[i]);
            grad[i] = pr - static_cast<double>(table.labels[i]);
            hess[i] = pr * (1.0 - pr);
        }
        TreeBuilder builder{cols, grad, hess, params, {}};
        std::vector<int> samples = all;
        builder.build(samples, 0);
        DecisionTree tree{std::move(builder.nodes)};

        std::vector<double> row(features.size());
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t f = 0; f < cols.size(); ++f) row[f] = (*cols[f])[i];
            margins[i] += params.learning_rate * tree.output(row);
        }
        model.trees.push_back(std::move(tree));
        model.train_loss.push_back(mean_logistic_loss(margins, table.labels));
    }
    return model;
}

std::vector<double> GbmModel::predict(const FeatureTable& table) const {
    std::vector<const std::vector<double>*> cols;
    cols.reserve(features.size());
    for (const std::string& f : features) {
        if (!table.has_column(f)) throw DataError("predict: missing feature column: " + f);
        cols.push_back(&table.column(f));
    }
    std::vector<double> probs(table.ids.size());
    std::vector<double> row(features.size());
    for (std::size_t i = 0; i < table.ids.size(); ++i) {
        for (std::size_t f = 0; f < cols.size(); ++f) row[f] = (*cols[f])[i];
        double margin = base_score;
        for (const DecisionTree& t : trees) margin += params.learning_rate * t.output(row);
        probs[i] = sigmoid(margin);
    }
    return probs;
}

double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size()) throw ContractError("roc_auc: size mismatch");
    const std::size_t n = scores.size();
    std::size_t n_pos = 0;
    for (const int y : labels) n_pos += y == 1 ? 1 : 0;
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw DataError("roc_auc: undefined with a single class");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&scores](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] < scores[b];
        return a < b;
    });
    // Average ranks across tie groups, then the Mann-Whitney statistic.
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t t = i; t <= j; ++t)
            if (labels[order[t]] == 1) rank_sum_pos += avg_rank;
        i = j + 1;
    }
    const double np = static_cast<double>(n_pos);
    return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * static_cast<double>(n_neg));
}

Metrics compute_metrics(const std::vector<double>& probabilities, const std::vector<int>& labels,
                        double threshold) {
    if (probabilities.size() != labels.size()) throw ContractError("metrics: size mismatch");
    if (probabilities.empty()) throw ContractError("metrics: empty input");
    std::size_t correct = 0, tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        const int pred = probabilities[i] >= threshold ? 1 : 0;
        if (pred == labels[i]) ++correct;
        if (pred == 1 && labels[i] == 1) ++tp;
        if (pred == 1 && labels[i] == 0) ++fp;
        if (pred == 0 && labels[i] == 1) ++fn;
    }
    Metrics m;
    m.accuracy = static_cast<double>(correct) / static_cast<double>(probabilities.size());
    const double denom = static_cast<double>(2 * tp + fp + fn);
    m.f1 = denom > 0.0 ? 2.0 * static_cast<double>(tp) / denom : 0.0;
    m.roc_auc = roc_auc(probabilities, labels);
    return m;
}

SelectionTrace greedy_select(const FeatureTable& train, const FeatureTable& validation,
                             const std::vector<std::string>& candidates, int k,
                             const GbmParams& scorer_params, std::uint64_t seed, int jobs) {
    if (k < 1) throw ContractError("greedy_select: K must be >= 1");
    if (static_cast<std::size_t>(k) > candidates.size())
        throw ContractError("greedy_select: K exceeds candidate count");
    if (!validation.has_labels) throw ContractError("greedy_select: unlabeled validation table");

    SelectionTrace trace;
    trace.k = k;
    std::vector<std::string> selected;
    std::vector<std::string> remaining = candidates;

    for (int step = 0; step < k; ++step) {
        std::vector<double> aucs(remaining.size());
        auto evaluate = [&](std::size_t c) {
            std::vector<std::string> feats = selected;
            feats.push_back(remaining[c]);
            const GbmModel model = train_gbm(train, feats, scorer_params, seed);
            aucs[c] = roc_auc(model.predict(validation), validation.labels);
        };
        const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(remaining.size())));
        if (workers == 1) {
            for (std::size_t c = 0; c < remaining.size(); ++c) evaluate(c);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) {
                pool.emplace_back([&] {
                    for (std::size_t c = next.fetch_add(1); c < remaining.size();
                         c = next.fetch_add(1))
                        evaluate(c);
                });
            }
            for (std::thread& t : pool) t.join();
        }
        // Ordered argmax: ties go to the lexicographically smaller name.
        std::size_t best = 0;
        for (std::size_t c = 1; c < remaining.size(); ++c) {
            if (aucs[c] > aucs[best] ||
                (aucs[c] == aucs[best] && remaining[c] < remaining[best]))
                best = c;
        }
        trace.steps.push_back({remaining[best], aucs[best]});
        selected.push_back(remaining[best]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    }

    trace.best_step = 1;
    for (std::size_t s = 1; s < trace.steps.size(); ++s)
        if (trace.steps[s].val_auc > trace.steps[trace.best_step - 1].val_auc)
            trace.best_step = static_cast<int>(s) + 1;
    return trace;
}

std::vector<FeatureGain> gain_report(const GbmModel& model) {
    std::vector<double> total(model.features.size(), 0.0);
    std::vector<int> count(model.features.size(), 0);
    for (const DecisionTree& t : model.trees) {
        for (const TreeNode& n : t.nodes) {
            if (n.is_leaf()) continue;
            total[static_cast<std::size_t>(n.feature)] += n.gain;
            count[static_cast<std::size_t>(n.feature)] += 1;
        }
    }
    std::vector<FeatureGain> out(model.features.size());
    for (std::size_t f = 0; f < model.features.size(); ++f) {
        out[f].feature = model.features[f];
        out[f].splits = count[f];
        out[f].mean_gain = count[f] > 0 ? total[f] / count[f] : 0.0;
    }
    return out;
}

std::vector<std::string> modeling_columns(const FeatureTable& table) {
    const std::vector<std::string>& flags = flag_column_names();
    const std::unordered_set<std::string> flag_set(flags.begin(), flags.end());
    std::vector<std::string> out;
    for (const std::string& c : table.columns)
        if (!flag_set.count(c)) out.push_back(c);
    return out;
}

void write_selection_trace(const std::string& path, const SelectionTrace& trace,
                           const std::vector<std::string>& comments) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open for writing: " + path);
    for (const std::string& c : comments) out << "# " << c << "\n";
    out << "step,feature,val_auc\n";
    for (std::size_t s = 0; s < trace.steps.size(); ++s)
        out << (s + 1) << ',' << csv_quote(trace.steps[s].feature) << ','
            << format_double(trace.steps[s].val_auc) << "\n";
    if (!out) throw DataError("write failed: " + path);
}

namespace {

nlohmann::json tree_to_json(const DecisionTree& t) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const TreeNode& n : t.nodes) {
        nodes.push_back({{"feature", n.feature},
                         {"threshold", n.threshold},
                         {"left", n.left},
                         {"right", n.right},
                         {"leaf", n.leaf},
                         {"gain", n.gain}});
    }
    return {{"nodes", nodes}};
}

DecisionTree tree_from_json(const nlohmann::json& j) {
    DecisionTree t;
    for (const nlohmann::json& jn : j.at("nodes")) {
        TreeNode n;
        n.feature = jn.at("feature").get<int>();
        n.threshold = jn.at("threshold").get<double>();
        n.left = jn.at("left").get<int>();
        n.right = jn.at("right").get<int>();
        n.leaf = jn.at("leaf").get<double>();
        n.gain = jn.at("gain").get<double>();
        t.nodes.push_back(n);
    }
    return t;
}

} // namespace

std::string GbmModel::to_json() const {
    nlohmann::json j;
    j["format"] = "cepstra-gbm-1";
    j["params"] = {{"rounds", params.rounds},
                   {"depth", params.depth},
                   {"learning_rate", params.learning_rate},
                   {"min_child_weight", params.min_child_weight},
                   {"lambda", params.lambda}};
    j["base_score"] = base_score;
    j["seed"] = seed;
    j["features"] = features;
    j["train_loss"] = train_loss;
    nlohmann::json trees_json = nlohmann::json::array();
    for (const DecisionTree& t : trees) trees_json.push_back(tree_to_json(t));
    j["trees"] = std::move(trees_json);
    return j.dump(2);
}

GbmModel GbmModel::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("model JSON parse failed: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != "cepstra-gbm-1")
            throw DataError("unknown model format: " + j.at("format").get<std::string>());
        GbmModel m;
        const nlohmann::json& p = j.at("params");
        m.params.rounds = p.at("rounds").get<int>();
        m.params.depth = p.at("depth").get<int>();
        m.params.learning_rate = p.at("learning_rate").get<double>();
        m.params.min_child_weight = p.at("min_child_weight").get<double>();
        m.params.lambda = p.at("lambda").get<double>();
        m.base_score = j.at("base_score").get<double>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.features = j.at("features").get<std::vector<std::string>>();
        m.train_loss = j.at("train_loss").get<std::vector<double>>();
        for (const nlohmann::json& t : j.at("trees")) m.trees.push_back(tree_from_json(t));
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("model JSON schema mismatch: ") + e.what());
    }
}

void GbmModel::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open for writing: " + path);
    out << to_json() << "\n";
    if (!out) throw DataError("write failed: " + path);
}

GbmModel GbmModel::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

} // namespace cepstra
