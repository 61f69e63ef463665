#include "cepstra/cli.hpp"

#include "cepstra/analysis.hpp"
#include "cepstra/csv.hpp"
#include "cepstra/errors.hpp"
#include "cepstra/features.hpp"
#include "cepstra/svg.hpp"
#include "cepstra/synth.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>
#include <unordered_set>

namespace fs = std::filesystem;

namespace cepstra {

namespace {

std::string features_path_of(const RunConfig& cfg) {
    if (!cfg.features_path.empty()) return cfg.features_path;
    return (fs::path(cfg.output_dir) / "features.csv").string();
}

std::vector<std::string> artifact_comments(const RunConfig& cfg) {
    return {"config_hash=" + config_hash_hex(cfg), "seed=" + std::to_string(cfg.seed)};
}

FeatureTable table_rows_for_ids(const FeatureTable& t, const std::vector<std::string>& ids) {
    return t.select_rows(t.rows_of(ids));
}

void write_gain_csv(const std::string& path, const std::vector<FeatureGain>& gains,
                    const std::vector<std::string>& comments) {
    std::vector<FeatureGain> sorted = gains;
    std::sort(sorted.begin(), sorted.end(), [](const FeatureGain& a, const FeatureGain& b) {
        if (a.mean_gain != b.mean_gain) return a.mean_gain > b.mean_gain;
        return a.feature < b.feature;
    });
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open for writing: " + path);
    for (const std::string& c : comments) out << "# " << c << "\n";
    out << "feature,mean_gain,splits\n";
    for (const FeatureGain& g : sorted)
        out << csv_quote(g.feature) << ',' << format_double(g.mean_gain) << ',' << g.splits
            << "\n";
    if (!out) throw DataError("write failed: " + path);
}

nlohmann::json metrics_json(const Metrics& m, std::size_t n_features) {
    return {{"features_used", n_features},
            {"accuracy", m.accuracy},
            {"f1", m.f1},
            {"roc_auc", m.roc_auc}};
}

} // namespace

std::string config_hash_hex(const RunConfig& cfg) {
    std::string canon;
    canon += "manifest=" + cfg.manifest_path + "\n";
    canon += "features=" + cfg.features_path + "\n";
    canon += "out=" + cfg.output_dir + "\n";
    canon += "seed=" + std::to_string(cfg.seed) + "\n";
    canon += "levels=" + std::to_string(cfg.levels) + "\n";
    canon += "jobs=" + std::to_string(cfg.jobs) + "\n";
    canon += "rounds=" + std::to_string(cfg.gbm.rounds) + "\n";
    canon += "depth=" + std::to_string(cfg.gbm.depth) + "\n";
    canon += "learning_rate=" + format_double(cfg.gbm.learning_rate) + "\n";
    canon += "min_child_weight=" + format_double(cfg.gbm.min_child_weight) + "\n";
    canon += "lambda=" + format_double(cfg.gbm.lambda) + "\n";
    canon += "greedy_k=" + std::to_string(cfg.greedy_k) + "\n";
    canon += "scorer_rounds=" + std::to_string(cfg.scorer_rounds) + "\n";
    canon += "merge=";
    for (std::size_t i = 0; i < cfg.merge_csvs.size(); ++i)
        canon += (i ? "," : "") + cfg.merge_csvs[i];
    canon += "\n";
    canon += "top_k=" + std::to_string(cfg.top_k) + "\n";
    canon += "kind=" + cfg.synth_kind + "\n";
    canon += "count=" + std::to_string(cfg.synth_count) + "\n";
    canon += "size=" + std::to_string(cfg.synth_size) + "\n";
    canon += "period=" + format_double(cfg.synth_period) + "\n";

    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int cmd_extract(const RunConfig& cfg) {
    if (cfg.manifest_path.empty()) throw UsageError("extract: --manifest is required");
    const std::vector<ManifestRow> rows = read_manifest(cfg.manifest_path);
    if (rows.empty()) throw UsageError("extract: manifest has no rows: " + cfg.manifest_path);
    fs::create_directories(cfg.output_dir);

    struct Slot {
        FeatureVector vec;
        std::string error;
        bool ok = false;
    };
    std::vector<Slot> slots(rows.size());
    const int workers =
        std::max(1, std::min<int>(cfg.jobs, static_cast<int>(rows.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1)) {
            try {
                FeatureVector v = extract_image(rows[i].image_path, rows[i].mask_path, cfg.levels);
                v.image_id = rows[i].image_id;
                v.label = rows[i].label;
                slots[i].vec = std::move(v);
                slots[i].ok = true;
            } catch (const Error& e) {
                slots[i].error = e.what();
            } catch (const std::exception& e) {
                slots[i].error = e.what();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }

    std::vector<FeatureVector> ok_vectors;
    std::vector<std::pair<std::string, std::string>> failures;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (slots[i].ok) {
            std::cerr << "[extract] " << (i + 1) << "/" << rows.size() << " " << rows[i].image_id
                      << " ok\n";
            ok_vectors.push_back(std::move(slots[i].vec));
        } else {
            std::cerr << "[extract] " << (i + 1) << "/" << rows.size() << " " << rows[i].image_id
                      << " FAILED: " << slots[i].error << "\n";
            failures.emplace_back(rows[i].image_id, slots[i].error);
        }
    }

    const FeatureTable table = feature_table_from_vectors(ok_vectors);
    write_table(table, features_path_of(cfg), artifact_comments(cfg));

    if (!failures.empty()) {
        const std::string qpath = (fs::path(cfg.output_dir) / "quarantine.csv").string();
        std::ofstream q(qpath, std::ios::binary);
        if (!q) throw DataError("cannot open for writing: " + qpath);
        for (const std::string& c : artifact_comments(cfg)) q << "# " << c << "\n";
        q << "image_id,error\n";
        for (const auto& [id, err] : failures) q << csv_quote(id) << ',' << csv_quote(err) << "\n";
        std::cerr << "[extract] " << failures.size() << " of " << rows.size()
                  << " images quarantined to " << qpath << "\n";
        return kExitPartial;
    }
    return kExitSuccess;
}

int cmd_stats(const RunConfig& cfg) {
    const std::string fpath = features_path_of(cfg);
    const FeatureTable t = read_table(fpath);
    if (!t.has_labels) throw UsageError("stats: feature table has no label column: " + fpath);
    fs::create_directories(cfg.output_dir);

    const std::vector<FeatureRanking> rankings = rank_features(t);
    const std::vector<std::string> comments = artifact_comments(cfg);
    write_ranking_csv((fs::path(cfg.output_dir) / "ranking.csv").string(), rankings, comments);

    std::vector<BarDatum> r_bars;
    for (const FeatureRanking& r : top_k_by_abs_r(rankings, cfg.top_k))
        r_bars.push_back({r.feature, r.pearson_r});
    write_bar_chart_svg((fs::path(cfg.output_dir) / "top_pearson.svg").string(),
                        "Top " + std::to_string(r_bars.size()) + " features by |Pearson r|",
                        r_bars, comments);

    std::vector<BarDatum> mi_bars;
    for (const FeatureRanking& r : top_k_by_mi(rankings, cfg.top_k))
        mi_bars.push_back({r.feature, r.mutual_information});
    write_bar_chart_svg((fs::path(cfg.output_dir) / "top_mi.svg").string(),
                        "Top " + std::to_string(mi_bars.size()) + " features by mutual information",
                        mi_bars, comments);

    std::cerr << "[stats] ranked " << rankings.size() << " features\n";
    return kExitSuccess;
}

int cmd_run(const RunConfig& cfg) {
    if (cfg.manifest_path.empty()) throw UsageError("run: --manifest is required");
    const std::vector<ManifestRow> all_rows = read_manifest(cfg.manifest_path);
    const std::string fpath = features_path_of(cfg);
    const FeatureTable base_table = read_table(fpath);
    if (!base_table.has_labels)
        throw UsageError("run: feature table has no label column: " + fpath);
    fs::create_directories(cfg.output_dir);
    const std::vector<std::string> comments = artifact_comments(cfg);

    const std::vector<std::string> cepstral_cols = modeling_columns(base_table);

    FeatureTable table = base_table;
    std::vector<std::string> merged_cols;
    for (const std::string& mpath : cfg.merge_csvs) {
        const FeatureTable m = read_table(mpath);
        for (const std::string& c : m.columns) merged_cols.push_back(c);
        table = merge_tables(table, m);
    }

    // Restrict modeling to manifest rows that survived extraction.
    const std::unordered_set<std::string> table_ids(table.ids.begin(), table.ids.end());
    std::vector<ManifestRow> rows;
    for (const ManifestRow& r : all_rows)
        if (table_ids.count(r.image_id)) rows.push_back(r);
    if (rows.empty())
        throw DataError("run: no manifest rows have feature rows in " + fpath);
    if (rows.size() < all_rows.size())
        std::cerr << "[run] " << (all_rows.size() - rows.size())
                  << " manifest rows have no feature row; skipping them\n";

    const DatasetSplit split = split_dataset(rows, cfg.seed);
    const FeatureTable train_t = table_rows_for_ids(table, split.train_ids);
    const FeatureTable test_t = table_rows_for_ids(table, split.test_ids);
    std::cerr << "[run] split: " << split.train_ids.size() << " train / "
              << split.test_ids.size() << " test\n";

    std::vector<std::string> main_cols =
        cfg.merge_csvs.empty() ? cepstral_cols : modeling_columns(table);

    nlohmann::json report;
    report["format"] = "cepstra-report-1";
    report["config_hash"] = config_hash_hex(cfg);
    report["seed"] = cfg.seed;
    report["split"] = {{"train", split.train_ids.size()}, {"test", split.test_ids.size()}};

    if (cfg.greedy_k > 0) {
        if (static_cast<std::size_t>(cfg.greedy_k) > main_cols.size())
            throw UsageError("run: greedy_k exceeds the " + std::to_string(main_cols.size()) +
                             " candidate features");
        std::unordered_set<std::string> train_id_set(split.train_ids.begin(),
                                                     split.train_ids.end());
        std::vector<ManifestRow> train_rows;
        for (const ManifestRow& r : rows)
            if (train_id_set.count(r.image_id)) train_rows.push_back(r);
        const auto [fit_ids, val_ids] = carve_validation(train_rows, cfg.seed);
        const FeatureTable fit_t = table_rows_for_ids(table, fit_ids);
        const FeatureTable val_t = table_rows_for_ids(table, val_ids);
        std::cerr << "[run] selection: " << fit_ids.size() << " fit / " << val_ids.size()
                  << " validation, K=" << cfg.greedy_k << "\n";

        GbmParams scorer = cfg.gbm;
        scorer.rounds = cfg.scorer_rounds;
        const SelectionTrace trace = greedy_select(fit_t, val_t, main_cols, cfg.greedy_k, scorer,
                                                   cfg.seed, cfg.jobs);
        write_selection_trace((fs::path(cfg.output_dir) / "selection_trace.csv").string(), trace,
                              comments);
        std::vector<double> xs, ys;
        for (std::size_t s = 0; s < trace.steps.size(); ++s) {
            xs.push_back(static_cast<double>(s + 1));
            ys.push_back(trace.steps[s].val_auc);
        }
        write_line_chart_svg((fs::path(cfg.output_dir) / "selection_auc.svg").string(),
                             "Validation AUC per selection step", "step", "validation AUC", xs, ys,
                             comments);

        main_cols.clear();
        for (int s = 0; s < trace.best_step; ++s) main_cols.push_back(trace.steps[s].feature);
        report["selection"] = {{"k", trace.k},
                               {"best_step", trace.best_step},
                               {"best_val_auc", trace.steps[trace.best_step - 1].val_auc},
                               {"selected", main_cols}};
    }

    const GbmModel model = train_gbm(train_t, main_cols, cfg.gbm, cfg.seed);
    const Metrics m = compute_metrics(model.predict(test_t), test_t.labels);
    model.save((fs::path(cfg.output_dir) / "model.json").string());
    write_gain_csv((fs::path(cfg.output_dir) / "gain_report.csv").string(), gain_report(model),
                   comments);

    report["main"] = metrics_json(m, main_cols.size());
    std::cerr << "[run] test accuracy=" << m.accuracy << " f1=" << m.f1 << " auc=" << m.roc_auc
              << "\n";

    if (!cfg.merge_csvs.empty()) {
        const GbmModel base_model = train_gbm(train_t, merged_cols, cfg.gbm, cfg.seed);
        const Metrics base_m = compute_metrics(base_model.predict(test_t), test_t.labels);

        std::vector<std::string> aug_cols = merged_cols;
        aug_cols.insert(aug_cols.end(), cepstral_cols.begin(), cepstral_cols.end());
        const GbmModel aug_model = train_gbm(train_t, aug_cols, cfg.gbm, cfg.seed);
        const Metrics aug_m = compute_metrics(aug_model.predict(test_t), test_t.labels);

        report["comparison"] = {
            {"base", metrics_json(base_m, merged_cols.size())},
            {"base_plus_cepstrum", metrics_json(aug_m, aug_cols.size())},
            {"auc_delta", aug_m.roc_auc - base_m.roc_auc},
            {"augmented_not_worse", aug_m.roc_auc >= base_m.roc_auc},
        };
        std::cerr << "[run] base auc=" << base_m.roc_auc
                  << " base+cepstrum auc=" << aug_m.roc_auc << "\n";
    }

    const std::string rpath = (fs::path(cfg.output_dir) / "report.json").string();
    std::ofstream rout(rpath, std::ios::binary);
    if (!rout) throw DataError("cannot open for writing: " + rpath);
    rout << report.dump(2) << "\n";
    if (!rout) throw DataError("write failed: " + rpath);
    return kExitSuccess;
}

int cmd_synth(const RunConfig& cfg) {
    SynthParams p;
    p.kind = parse_synth_kind(cfg.synth_kind);
    p.count = cfg.synth_count;
    p.size = cfg.synth_size;
    p.period = cfg.synth_period;
    p.seed = cfg.seed;
    fs::create_directories(cfg.output_dir);
    const std::vector<ManifestRow> rows = generate_synth_dataset(p, cfg.output_dir);
    write_manifest(rows, (fs::path(cfg.output_dir) / "manifest.csv").string(),
                   artifact_comments(cfg));
    std::cerr << "[synth] wrote " << rows.size() << " image+mask pairs under " << cfg.output_dir
              << "\n";
    return kExitSuccess;
}

} // namespace cepstra
