#include "cepstra/cli.hpp"
#include "cepstra/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    cepstra::RunConfig cfg;
    CLI::App app{"Cepstral texture features: batch extraction, ranking, and "
                 "boosted-tree evaluation for masked images"};
    app.set_config("--config", "", "flat key=value config file; flags override file values");
    app.require_subcommand(1);

    app.add_option("--manifest", cfg.manifest_path,
                   "dataset manifest CSV (image_id,image_path,mask_path,label,lesion_id)");
    app.add_option("--features", cfg.features_path,
                   "feature CSV path (default: <out>/features.csv)");
    app.add_option("--out", cfg.output_dir, "output directory")->capture_default_str();
    app.add_option("--seed", cfg.seed, "run seed, stamped into every artifact")
        ->capture_default_str();
    app.add_option("--levels", cfg.levels, "gray levels for cepstrum quantization")
        ->capture_default_str();
    app.add_option("--jobs", cfg.jobs, "worker threads for extraction and selection")
        ->capture_default_str();
    app.add_option("--rounds", cfg.gbm.rounds, "boosting rounds")->capture_default_str();
    app.add_option("--depth", cfg.gbm.depth, "maximum tree depth")->capture_default_str();
    app.add_option("--learning-rate", cfg.gbm.learning_rate, "boosting learning rate")
        ->capture_default_str();
    app.add_option("--min-child-weight", cfg.gbm.min_child_weight,
                   "minimum hessian weight per child")
        ->capture_default_str();
    app.add_option("--lambda", cfg.gbm.lambda, "L2 leaf regularization")->capture_default_str();
    app.add_option("--greedy-k", cfg.greedy_k, "forward-selection steps (0 disables selection)")
        ->capture_default_str();
    app.add_option("--scorer-rounds", cfg.scorer_rounds,
                   "boosting rounds for the selection scorer")
        ->capture_default_str();
    app.add_option("--merge", cfg.merge_csvs,
                   "handcrafted feature CSVs to join by image_id (comma separated)")
        ->delimiter(',');
    app.add_option("--top-k", cfg.top_k, "rows in the ranking charts")->capture_default_str();
    app.add_option("--kind", cfg.synth_kind, "synth kind: echo-noise, grating, or blob-noise")
        ->capture_default_str();
    app.add_option("--count", cfg.synth_count, "synth image count")->capture_default_str();
    app.add_option("--size", cfg.synth_size, "synth image side in pixels")
        ->capture_default_str();
    app.add_option("--period", cfg.synth_period, "synth texture period in pixels")
        ->capture_default_str();

    CLI::App* sub_extract =
        app.add_subcommand("extract", "extract per-image feature vectors from a manifest");
    CLI::App* sub_stats =
        app.add_subcommand("stats", "rank features of a labeled feature CSV");
    CLI::App* sub_run =
        app.add_subcommand("run", "split, optionally select, train, and evaluate");
    CLI::App* sub_synth =
        app.add_subcommand("synth", "generate a synthetic two-class dataset");
    for (CLI::App* sub : {sub_extract, sub_stats, sub_run, sub_synth}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cepstra::kExitSuccess : cepstra::kExitUsage;
    }

    try {
        if (sub_extract->parsed()) return cepstra::cmd_extract(cfg);
        if (sub_stats->parsed()) return cepstra::cmd_stats(cfg);
        if (sub_run->parsed()) return cepstra::cmd_run(cfg);
        if (sub_synth->parsed()) return cepstra::cmd_synth(cfg);
    } catch (const cepstra::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return cepstra::kExitUsage;
    } catch (const cepstra::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cepstra::kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cepstra::kExitData;
    }
    return cepstra::kExitUsage;
}
