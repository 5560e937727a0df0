// Pipeline CLI: one subcommand per stage plus an end-to-end runner.
// Exit codes: 0 success, 2 config error, 3 data error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gaze/pipeline.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    long long seed = -1;
    unsigned jobs = 0;
    std::string stimulus_dir;
    bool jobs_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required = true) {
    auto* c = cmd->add_option("--config", opts.config_path, "pipeline config JSON");
    if (config_required) c->required();
    cmd->add_option("--out", opts.out_dir, "output directory (overrides config)");
    cmd->add_option("--seed", opts.seed, "global seed (overrides config)");
    cmd->add_option("--jobs", opts.jobs, "worker threads, 0 = all cores")
        ->each([&](const std::string&) { opts.jobs_set = true; });
    cmd->add_option("--stimulus-dir", opts.stimulus_dir,
                    "directory with <stimulus_id>.png backgrounds");
}

gaze::pipeline::PipelineConfig resolve_config(const CommonOpts& opts) {
    gaze::pipeline::PipelineConfig cfg = gaze::pipeline::load_config(opts.config_path);
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    if (opts.seed >= 0) {
        cfg.seed = static_cast<std::uint64_t>(opts.seed);
        if (cfg.synth) cfg.synth->seed = cfg.seed;
    }
    if (opts.jobs_set) cfg.jobs = opts.jobs;
    if (!opts.stimulus_dir.empty()) cfg.stimulus_dir = opts.stimulus_dir;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaze-pattern clustering, significance testing, and prediction pipeline"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto* synth = app.add_subcommand("synth", "generate a synthetic cohort CSV");
    add_common(synth, opts);

    auto* cluster = app.add_subcommand("cluster", "grid-search all 7 algorithms per trial");
    add_common(cluster, opts);

    auto* features = app.add_subcommand("features", "assemble the 63-column feature matrix");
    add_common(features, opts);

    auto* stats = app.add_subcommand("stats", "Mann-Whitney significance table");
    add_common(stats, opts);

    auto* train = app.add_subcommand("train", "cross-validated model benchmark");
    add_common(train, opts);

    auto* visualize = app.add_subcommand("visualize", "render convex-hull overlays");
    add_common(visualize, opts);
    std::vector<std::string> trial_keys;
    visualize->add_option("--trial", trial_keys,
                          "subject:stimulus keys to render (default: all clustered trials)");

    auto* all = app.add_subcommand("all", "run the full pipeline end to end");
    add_common(all, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        namespace gp = gaze::pipeline;
        const gp::PipelineConfig cfg = resolve_config(opts);

        if (synth->parsed()) {
            if (!cfg.synth) throw gaze::ConfigError("synth requires a \"synthetic\" config block");
            const std::vector<gaze::Trial> trials = gaze::generate_synthetic(*cfg.synth);
            std::filesystem::create_directories(cfg.out_dir);
            const std::filesystem::path csv = std::filesystem::path(cfg.out_dir) / "dataset.csv";
            gaze::save_trials(csv.string(), trials);
            gp::write_meta(cfg, csv);
            std::printf("wrote %s (%zu trials)\n", csv.string().c_str(), trials.size());
        } else if (cluster->parsed()) {
            const std::vector<gaze::Trial> trials = gp::load_input(cfg);
            const auto clusterings = gp::run_clustering(cfg, trials);
            gp::write_cluster_files(cfg, clusterings);
            std::printf("clustered %zu trials x 7 algorithms -> %s/clusters\n", trials.size(),
                        cfg.out_dir.c_str());
        } else if (features->parsed()) {
            const std::vector<gaze::Trial> trials = gp::load_input(cfg);
            const auto clusterings = gp::read_cluster_files(cfg, trials);
            const auto m = gp::compute_features(trials, clusterings, cfg.jobs);
            const std::filesystem::path csv = std::filesystem::path(cfg.out_dir) / "features.csv";
            gaze::features::save_features(csv.string(), m);
            gp::write_meta(cfg, csv);
            std::printf("wrote %s (%zu rows x 63 columns)\n", csv.string().c_str(), m.n_rows());
        } else if (stats->parsed()) {
            const auto m = gaze::features::load_features(
                (std::filesystem::path(cfg.out_dir) / "features.csv").string());
            gp::write_stats(cfg, m);
            std::printf("wrote %s/significance.{json,md}\n", cfg.out_dir.c_str());
        } else if (train->parsed()) {
            const auto m = gaze::features::load_features(
                (std::filesystem::path(cfg.out_dir) / "features.csv").string());
            gp::write_model_reports(cfg, gp::run_models(cfg, m));
            std::printf("wrote %s/model_report.{json,md}\n", cfg.out_dir.c_str());
        } else if (visualize->parsed()) {
            const std::vector<gaze::Trial> trials = gp::load_input(cfg);
            const auto clusterings = gp::read_cluster_files(cfg, trials);
            std::vector<std::size_t> indices;
            if (trial_keys.empty()) {
                for (std::size_t i = 0; i < trials.size(); ++i) indices.push_back(i);
            } else {
                for (const std::string& key : trial_keys) {
                    bool found = false;
                    for (std::size_t i = 0; i < trials.size(); ++i) {
                        if (trials[i].key() == key) {
                            indices.push_back(i);
                            found = true;
                            break;
                        }
                    }
                    if (!found) throw gaze::DataError("unknown trial key \"" + key + "\"");
                }
            }
            const auto written = gp::write_overlays(cfg, trials, clusterings, indices);
            std::printf("wrote %zu SVG overlays under %s/viz\n", written.size(), cfg.out_dir.c_str());
        } else if (all->parsed()) {
            gp::run_all(cfg);
            std::printf("pipeline complete; manifest at %s/manifest.json\n", cfg.out_dir.c_str());
        }
    } catch (const gaze::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const gaze::DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
