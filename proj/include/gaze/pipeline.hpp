#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gaze/clustering.hpp"
#include "gaze/features.hpp"
#include "gaze/io.hpp"
#include "gaze/models/cv.hpp"
#include "gaze/selection.hpp"
#include "gaze/stats.hpp"
#include "gaze/viz.hpp"

// =============================================================================
// FILE: gaze/pipeline.hpp
// BRIEF: File-driven pipeline stages: synth -> cluster -> features -> stats /
//        train / visualize, plus the end-to-end runner with a hashed output
//        manifest. Stage outputs are files so stages are resumable and
//        independently testable. Every artifact embeds the config hash and
//        the global seed (CSV artifacts carry a .meta.json sidecar).
// =============================================================================

namespace gaze::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

struct PipelineConfig {
    std::optional<std::string> dataset_path;  // exactly one of dataset/synth
    std::optional<SynthConfig> synth;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    unsigned jobs = 1;  // 0 = all hardware threads
    std::size_t n_folds = 5;
    std::size_t n_runs = 5;
    std::vector<models::Family> model_families{std::begin(models::kAllFamilies),
                                               std::end(models::kAllFamilies)};
    std::optional<std::string> stimulus_dir;
    std::size_t viz_max_trials = 4;  // trials rendered by the end-to-end runner
    std::size_t smoothing_iterations = 0;

    void validate() const {
        if (dataset_path.has_value() == synth.has_value()) {
            throw ConfigError("config must set exactly one of \"dataset\" or \"synthetic\"");
        }
        if (synth) synth->validate();
    }
};

inline PipelineConfig config_from_json(const json& j) {
    PipelineConfig cfg;
    if (j.contains("dataset")) cfg.dataset_path = j.at("dataset").get<std::string>();
    if (j.contains("synthetic")) {
        const json& s = j.at("synthetic");
        SynthConfig sc;
        sc.n_subjects_per_group = s.value("n_subjects_per_group", sc.n_subjects_per_group);
        sc.n_stimuli = s.value("n_stimuli", sc.n_stimuli);
        sc.hotspot_count = s.value("hotspot_count", sc.hotspot_count);
        sc.dispersion_asd = s.value("dispersion_asd", sc.dispersion_asd);
        sc.dispersion_td = s.value("dispersion_td", sc.dispersion_td);
        sc.noise_fraction_asd = s.value("noise_fraction_asd", sc.noise_fraction_asd);
        sc.noise_fraction_td = s.value("noise_fraction_td", sc.noise_fraction_td);
        sc.points_per_trial = s.value("points_per_trial", sc.points_per_trial);
        sc.stimulus_width = s.value("stimulus_width", sc.stimulus_width);
        sc.stimulus_height = s.value("stimulus_height", sc.stimulus_height);
        cfg.synth = sc;
    }
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.jobs = j.value("jobs", cfg.jobs);
    cfg.n_folds = j.value("n_folds", cfg.n_folds);
    cfg.n_runs = j.value("n_runs", cfg.n_runs);
    if (j.contains("models")) {
        cfg.model_families.clear();
        for (const auto& name : j.at("models")) {
            cfg.model_families.push_back(models::family_from_string(name.get<std::string>()));
        }
    }
    if (j.contains("stimulus_dir")) cfg.stimulus_dir = j.at("stimulus_dir").get<std::string>();
    cfg.viz_max_trials = j.value("viz_max_trials", cfg.viz_max_trials);
    cfg.smoothing_iterations = j.value("smoothing_iterations", cfg.smoothing_iterations);
    if (cfg.synth) cfg.synth->seed = cfg.seed;
    cfg.validate();
    return cfg;
}

/// Canonical JSON form. `out_dir` and `jobs` are excluded from the config
/// fingerprint: neither the output location nor the parallelism degree may
/// affect artifact content.
inline json config_to_json(const PipelineConfig& cfg) {
    json j;
    if (cfg.dataset_path) j["dataset"] = *cfg.dataset_path;
    if (cfg.synth) {
        j["synthetic"] = {{"n_subjects_per_group", cfg.synth->n_subjects_per_group},
                          {"n_stimuli", cfg.synth->n_stimuli},
                          {"hotspot_count", cfg.synth->hotspot_count},
                          {"dispersion_asd", cfg.synth->dispersion_asd},
                          {"dispersion_td", cfg.synth->dispersion_td},
                          {"noise_fraction_asd", cfg.synth->noise_fraction_asd},
                          {"noise_fraction_td", cfg.synth->noise_fraction_td},
                          {"points_per_trial", cfg.synth->points_per_trial},
                          {"stimulus_width", cfg.synth->stimulus_width},
                          {"stimulus_height", cfg.synth->stimulus_height}};
    }
    j["seed"] = cfg.seed;
    j["n_folds"] = cfg.n_folds;
    j["n_runs"] = cfg.n_runs;
    json fams = json::array();
    for (models::Family f : cfg.model_families) fams.push_back(models::to_string(f));
    j["models"] = fams;
    if (cfg.stimulus_dir) j["stimulus_dir"] = *cfg.stimulus_dir;
    j["viz_max_trials"] = cfg.viz_max_trials;
    j["smoothing_iterations"] = cfg.smoothing_iterations;
    return j;
}

inline PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config \"" + path + "\"");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config \"" + path + "\" is not valid JSON: " + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError("config \"" + path + "\": " + e.what());
    }
}

/// Fingerprint of the canonicalized config; `jobs` is excluded because the
/// parallelism degree must not affect outputs.
inline std::string config_hash(const PipelineConfig& cfg) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(config_to_json(cfg).dump())));
    return buf;
}

// ----------------------------------------------------------------------------
// Input loading
// ----------------------------------------------------------------------------

/// Valid-filtered trials, with trials below the clustering floor dropped.
inline std::vector<Trial> load_input(const PipelineConfig& cfg) {
    std::vector<Trial> raw;
    if (cfg.synth) {
        raw = generate_synthetic(*cfg.synth);
    } else {
        raw = load_trials(*cfg.dataset_path);
    }
    std::vector<Trial> usable;
    for (const Trial& t : raw) {
        Trial filtered = filter_valid(t);
        if (filtered.points.size() >= kMinClusterPoints) usable.push_back(std::move(filtered));
    }
    if (usable.empty()) throw DataError("no trial has enough valid points for clustering");
    return usable;
}

// ----------------------------------------------------------------------------
// Cluster stage
// ----------------------------------------------------------------------------

struct TrialClustering {
    std::string subject_id;
    std::string stimulus_id;
    Group group = Group::TD;
    std::map<std::string, selection::SelectionResult> by_algorithm;  // keyed by name
};

inline std::vector<TrialClustering> run_clustering(const PipelineConfig& cfg,
                                                   const std::vector<Trial>& trials) {
    std::vector<TrialClustering> out(trials.size());
    parallel_for(trials.size(), cfg.jobs, [&](std::size_t i) {
        const Trial& t = trials[i];
        const std::vector<Point> pts = t.positions();
        TrialClustering tc;
        tc.subject_id = t.subject_id;
        tc.stimulus_id = t.stimulus_id;
        tc.group = t.group;
        for (cluster::Algorithm a : cluster::kAllAlgorithms) {
            const selection::GridSpec grid = selection::default_grid(a, pts, cfg.seed);
            tc.by_algorithm[cluster::to_string(a)] = selection::grid_search(pts, grid);
        }
        out[i] = std::move(tc);
    });
    return out;
}

inline void write_text(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write \"" + path.string() + "\"");
    out << content;
    if (!out) throw DataError("failed writing \"" + path.string() + "\"");
}

inline void write_cluster_files(const PipelineConfig& cfg,
                                const std::vector<TrialClustering>& clusterings) {
    const std::string hash = config_hash(cfg);
    for (const TrialClustering& tc : clusterings) {
        json j;
        j["config_hash"] = hash;
        j["seed"] = cfg.seed;
        j["subject_id"] = tc.subject_id;
        j["stimulus_id"] = tc.stimulus_id;
        j["group"] = to_string(tc.group);
        json results;
        for (const auto& [name, sel] : tc.by_algorithm) results[name] = selection::to_json(sel);
        j["results"] = results;
        const fs::path path =
            fs::path(cfg.out_dir) / "clusters" / (tc.subject_id + "_" + tc.stimulus_id + ".json");
        write_text(path, j.dump(2) + "\n");
    }
}

inline std::vector<TrialClustering> read_cluster_files(const PipelineConfig& cfg,
                                                       const std::vector<Trial>& trials) {
    std::vector<TrialClustering> out;
    out.reserve(trials.size());
    for (const Trial& t : trials) {
        const fs::path path =
            fs::path(cfg.out_dir) / "clusters" / (t.subject_id + "_" + t.stimulus_id + ".json");
        std::ifstream in(path);
        if (!in) {
            throw DataError("missing cluster file \"" + path.string() +
                            "\"; run the cluster stage first");
        }
        json j;
        in >> j;
        TrialClustering tc;
        tc.subject_id = t.subject_id;
        tc.stimulus_id = t.stimulus_id;
        tc.group = t.group;
        for (const auto& [name, sj] : j.at("results").items()) {
            selection::SelectionResult sel;
            const json& aj = sj.at("assignment");
            sel.best.algorithm = cluster::algorithm_from_string(aj.at("algorithm").get<std::string>());
            sel.best.k = aj.at("k").get<std::size_t>();
            sel.best.labels = aj.at("labels").get<std::vector<int>>();
            sel.degenerate = sj.at("degenerate").get<bool>();
            sel.n_candidates_evaluated = sj.at("n_candidates_evaluated").get<std::size_t>();
            if (!sj.at("best_sc").is_null()) sel.best_sc = sj.at("best_sc").get<double>();
            tc.by_algorithm[name] = std::move(sel);
        }
        out.push_back(std::move(tc));
    }
    return out;
}

// ----------------------------------------------------------------------------
// Feature stage
// ----------------------------------------------------------------------------

inline features::FeatureMatrix compute_features(const std::vector<Trial>& trials,
                                                const std::vector<TrialClustering>& clusterings,
                                                unsigned jobs = 1) {
    if (trials.size() != clusterings.size()) {
        throw DataError("trial and clustering counts differ");
    }
    std::vector<std::map<std::string, indices::IndexVector>> per_trial(trials.size());
    parallel_for(trials.size(), jobs, [&](std::size_t i) {
        const std::vector<Point> pts = trials[i].positions();
        for (const auto& [name, sel] : clusterings[i].by_algorithm) {
            per_trial[i][name] = indices::compute_all(pts, sel.best);
        }
    });
    std::map<std::string, std::map<std::string, indices::IndexVector>> keyed;
    for (std::size_t i = 0; i < trials.size(); ++i) keyed[trials[i].key()] = std::move(per_trial[i]);
    return features::build_feature_matrix(trials, keyed);
}

inline void write_meta(const PipelineConfig& cfg, const fs::path& for_file) {
    json meta{{"config_hash", config_hash(cfg)}, {"seed", cfg.seed}};
    write_text(for_file.string() + ".meta.json", meta.dump(2) + "\n");
}

// ----------------------------------------------------------------------------
// Stats / train / visualize stages
// ----------------------------------------------------------------------------

inline void write_stats(const PipelineConfig& cfg, const features::FeatureMatrix& m) {
    const std::vector<stats::SignificanceCell> cells = stats::significance_table(m);
    json j;
    j["config_hash"] = config_hash(cfg);
    j["seed"] = cfg.seed;
    j["cells"] = stats::to_json(cells);
    write_text(fs::path(cfg.out_dir) / "significance.json", j.dump(2) + "\n");
    std::string md = significance_markdown(cells);
    md += "\nconfig: " + config_hash(cfg) + " seed: " + std::to_string(cfg.seed) + "\n";
    write_text(fs::path(cfg.out_dir) / "significance.md", md);
}

inline std::vector<models::ModelReport> run_models(const PipelineConfig& cfg,
                                                   const features::FeatureMatrix& m) {
    std::vector<models::ModelReport> reports;
    for (models::Family f : cfg.model_families) {
        models::ModelSpec spec;
        spec.family = f;
        spec.seed = cfg.seed;
        reports.push_back(models::cross_validate(spec, m, cfg.n_folds, cfg.n_runs));
    }
    return reports;
}

inline void write_model_reports(const PipelineConfig& cfg,
                                const std::vector<models::ModelReport>& reports) {
    json j;
    j["config_hash"] = config_hash(cfg);
    j["seed"] = cfg.seed;
    json arr = json::array();
    for (const models::ModelReport& r : reports) arr.push_back(models::to_json(r));
    j["reports"] = arr;
    write_text(fs::path(cfg.out_dir) / "model_report.json", j.dump(2) + "\n");
    std::string md = models::report_markdown(reports);
    md += "\nconfig: " + config_hash(cfg) + " seed: " + std::to_string(cfg.seed) + "\n";
    write_text(fs::path(cfg.out_dir) / "model_report.md", md);
}

/// Renders one SVG per (trial, algorithm): <subject>_<stimulus>_<algorithm>.svg.
inline std::vector<fs::path> write_overlays(const PipelineConfig& cfg,
                                            const std::vector<Trial>& trials,
                                            const std::vector<TrialClustering>& clusterings,
                                            const std::vector<std::size_t>& trial_indices) {
    const std::string hash = config_hash(cfg);
    std::vector<fs::path> written;
    for (std::size_t idx : trial_indices) {
        const Trial& t = trials[idx];
        const std::vector<Point> pts = t.positions();
        for (const auto& [name, sel] : clusterings[idx].by_algorithm) {
            std::optional<std::string> background;
            if (cfg.stimulus_dir) {
                const fs::path img = fs::path(*cfg.stimulus_dir) / (t.stimulus_id + ".png");
                if (fs::exists(img)) background = img.string();
            }
            viz::OverlayScene scene = viz::make_scene(pts, sel.best, t.stimulus_width,
                                                      t.stimulus_height, background,
                                                      cfg.smoothing_iterations);
            std::string svg = viz::render_overlay(scene);
            svg += "<!-- config:" + hash + " seed:" + std::to_string(cfg.seed) + " -->\n";
            const fs::path path = fs::path(cfg.out_dir) / "viz" /
                                  (t.subject_id + "_" + t.stimulus_id + "_" + name + ".svg");
            write_text(path, svg);
            written.push_back(path);
        }
    }
    return written;
}

// ----------------------------------------------------------------------------
// End-to-end runner
// ----------------------------------------------------------------------------

inline std::string hash_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot hash \"" + path.string() + "\"");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

inline void write_manifest(const PipelineConfig& cfg) {
    json files = json::array();
    std::vector<fs::path> paths;
    for (const auto& entry : fs::recursive_directory_iterator(cfg.out_dir)) {
        if (!entry.is_regular_file()) continue;
        if (entry.path().filename() == "manifest.json") continue;
        paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    for (const fs::path& p : paths) {
        files.push_back({{"path", fs::relative(p, cfg.out_dir).generic_string()},
                         {"hash", hash_file(p)},
                         {"bytes", fs::file_size(p)}});
    }
    json j{{"config_hash", config_hash(cfg)}, {"seed", cfg.seed}, {"files", files}};
    write_text(fs::path(cfg.out_dir) / "manifest.json", j.dump(2) + "\n");
}

inline void run_all(const PipelineConfig& cfg) {
    if (cfg.synth) {
        const std::vector<Trial> generated = generate_synthetic(*cfg.synth);
        fs::create_directories(cfg.out_dir);
        const fs::path csv = fs::path(cfg.out_dir) / "dataset.csv";
        save_trials(csv.string(), generated);
        write_meta(cfg, csv);
    }
    const std::vector<Trial> trials = load_input(cfg);
    const std::vector<TrialClustering> clusterings = run_clustering(cfg, trials);
    write_cluster_files(cfg, clusterings);

    const features::FeatureMatrix m = compute_features(trials, clusterings, cfg.jobs);
    const fs::path feat_csv = fs::path(cfg.out_dir) / "features.csv";
    features::save_features(feat_csv.string(), m);
    write_meta(cfg, feat_csv);

    write_stats(cfg, m);
    write_model_reports(cfg, run_models(cfg, m));

    std::vector<std::size_t> viz_indices;
    for (std::size_t i = 0; i < trials.size() && i < cfg.viz_max_trials; ++i) viz_indices.push_back(i);
    write_overlays(cfg, trials, clusterings, viz_indices);

    write_manifest(cfg);
}

}  // namespace gaze::pipeline
