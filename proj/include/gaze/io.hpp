#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gaze/common.hpp"

// =============================================================================
// FILE: gaze/io.hpp
// BRIEF: Gaze-trial data model, CSV load/save, validity filtering, and a
//        seeded synthetic cohort generator.
//
// CSV schema (UTF-8, header row required):
//   subject_id,group,stimulus_id,stimulus_w,stimulus_h,t_ms,x_px,y_px,valid
// with group in {ASD,TD} and valid in {0,1}; one row per gaze sample.
// =============================================================================

namespace gaze {

enum class Group { ASD, TD };

inline std::string to_string(Group g) { return g == Group::ASD ? "ASD" : "TD"; }

inline Group group_from_string(const std::string& s) {
    if (s == "ASD") return Group::ASD;
    if (s == "TD") return Group::TD;
    throw DataError("unknown group label \"" + s + "\"");
}

struct GazePoint {
    double t = 0.0;  // milliseconds
    double x = 0.0;  // pixels
    double y = 0.0;  // pixels
    bool valid = true;
};

struct Trial {
    std::string subject_id;
    Group group = Group::TD;
    std::string stimulus_id;
    double stimulus_width = 0.0;
    double stimulus_height = 0.0;
    std::vector<GazePoint> points;

    std::string key() const { return subject_id + ":" + stimulus_id; }

    std::vector<Point> positions() const {
        std::vector<Point> out;
        out.reserve(points.size());
        for (const GazePoint& p : points) out.push_back({p.x, p.y});
        return out;
    }
};

/// Trials below this many valid points are excluded from clustering; the grid
/// search needs up to 10 clusters.
inline constexpr std::size_t kMinClusterPoints = 10;

/// Keeps exactly the points that are flagged valid, finite, and inside the
/// stimulus bounds. Relative order is preserved; idempotent.
inline Trial filter_valid(const Trial& trial) {
    Trial out = trial;
    out.points.clear();
    for (const GazePoint& p : trial.points) {
        if (!p.valid) continue;
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
        if (p.x < 0.0 || p.x >= trial.stimulus_width) continue;
        if (p.y < 0.0 || p.y >= trial.stimulus_height) continue;
        out.points.push_back(p);
    }
    return out;
}

inline bool is_degenerate(const Trial& trial) {
    return filter_valid(trial).points.size() < kMinClusterPoints;
}

// ----------------------------------------------------------------------------
// CSV
// ----------------------------------------------------------------------------

/// Maps the canonical column roles onto the header names actually present in
/// the file. Defaults match the native schema.
struct CsvSchema {
    std::string subject_id = "subject_id";
    std::string group = "group";
    std::string stimulus_id = "stimulus_id";
    std::string stimulus_w = "stimulus_w";
    std::string stimulus_h = "stimulus_h";
    std::string t_ms = "t_ms";
    std::string x_px = "x_px";
    std::string y_px = "y_px";
    std::string valid = "valid";
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline double parse_double(const std::string& s, std::size_t row, const std::string& col) {
    if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
    if (s == "nan" || s == "NaN" || s == "NAN") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw DataError("malformed row " + std::to_string(row) + ": column \"" + col +
                        "\" value \"" + s + "\" is not a number");
    }
    return v;
}

/// Shortest representation that parses back to the same double.
inline std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace detail

/// Loads one Trial per distinct (subject_id, stimulus_id), point order
/// preserved from file order. Malformed rows, duplicate (subject, stimulus, t)
/// keys, unknown group labels, and inconsistent per-trial metadata are errors.
inline std::vector<Trial> load_trials(const std::string& path, const CsvSchema& schema = {}) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open \"" + path + "\"");

    std::string line;
    if (!std::getline(in, line)) throw DataError("\"" + path + "\" is empty");
    const std::vector<std::string> header = detail::split_csv_line(line);

    auto col_of = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return i;
        }
        throw DataError("\"" + path + "\" is missing column \"" + name + "\"");
    };
    const std::size_t c_subject = col_of(schema.subject_id);
    const std::size_t c_group = col_of(schema.group);
    const std::size_t c_stim = col_of(schema.stimulus_id);
    const std::size_t c_w = col_of(schema.stimulus_w);
    const std::size_t c_h = col_of(schema.stimulus_h);
    const std::size_t c_t = col_of(schema.t_ms);
    const std::size_t c_x = col_of(schema.x_px);
    const std::size_t c_y = col_of(schema.y_px);
    const std::size_t c_valid = col_of(schema.valid);

    std::vector<Trial> trials;
    std::map<std::string, std::size_t> index_of;  // trial key -> position

    std::size_t row = 1;  // header was row 1
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const std::vector<std::string> f = detail::split_csv_line(line);
        if (f.size() != header.size()) {
            throw DataError("malformed row " + std::to_string(row) + ": expected " +
                            std::to_string(header.size()) + " columns, got " +
                            std::to_string(f.size()));
        }

        const std::string& subject = f[c_subject];
        const std::string& stim = f[c_stim];
        const Group group = group_from_string(f[c_group]);
        const double w = detail::parse_double(f[c_w], row, schema.stimulus_w);
        const double h = detail::parse_double(f[c_h], row, schema.stimulus_h);
        if (!(w > 0.0) || !(h > 0.0)) {
            throw DataError("malformed row " + std::to_string(row) +
                            ": non-positive stimulus dimensions");
        }

        GazePoint p;
        p.t = detail::parse_double(f[c_t], row, schema.t_ms);
        p.x = detail::parse_double(f[c_x], row, schema.x_px);
        p.y = detail::parse_double(f[c_y], row, schema.y_px);
        const std::string& vs = f[c_valid];
        if (vs == "1") {
            p.valid = true;
        } else if (vs == "0") {
            p.valid = false;
        } else {
            throw DataError("malformed row " + std::to_string(row) + ": column \"" +
                            schema.valid + "\" must be 0 or 1, got \"" + vs + "\"");
        }
        if (!std::isfinite(p.t) || p.t < 0.0) {
            throw DataError("malformed row " + std::to_string(row) +
                            ": column \"" + schema.t_ms + "\" must be non-negative");
        }
        if (p.valid && (!std::isfinite(p.x) || !std::isfinite(p.y))) {
            throw DataError("malformed row " + std::to_string(row) +
                            ": valid sample with non-finite coordinates");
        }

        const std::string key = subject + ":" + stim;
        auto it = index_of.find(key);
        if (it == index_of.end()) {
            Trial t;
            t.subject_id = subject;
            t.group = group;
            t.stimulus_id = stim;
            t.stimulus_width = w;
            t.stimulus_height = h;
            index_of.emplace(key, trials.size());
            trials.push_back(std::move(t));
            it = index_of.find(key);
        }
        Trial& trial = trials[it->second];
        if (trial.group != group) {
            throw DataError("row " + std::to_string(row) + ": subject \"" + subject +
                            "\" appears with conflicting group labels");
        }
        if (trial.stimulus_width != w || trial.stimulus_height != h) {
            throw DataError("row " + std::to_string(row) + ": trial " + key +
                            " has conflicting stimulus dimensions");
        }
        if (!trial.points.empty()) {
            const double prev = trial.points.back().t;
            if (p.t == prev) {
                throw DataError("row " + std::to_string(row) + ": duplicate (subject, stimulus, t) = (" +
                                subject + ", " + stim + ", " + detail::fmt_double(p.t) + ")");
            }
            if (p.t < prev) {
                throw DataError("row " + std::to_string(row) + ": non-monotonic timestamp in trial " + key);
            }
        }
        trial.points.push_back(p);
    }
    return trials;
}

inline void save_trials(const std::string& path, const std::vector<Trial>& trials) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write \"" + path + "\"");
    out << "subject_id,group,stimulus_id,stimulus_w,stimulus_h,t_ms,x_px,y_px,valid\n";
    for (const Trial& t : trials) {
        for (const GazePoint& p : t.points) {
            out << t.subject_id << ',' << to_string(t.group) << ',' << t.stimulus_id << ','
                << detail::fmt_double(t.stimulus_width) << ',' << detail::fmt_double(t.stimulus_height)
                << ',' << detail::fmt_double(p.t) << ',' << detail::fmt_double(p.x) << ','
                << detail::fmt_double(p.y) << ',' << (p.valid ? '1' : '0') << '\n';
        }
    }
    if (!out) throw DataError("failed writing \"" + path + "\"");
}

// ----------------------------------------------------------------------------
// Synthetic cohorts. Each trial draws from a mixture of per-stimulus Gaussian
// hotspots (group-specific dispersion) plus a uniform background component
// (group-specific noise fraction). Hotspot centers are drawn once per stimulus
// and shared across groups.
// ----------------------------------------------------------------------------

struct SynthConfig {
    std::size_t n_subjects_per_group = 10;
    std::size_t n_stimuli = 5;
    std::size_t hotspot_count = 3;
    double dispersion_asd = 80.0;  // pixels
    double dispersion_td = 40.0;
    double noise_fraction_asd = 0.3;
    double noise_fraction_td = 0.1;
    std::size_t points_per_trial = 120;
    std::uint64_t seed = 0;
    double stimulus_width = 1280.0;
    double stimulus_height = 720.0;

    void validate() const {
        if (n_subjects_per_group < 1 || n_stimuli < 1 || hotspot_count < 1 || points_per_trial < 1)
            throw ConfigError("synthetic counts must be >= 1");
        if (!(dispersion_asd > 0.0) || !(dispersion_td > 0.0))
            throw ConfigError("dispersions must be > 0");
        if (noise_fraction_asd < 0.0 || noise_fraction_asd > 1.0 ||
            noise_fraction_td < 0.0 || noise_fraction_td > 1.0)
            throw ConfigError("noise fractions must be in [0,1]");
        if (!(stimulus_width > 0.0) || !(stimulus_height > 0.0))
            throw ConfigError("stimulus dimensions must be > 0");
    }
};

namespace detail {

inline std::string padded_id(const char* prefix, std::size_t i, std::size_t count) {
    int width = 1;
    for (std::size_t c = count; c >= 10; c /= 10) ++width;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%0*zu", prefix, width, i + 1);
    return buf;
}

}  // namespace detail

/// Deterministic for a fixed config: every trial derives its own RNG stream
/// from (seed, group, subject, stimulus), so generation order is irrelevant.
/// `centers_out`, when given, receives the per-stimulus hotspot centers.
inline std::vector<Trial> generate_synthetic(const SynthConfig& cfg,
                                             std::vector<std::vector<Point>>* centers_out = nullptr) {
    cfg.validate();
    const double W = cfg.stimulus_width;
    const double H = cfg.stimulus_height;

    // Hotspot centers per stimulus, inside a margin so dispersion draws stay
    // mostly in-bounds.
    std::vector<std::vector<Point>> centers(cfg.n_stimuli);
    for (std::size_t s = 0; s < cfg.n_stimuli; ++s) {
        Rng rng(derive_seed(cfg.seed, 0x5717ULL, s));
        centers[s].reserve(cfg.hotspot_count);
        for (std::size_t h = 0; h < cfg.hotspot_count; ++h) {
            centers[s].push_back({rng.uniform(0.15 * W, 0.85 * W), rng.uniform(0.15 * H, 0.85 * H)});
        }
    }

    if (centers_out) *centers_out = centers;

    std::vector<Trial> trials;
    trials.reserve(2 * cfg.n_subjects_per_group * cfg.n_stimuli);
    for (int g = 0; g < 2; ++g) {
        const Group group = g == 0 ? Group::ASD : Group::TD;
        const double sigma = group == Group::ASD ? cfg.dispersion_asd : cfg.dispersion_td;
        const double noise = group == Group::ASD ? cfg.noise_fraction_asd : cfg.noise_fraction_td;
        for (std::size_t subj = 0; subj < cfg.n_subjects_per_group; ++subj) {
            for (std::size_t stim = 0; stim < cfg.n_stimuli; ++stim) {
                Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(g + 1), subj, stim));
                Trial t;
                t.subject_id = detail::padded_id(group == Group::ASD ? "asd" : "td", subj,
                                                 cfg.n_subjects_per_group);
                t.group = group;
                t.stimulus_id = detail::padded_id("stim", stim, cfg.n_stimuli);
                t.stimulus_width = W;
                t.stimulus_height = H;
                t.points.reserve(cfg.points_per_trial);
                for (std::size_t i = 0; i < cfg.points_per_trial; ++i) {
                    GazePoint p;
                    p.t = 16.0 * static_cast<double>(i);
                    p.valid = true;
                    if (rng.uniform() < noise) {
                        p.x = rng.uniform(0.0, W);
                        p.y = rng.uniform(0.0, H);
                    } else {
                        const Point& c = centers[stim][rng.uniform_index(cfg.hotspot_count)];
                        // Redraw out-of-bounds samples; clamp as a last resort.
                        double x = 0.0, y = 0.0;
                        bool ok = false;
                        for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
                            x = rng.normal(c.x, sigma);
                            y = rng.normal(c.y, sigma);
                            ok = x >= 0.0 && x < W && y >= 0.0 && y < H;
                        }
                        if (!ok) {
                            x = std::clamp(x, 0.0, std::nextafter(W, 0.0));
                            y = std::clamp(y, 0.0, std::nextafter(H, 0.0));
                        }
                        p.x = x;
                        p.y = y;
                    }
                    t.points.push_back(p);
                }
                trials.push_back(std::move(t));
            }
        }
    }
    return trials;
}

}  // namespace gaze
