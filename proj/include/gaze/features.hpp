#pragma once

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gaze/common.hpp"
#include "gaze/indices.hpp"
#include "gaze/io.hpp"

// =============================================================================
// FILE: gaze/features.hpp
// BRIEF: Per-trial 63-dimensional feature vectors: 7 algorithms x 9 validity
//        indices, columns named <algorithm>_<index> in fixed order. Includes
//        the train-only standardizer (median imputation + z-score) used by
//        the modeling stage.
// =============================================================================

namespace gaze::features {

inline constexpr std::size_t kNumColumns = 63;

/// Fixed column order: algorithms KMeans, KMedoids, AC, BIRCH, DBSCAN,
/// OPTICS, GMM; indices SC, CH, DB, CSL, DI, DB*, GD33, PBM, STR.
inline std::vector<std::string> column_names() {
    std::vector<std::string> names;
    names.reserve(kNumColumns);
    for (cluster::Algorithm a : cluster::kAllAlgorithms) {
        for (indices::Index idx : indices::kAllIndices) {
            names.push_back(cluster::to_string(a) + "_" + indices::to_string(idx));
        }
    }
    return names;
}

struct TrialKey {
    std::string subject_id;
    std::string stimulus_id;

    friend bool operator==(const TrialKey& a, const TrialKey& b) {
        return a.subject_id == b.subject_id && a.stimulus_id == b.stimulus_id;
    }
    friend bool operator<(const TrialKey& a, const TrialKey& b) {
        if (a.subject_id != b.subject_id) return a.subject_id < b.subject_id;
        return a.stimulus_id < b.stimulus_id;
    }
};

using Row = std::array<std::optional<double>, kNumColumns>;

struct FeatureMatrix {
    std::vector<std::string> columns = column_names();
    std::vector<TrialKey> keys;
    std::vector<int> labels;  // ASD = 1, TD = 0
    std::vector<Row> rows;

    std::size_t n_rows() const { return rows.size(); }
};

/// One IndexVector per (trial, algorithm); a missing pair is an error naming
/// the pair.
inline FeatureMatrix build_feature_matrix(
    const std::vector<Trial>& trials,
    const std::map<std::string, std::map<std::string, indices::IndexVector>>& per_trial_algo) {
    FeatureMatrix m;
    for (const Trial& t : trials) {
        auto trial_it = per_trial_algo.find(t.key());
        if (trial_it == per_trial_algo.end()) {
            throw DataError("no clustering results for trial " + t.key());
        }
        Row row;
        std::size_t col = 0;
        for (cluster::Algorithm a : cluster::kAllAlgorithms) {
            auto algo_it = trial_it->second.find(cluster::to_string(a));
            if (algo_it == trial_it->second.end()) {
                throw DataError("no " + cluster::to_string(a) + " result for trial " + t.key());
            }
            for (indices::Index idx : indices::kAllIndices) {
                row[col++] = indices::get(algo_it->second, idx);
            }
        }
        m.keys.push_back({t.subject_id, t.stimulus_id});
        m.labels.push_back(t.group == Group::ASD ? 1 : 0);
        m.rows.push_back(row);
    }
    return m;
}

// ----------------------------------------------------------------------------
// Standardizer: imputation value and moments come from training rows only.
// Tree models take raw imputed features; margin/distance/gradient models get
// the z-scored version.
// ----------------------------------------------------------------------------

class Standardizer {
public:
    /// `standardize = false` leaves columns on their raw scale (imputation only).
    void fit(const std::vector<Row>& train_rows, bool standardize = true) {
        standardize_ = standardize;
        median_.assign(kNumColumns, 0.0);
        mean_.assign(kNumColumns, 0.0);
        sd_.assign(kNumColumns, 1.0);

        std::vector<double> col;
        for (std::size_t c = 0; c < kNumColumns; ++c) {
            col.clear();
            for (const Row& r : train_rows) {
                if (r[c]) col.push_back(*r[c]);
            }
            median_[c] = col.empty() ? 0.0 : quantile(col, 0.5);
        }
        if (!standardize_) return;

        const double n = static_cast<double>(train_rows.size());
        for (std::size_t c = 0; c < kNumColumns; ++c) {
            double sum = 0.0;
            for (const Row& r : train_rows) sum += r[c] ? *r[c] : median_[c];
            mean_[c] = n > 0.0 ? sum / n : 0.0;
            double ss = 0.0;
            for (const Row& r : train_rows) {
                const double v = (r[c] ? *r[c] : median_[c]) - mean_[c];
                ss += v * v;
            }
            // Sample standard deviation; constant columns keep divisor 1.
            const double var = n > 1.0 ? ss / (n - 1.0) : 0.0;
            sd_[c] = var > 0.0 ? std::sqrt(var) : 1.0;
        }
    }

    std::vector<std::vector<double>> transform(const std::vector<Row>& rows) const {
        std::vector<std::vector<double>> out;
        out.reserve(rows.size());
        for (const Row& r : rows) {
            std::vector<double> v(kNumColumns);
            for (std::size_t c = 0; c < kNumColumns; ++c) {
                const double raw = r[c] ? *r[c] : median_[c];
                v[c] = standardize_ ? (raw - mean_[c]) / sd_[c] : raw;
            }
            out.push_back(std::move(v));
        }
        return out;
    }

    const std::vector<double>& medians() const { return median_; }
    const std::vector<double>& means() const { return mean_; }
    const std::vector<double>& sds() const { return sd_; }

private:
    bool standardize_ = true;
    std::vector<double> median_;
    std::vector<double> mean_;
    std::vector<double> sd_;
};

// ----------------------------------------------------------------------------
// CSV round-trip: header subject_id,stimulus_id,label,<63 columns>; MISSING
// serialized as an empty field.
// ----------------------------------------------------------------------------

inline void save_features(const std::string& path, const FeatureMatrix& m) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write \"" + path + "\"");
    out << "subject_id,stimulus_id,label";
    for (const std::string& c : m.columns) out << ',' << c;
    out << '\n';
    for (std::size_t i = 0; i < m.n_rows(); ++i) {
        out << m.keys[i].subject_id << ',' << m.keys[i].stimulus_id << ',' << m.labels[i];
        for (std::size_t c = 0; c < kNumColumns; ++c) {
            out << ',';
            if (m.rows[i][c]) out << gaze::detail::fmt_double(*m.rows[i][c]);
        }
        out << '\n';
    }
    if (!out) throw DataError("failed writing \"" + path + "\"");
}

inline FeatureMatrix load_features(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open \"" + path + "\"");
    std::string line;
    if (!std::getline(in, line)) throw DataError("\"" + path + "\" is empty");
    const std::vector<std::string> header = gaze::detail::split_csv_line(line);
    const std::vector<std::string> expected = column_names();
    if (header.size() != 3 + kNumColumns || header[0] != "subject_id" ||
        header[1] != "stimulus_id" || header[2] != "label") {
        throw DataError("\"" + path + "\" does not match the feature CSV schema");
    }
    for (std::size_t c = 0; c < kNumColumns; ++c) {
        if (header[3 + c] != expected[c]) {
            throw DataError("feature column " + std::to_string(c) + " is \"" + header[3 + c] +
                            "\", expected \"" + expected[c] + "\"");
        }
    }
    FeatureMatrix m;
    std::size_t row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (line.empty()) continue;
        const std::vector<std::string> f = gaze::detail::split_csv_line(line);
        if (f.size() != 3 + kNumColumns) {
            throw DataError("malformed row " + std::to_string(row_no) + " in \"" + path + "\"");
        }
        m.keys.push_back({f[0], f[1]});
        if (f[2] == "1") {
            m.labels.push_back(1);
        } else if (f[2] == "0") {
            m.labels.push_back(0);
        } else {
            throw DataError("malformed row " + std::to_string(row_no) + ": label must be 0 or 1");
        }
        Row row;
        for (std::size_t c = 0; c < kNumColumns; ++c) {
            const std::string& cell = f[3 + c];
            if (cell.empty()) {
                row[c] = std::nullopt;
            } else {
                row[c] = gaze::detail::parse_double(cell, row_no, expected[c]);
            }
        }
        m.rows.push_back(row);
    }
    return m;
}

}  // namespace gaze::features
