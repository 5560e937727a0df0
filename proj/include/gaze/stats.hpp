#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gaze/common.hpp"
#include "gaze/features.hpp"

// =============================================================================
// FILE: gaze/stats.hpp
// BRIEF: Two-sided Mann-Whitney U test with midranks for ties: exact p by
//        rank-sum enumeration when n1+n2 <= 20 and the pooled sample is
//        tie-free, otherwise the normal approximation with tie-corrected
//        variance and 0.5 continuity correction. Star categories: *** for
//        p < 0.01, ** for 0.01 <= p < 0.05, * for p >= 0.05.
// =============================================================================

namespace gaze::stats {

enum class Method { Exact, NormalApprox };

struct UTestResult {
    double u = 0.0;  // U statistic of the first sample
    double p = 1.0;  // two-sided
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    Method method = Method::NormalApprox;
};

namespace detail {

/// Midranks of the pooled sample plus the tie term sum(t^3 - t).
struct RankInfo {
    std::vector<double> ranks;  // aligned with the pooled input order
    double tie_sum = 0.0;
    bool has_ties = false;
};

inline RankInfo midranks(const std::vector<double>& pooled) {
    const std::size_t n = pooled.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });

    RankInfo info;
    info.ranks.assign(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double t = static_cast<double>(j - i + 1);
        const double rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t s = i; s <= j; ++s) info.ranks[order[s]] = rank;
        if (t > 1.0) {
            info.has_ties = true;
            info.tie_sum += t * t * t - t;
        }
        i = j + 1;
    }
    return info;
}

/// Counts n1-subsets of ranks {1..N} by rank sum. Entry [s] = number of
/// subsets of size n1 with sum s. Values stay far below 2^53 for N <= 20.
inline std::vector<double> rank_sum_counts(std::size_t n1, std::size_t N) {
    const std::size_t max_sum = N * (N + 1) / 2;
    std::vector<std::vector<double>> dp(n1 + 1, std::vector<double>(max_sum + 1, 0.0));
    dp[0][0] = 1.0;
    for (std::size_t v = 1; v <= N; ++v) {
        for (std::size_t c = std::min(n1, v); c >= 1; --c) {
            for (std::size_t s = max_sum; s >= v; --s) {
                dp[c][s] += dp[c - 1][s - v];
            }
        }
    }
    return dp[n1];
}

}  // namespace detail

inline UTestResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw DataError("empty sample");
    const std::size_t n1 = a.size();
    const std::size_t n2 = b.size();
    const std::size_t N = n1 + n2;

    std::vector<double> pooled;
    pooled.reserve(N);
    pooled.insert(pooled.end(), a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const detail::RankInfo info = detail::midranks(pooled);

    double r1 = 0.0;
    for (std::size_t i = 0; i < n1; ++i) r1 += info.ranks[i];
    const double u1 = r1 - 0.5 * static_cast<double>(n1) * static_cast<double>(n1 + 1);
    const double n1n2 = static_cast<double>(n1) * static_cast<double>(n2);

    UTestResult res;
    res.u = u1;
    res.n1 = n1;
    res.n2 = n2;

    if (N <= 20 && !info.has_ties) {
        res.method = Method::Exact;
        const std::vector<double> counts = detail::rank_sum_counts(n1, N);
        const double min_sum = 0.5 * static_cast<double>(n1) * static_cast<double>(n1 + 1);
        const double u_lo = std::min(u1, n1n2 - u1);
        const double u_hi = n1n2 - u_lo;
        double total = 0.0, lo_tail = 0.0, hi_tail = 0.0;
        for (std::size_t s = 0; s < counts.size(); ++s) {
            const double u = static_cast<double>(s) - min_sum;
            if (u < -0.5) continue;  // below the attainable range
            total += counts[s];
            if (u <= u_lo + 1e-9) lo_tail += counts[s];
            if (u >= u_hi - 1e-9) hi_tail += counts[s];
        }
        res.p = std::min(1.0, (lo_tail + hi_tail) / total);
    } else {
        res.method = Method::NormalApprox;
        const double mu = 0.5 * n1n2;
        const double Nd = static_cast<double>(N);
        double var = (n1n2 / 12.0) * ((Nd + 1.0) - info.tie_sum / (Nd * (Nd - 1.0)));
        if (var <= 0.0) {
            res.p = 1.0;  // all pooled values identical
            return res;
        }
        const double z = std::max(0.0, std::abs(u1 - mu) - 0.5) / std::sqrt(var);
        res.p = std::min(1.0, 2.0 * normal_sf(z));
    }
    return res;
}

// ----------------------------------------------------------------------------
// Significance table over the 63 feature columns.
// ----------------------------------------------------------------------------

struct SignificanceCell {
    std::string algorithm;
    std::string index;
    double p = 1.0;
    std::string stars;  // "***", "**", or "*"
};

inline std::string star_category(double p) {
    if (p < 0.01) return "***";
    if (p < 0.05) return "**";
    return "*";
}

/// One cell per (algorithm, index) column; MISSING values are dropped before
/// testing. An empty group, after dropping, is an error naming the column.
inline std::vector<SignificanceCell> significance_table(const features::FeatureMatrix& m) {
    std::vector<SignificanceCell> cells;
    cells.reserve(features::kNumColumns);
    for (std::size_t c = 0; c < features::kNumColumns; ++c) {
        std::vector<double> asd, td;
        for (std::size_t i = 0; i < m.n_rows(); ++i) {
            if (!m.rows[i][c]) continue;
            (m.labels[i] == 1 ? asd : td).push_back(*m.rows[i][c]);
        }
        if (asd.empty() || td.empty()) {
            throw DataError("empty sample for column \"" + m.columns[c] + "\"");
        }
        const UTestResult r = mann_whitney_u(asd, td);
        SignificanceCell cell;
        const std::size_t sep = m.columns[c].find('_');
        cell.algorithm = m.columns[c].substr(0, sep);
        cell.index = m.columns[c].substr(sep + 1);
        cell.p = r.p;
        cell.stars = star_category(r.p);
        cells.push_back(std::move(cell));
    }
    return cells;
}

/// Markdown table, rows = algorithms, columns = the nine indices.
inline std::string significance_markdown(const std::vector<SignificanceCell>& cells) {
    std::ostringstream out;
    out << "| Algorithm |";
    for (indices::Index idx : indices::kAllIndices) out << ' ' << indices::to_string(idx) << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < 9; ++i) out << "---|";
    out << '\n';
    for (cluster::Algorithm a : cluster::kAllAlgorithms) {
        out << "| " << cluster::to_string(a) << " |";
        for (indices::Index idx : indices::kAllIndices) {
            for (const SignificanceCell& c : cells) {
                if (c.algorithm == cluster::to_string(a) && c.index == indices::to_string(idx)) {
                    out << ' ' << c.stars << " |";
                }
            }
        }
        out << '\n';
    }
    return out.str();
}

inline nlohmann::json to_json(const std::vector<SignificanceCell>& cells) {
    nlohmann::json arr = nlohmann::json::array();
    for (const SignificanceCell& c : cells) {
        arr.push_back({{"algorithm", c.algorithm},
                       {"index", c.index},
                       {"p", c.p},
                       {"stars", c.stars}});
    }
    return arr;
}

}  // namespace gaze::stats
