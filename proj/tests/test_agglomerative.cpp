#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gaze/cluster/agglomerative.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace gaze;
using cluster::agglomerative;

TEST_CASE("agglomerative cuts two distant pairs at k=2") {
    const std::vector<Point> pts = {{0, 0}, {0, 1}, {50, 0}, {50, 1}};
    const auto a = agglomerative(pts, 2);
    REQUIRE(a.k == 2);
    CHECK(a.labels[0] == a.labels[1]);
    CHECK(a.labels[2] == a.labels[3]);
    CHECK(a.labels[0] != a.labels[2]);
}

TEST_CASE("agglomerative with k = n yields singletons") {
    const std::vector<Point> pts = {{0, 0}, {1, 5}, {9, 2}, {4, 7}};
    const auto a = agglomerative(pts, pts.size());
    CHECK(a.k == pts.size());
    std::vector<bool> seen(pts.size(), false);
    for (int l : a.labels) seen[l] = true;
    for (bool s : seen) CHECK(s);
}

TEST_CASE("full merge sequence equals the naive Ward oracle for n <= 8") {
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> ud(0.0, 20.0);
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t n = 4 + gen() % 5;  // 4..8
        std::vector<Point> pts;
        std::vector<oracle::P> opts;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = ud(gen), y = ud(gen);
            pts.push_back({x, y});
            opts.push_back({x, y});
        }
        std::vector<double> costs;
        const auto full = cluster::detail::ward_cut(pts, 1, &costs);
        const auto want = oracle::ward_merges(opts, 1);
        REQUIRE(*std::max_element(full.begin(), full.end()) == 0);
        REQUIRE(costs.size() == want.size());
        for (std::size_t m = 0; m < want.size(); ++m) {
            INFO("merge " << m << " of " << n << " points, rep " << rep);
            CHECK_THAT(costs[m], Catch::Matchers::WithinRel(want[m].cost, 1e-9));
        }
        // cut-level labels agree as partitions for every k
        for (std::size_t k = 2; k <= std::min<std::size_t>(n, 4); ++k) {
            const auto cut = agglomerative(pts, k);
            const auto ol = oracle::ward_labels(opts, k);
            CHECK(testutil::partition_equal(cut.labels, ol));
        }
    }
}

TEST_CASE("merge cost sequence is non-decreasing") {
    const auto pts = testutil::uniform_points(60, 0, 100, 77);
    std::vector<double> costs;
    agglomerative(pts, 2, &costs);
    REQUIRE(costs.size() == pts.size() - 2);
    for (std::size_t i = 1; i < costs.size(); ++i) {
        CHECK(costs[i] >= costs[i - 1] - 1e-9);
    }
}

TEST_CASE("agglomerative labels are first-occurrence canonical") {
    const std::vector<Point> pts = {{50, 0}, {0, 0}, {50, 1}, {0, 1}};
    const auto a = agglomerative(pts, 2);
    CHECK(a.labels[0] == 0);  // first point starts cluster 0
    CHECK(a.labels[1] == 1);
    CHECK(a.labels[2] == 0);
    CHECK(a.labels[3] == 1);
}
