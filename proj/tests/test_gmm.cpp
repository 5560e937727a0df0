#include <catch2/catch_amalgamated.hpp>

#include "gaze/cluster/gmm.hpp"
#include "test_util.hpp"

using namespace gaze;
using cluster::gmm;

TEST_CASE("gmm separates two well-separated isotropic Gaussians") {
    std::vector<int> truth;
    const auto pts = testutil::make_blobs({{0, 0}, {100, 0}}, 100, 5.0, 15, &truth);
    const auto a = gmm(pts, 2, 1);
    REQUIRE(a.k == 2);
    CHECK(testutil::label_purity(a.labels, truth) >= 0.99);
}

TEST_CASE("gmm on two duplicated points converges means onto them") {
    std::vector<Point> pts;
    for (int i = 0; i < 10; ++i) pts.push_back({0, 0});
    for (int i = 0; i < 10; ++i) pts.push_back({10, 10});
    const auto a = gmm(pts, 2, 0);
    REQUIRE(a.k == 2);
    REQUIRE(a.centroids.size() == 2);
    const Point c0 = a.centroids[a.labels[0]];
    const Point c1 = a.centroids[a.labels[10]];
    CHECK_THAT(c0.x, Catch::Matchers::WithinAbs(0.0, 1e-6));
    CHECK_THAT(c0.y, Catch::Matchers::WithinAbs(0.0, 1e-6));
    CHECK_THAT(c1.x, Catch::Matchers::WithinAbs(10.0, 1e-6));
    CHECK_THAT(c1.y, Catch::Matchers::WithinAbs(10.0, 1e-6));
}

TEST_CASE("gmm log-likelihood trace is monotone non-decreasing") {
    std::vector<int> truth;
    const auto pts = testutil::make_blobs({{0, 0}, {30, 20}, {60, 0}}, 50, 8.0, 42, &truth);
    for (std::uint64_t seed : {0ULL, 3ULL, 9ULL}) {
        std::vector<double> ll;
        gmm(pts, 3, seed, 200, 1e-9, &ll);
        REQUIRE(ll.size() >= 2);
        for (std::size_t i = 1; i < ll.size(); ++i) {
            CHECK(ll[i] >= ll[i - 1] - 1e-8);
        }
    }
}

TEST_CASE("gmm rejects invalid inputs") {
    const std::vector<Point> pts = {{0, 0}, {1, 1}};
    CHECK_THROWS_WITH(gmm(pts, 3, 0), Catch::Matchers::ContainsSubstring("insufficient points"));
    CHECK_THROWS_AS(gmm(pts, 1, 0), ConfigError);
}

TEST_CASE("gmm handles anisotropic clusters via full covariances") {
    // Two elongated clusters that a spherical model would confuse at the ends.
    std::mt19937_64 gen(5);
    std::normal_distribution<double> wide(0.0, 20.0), narrow(0.0, 1.0);
    std::vector<Point> pts;
    std::vector<int> truth;
    for (int i = 0; i < 120; ++i) {
        pts.push_back({wide(gen), 0.0 + narrow(gen)});
        truth.push_back(0);
    }
    for (int i = 0; i < 120; ++i) {
        pts.push_back({wide(gen), 12.0 + narrow(gen)});
        truth.push_back(1);
    }
    const auto a = gmm(pts, 2, 2);
    CHECK(testutil::label_purity(a.labels, truth) >= 0.97);
}
