#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gaze/viz.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace gaze;
using namespace gaze::viz;

namespace {

double signed_area(const std::vector<Point>& poly) {
    double acc = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % poly.size()];
        acc += a.x * b.y - b.x * a.y;
    }
    return 0.5 * acc;
}

bool inside_or_on(const std::vector<Point>& hull, const Point& p, double tol = 1e-9) {
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point& a = hull[i];
        const Point& b = hull[(i + 1) % hull.size()];
        const double cr = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        if (cr < -tol) return false;  // CCW hull: inside means left of every edge
    }
    return true;
}

}  // namespace

TEST_CASE("hull of the unit square plus center is the four corners, CCW") {
    const std::vector<Point> pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    const auto hull = convex_hull(pts);
    REQUIRE(hull.size() == 4);
    CHECK(signed_area(hull) > 0.0);
    for (const Point& p : pts) CHECK(inside_or_on(hull, p));
}

TEST_CASE("hull of three non-collinear points is the triangle") {
    const std::vector<Point> pts = {{0, 0}, {4, 0}, {2, 3}};
    CHECK(convex_hull(pts).size() == 3);
}

TEST_CASE("degenerate hulls: single point and segment") {
    CHECK(convex_hull({{2, 2}}).size() == 1);
    const auto seg = convex_hull({{0, 0}, {5, 5}, {2.5, 2.5}});
    CHECK(seg.size() == 2);  // collinear interior point excluded
    CHECK_THROWS_AS(convex_hull({}), DataError);
}

TEST_CASE("hull matches the brute-force edge-check oracle on random sets") {
    std::mt19937_64 gen(41);
    std::uniform_real_distribution<double> ud(0, 100);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<Point> pts;
        std::vector<oracle::P> opts;
        for (int i = 0; i < 500; ++i) {
            const double x = ud(gen), y = ud(gen);
            pts.push_back({x, y});
            opts.push_back({x, y});
        }
        const auto hull = convex_hull(pts);
        CHECK(signed_area(hull) > 0.0);

        // every input point inside or on the hull
        for (const Point& p : pts) CHECK(inside_or_on(hull, p));

        // hull vertex set equals the oracle's vertex set
        std::vector<Point> oracle_vertices;
        for (std::size_t v = 0; v < opts.size(); ++v) {
            if (oracle::is_hull_vertex(opts, v)) oracle_vertices.push_back(pts[v]);
        }
        REQUIRE(hull.size() == oracle_vertices.size());
        for (const Point& hv : hull) {
            CHECK(std::count(oracle_vertices.begin(), oracle_vertices.end(), hv) == 1);
        }
        // vertices are a subset of the input points
        for (const Point& hv : hull) {
            CHECK(std::count(pts.begin(), pts.end(), hv) >= 1);
        }
    }
}

TEST_CASE("cluster proportions count labels and noise") {
    cluster::ClusterAssignment a;
    a.labels = {0, 0, 1, -1};
    a.k = 2;
    const Proportions p = cluster_proportions(a);
    CHECK(p.per_cluster[0] == 0.5);
    CHECK(p.per_cluster[1] == 0.25);
    CHECK(p.noise == 0.25);

    SECTION("no noise labels -> zero noise, fractions sum to 1") {
        cluster::ClusterAssignment b;
        b.labels = {0, 1, 1, 2, 2, 2};
        b.k = 3;
        const Proportions q = cluster_proportions(b);
        CHECK(q.noise == 0.0);
        double total = q.noise;
        for (double v : q.per_cluster) total += v;
        CHECK_THAT(total, Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("chaikin smoothing: identity at 0 iterations, octagon from square") {
    const std::vector<Point> square = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
    CHECK(smooth_polygon(square, 0) == square);
    const auto oct = smooth_polygon(square, 1);
    REQUIRE(oct.size() == 8);
    for (const Point& p : oct) {
        CHECK(p.x >= 0.0);
        CHECK(p.x <= 4.0);
        CHECK(p.y >= 0.0);
        CHECK(p.y <= 4.0);
    }
    // fewer than 3 vertices pass through unchanged
    const std::vector<Point> seg = {{0, 0}, {1, 1}};
    CHECK(smooth_polygon(seg, 3) == seg);
}

TEST_CASE("smoothed polygons satisfy every original half-plane constraint") {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> ud(0, 50);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<Point> pts;
        for (int i = 0; i < 30; ++i) pts.push_back({ud(gen), ud(gen)});
        const auto hull = convex_hull(pts);
        if (hull.size() < 3) continue;
        for (std::size_t iters : {1, 2, 3}) {
            for (const Point& p : smooth_polygon(hull, iters)) {
                CHECK(inside_or_on(hull, p, 1e-9));
            }
        }
    }
}

TEST_CASE("render_overlay emits deterministic well-formed SVG") {
    std::vector<int> truth;
    const auto pts = testutil::make_blobs({{100, 100}, {400, 300}}, 40, 10.0, 6, &truth);
    cluster::ClusterAssignment a;
    a.labels = truth;
    a.k = 2;
    const OverlayScene scene = make_scene(pts, a, 640, 480);
    const std::string svg = render_overlay(scene);
    const std::string svg2 = render_overlay(scene);
    CHECK(svg == svg2);  // byte-identical

    // exactly 2 polygons and 2 labels
    auto count = [&](const std::string& needle) {
        std::size_t n = 0, at = 0;
        while ((at = svg.find(needle, at)) != std::string::npos) {
            ++n;
            at += needle.size();
        }
        return n;
    };
    CHECK(count("<polygon") == 2);
    CHECK(count("<text") == 2);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
    CHECK(svg.find("<svg ") != std::string::npos);
    CHECK(svg.find("%") != std::string::npos);  // proportion labels
}

TEST_CASE("scene without background renders a blank canvas rect") {
    cluster::ClusterAssignment a;
    a.labels = {0, 0, 0, 1, 1, 1};
    a.k = 2;
    const std::vector<Point> pts = {{0, 0}, {10, 0}, {0, 10}, {50, 50}, {60, 50}, {50, 60}};
    const std::string svg = render_overlay(make_scene(pts, a, 100, 100));
    CHECK(svg.find("<rect") != std::string::npos);
    CHECK(svg.find("<image") == std::string::npos);
}

TEST_CASE("noise points render as gray unfilled markers") {
    cluster::ClusterAssignment a;
    a.labels = {0, 0, 0, 1, 1, 1, -1, -1};
    a.k = 2;
    const std::vector<Point> pts = {{0, 0},   {10, 0},  {0, 10},  {50, 50},
                                    {60, 50}, {50, 60}, {90, 90}, {5, 90}};
    const std::string svg = render_overlay(make_scene(pts, a, 100, 100));
    CHECK(svg.find("stroke=\"#888888\"") != std::string::npos);
    CHECK(svg.find("fill=\"none\"") != std::string::npos);
}

TEST_CASE("render rejects bad canvases and inconsistent proportions") {
    OverlayScene scene;
    scene.width = 0;
    scene.height = 100;
    CHECK_THROWS_AS(render_overlay(scene), ConfigError);

    OverlayScene bad;
    bad.width = 100;
    bad.height = 100;
    bad.noise_proportion = 0.7;  // no hulls, sums to 0.7 != 1
    CHECK_THROWS_AS(render_overlay(bad), DataError);
}

TEST_CASE("palette assignment follows descending proportion") {
    cluster::ClusterAssignment a;
    // cluster 1 is the biggest, then 0, then 2
    a.labels = {0, 0, 1, 1, 1, 2};
    a.k = 3;
    const std::vector<Point> pts = {{0, 0}, {1, 1}, {50, 50}, {51, 50}, {50, 51}, {90, 10}};
    const OverlayScene scene = make_scene(pts, a, 100, 100);
    REQUIRE(scene.hulls.size() == 3);
    CHECK(scene.hulls[0].cluster_id == 1);
    CHECK(scene.hulls[1].cluster_id == 0);
    CHECK(scene.hulls[2].cluster_id == 2);
}
