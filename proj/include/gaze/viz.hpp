#pragma once

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gaze/cluster/assignment.hpp"
#include "gaze/common.hpp"

// =============================================================================
// FILE: gaze/viz.hpp
// BRIEF: Convex-hull cluster overlays. Hulls come from the monotone chain
//        (counter-clockwise, collinear points dropped); polygons may be
//        Chaikin-smoothed for presentation; output is deterministic SVG with
//        per-cluster proportion labels and gray noise markers.
// =============================================================================

namespace gaze::viz {

/// Monotone-chain convex hull, counter-clockwise, collinear interior points
/// excluded. 1- and 2-point inputs yield degenerate polygons.
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
    if (pts.empty()) throw DataError("convex hull of empty point set");
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;

    auto cross = [](const Point& o, const Point& a, const Point& b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };

    std::vector<Point> hull(2 * n);
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (h >= 2 && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0.0) --h;
        hull[h++] = pts[i];
    }
    const std::size_t lower = h + 1;
    for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
        while (h >= lower && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0.0) --h;
        hull[h++] = pts[i];
    }
    hull.resize(h - 1);  // last point repeats the first
    return hull;
}

struct Proportions {
    std::vector<double> per_cluster;  // indexed by cluster label
    double noise = 0.0;
};

inline Proportions cluster_proportions(const cluster::ClusterAssignment& a) {
    if (a.labels.empty()) throw DataError("proportions of empty assignment");
    Proportions p;
    p.per_cluster.assign(a.k, 0.0);
    const double n = static_cast<double>(a.labels.size());
    for (int l : a.labels) {
        if (l == -1) {
            p.noise += 1.0;
        } else {
            p.per_cluster[l] += 1.0;
        }
    }
    for (double& v : p.per_cluster) v /= n;
    p.noise /= n;
    return p;
}

/// Chaikin corner cutting; the smoothed polygon stays inside the original
/// convex hull. Fewer than 3 vertices pass through unchanged.
inline std::vector<Point> smooth_polygon(std::vector<Point> vertices, std::size_t iterations) {
    if (vertices.size() < 3) return vertices;
    for (std::size_t it = 0; it < iterations; ++it) {
        std::vector<Point> next;
        next.reserve(2 * vertices.size());
        const std::size_t n = vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = vertices[i];
            const Point& b = vertices[(i + 1) % n];
            next.push_back({0.75 * a.x + 0.25 * b.x, 0.75 * a.y + 0.25 * b.y});
            next.push_back({0.25 * a.x + 0.75 * b.x, 0.25 * a.y + 0.75 * b.y});
        }
        vertices = std::move(next);
    }
    return vertices;
}

struct HullPolygon {
    std::vector<Point> vertices;  // CCW
    int cluster_id = 0;
    double proportion = 0.0;
};

struct OverlayScene {
    double width = 0.0;
    double height = 0.0;
    std::optional<std::string> background_href;  // raster layer by reference
    std::vector<HullPolygon> hulls;
    std::vector<Point> noise_points;
    double noise_proportion = 0.0;
    std::size_t smoothing_iterations = 0;
};

/// Ten-color palette assigned by descending cluster proportion.
inline const std::vector<std::string>& palette() {
    static const std::vector<std::string> colors = {
        "#ffd92f", "#66c2a5", "#fc8d62", "#8da0cb", "#e78ac3",
        "#a6d854", "#e5c494", "#b3b3b3", "#1f78b4", "#33a02c"};
    return colors;
}

inline OverlayScene make_scene(const std::vector<Point>& points,
                               const cluster::ClusterAssignment& a, double width, double height,
                               std::optional<std::string> background_href = std::nullopt,
                               std::size_t smoothing_iterations = 0) {
    const Proportions props = cluster_proportions(a);
    OverlayScene scene;
    scene.width = width;
    scene.height = height;
    scene.background_href = std::move(background_href);
    scene.smoothing_iterations = smoothing_iterations;
    scene.noise_proportion = props.noise;
    for (std::size_t c = 0; c < a.k; ++c) {
        std::vector<Point> members;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (a.labels[i] == static_cast<int>(c)) members.push_back(points[i]);
        }
        HullPolygon hull;
        hull.vertices = convex_hull(members);
        hull.cluster_id = static_cast<int>(c);
        hull.proportion = props.per_cluster[c];
        scene.hulls.push_back(std::move(hull));
    }
    // Palette order: descending proportion, ties toward the lower cluster id.
    std::stable_sort(scene.hulls.begin(), scene.hulls.end(),
                     [](const HullPolygon& x, const HullPolygon& y) {
                         return x.proportion > y.proportion;
                     });
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (a.labels[i] == -1) scene.noise_points.push_back(points[i]);
    }
    return scene;
}

namespace detail {

inline std::string fmt3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

inline std::string fmt_pct(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * v);
    return buf;
}

}  // namespace detail

/// Deterministic SVG: identical scenes render to identical bytes.
inline std::string render_overlay(const OverlayScene& scene) {
    if (!(scene.width > 0.0) || !(scene.height > 0.0)) {
        throw ConfigError("canvas size must be positive");
    }
    double total = scene.noise_proportion;
    for (const HullPolygon& h : scene.hulls) total += h.proportion;
    if (std::abs(total - 1.0) > 1e-9) {
        throw DataError("cluster proportions plus noise must sum to 1");
    }

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\" "
        << "width=\"" << detail::fmt3(scene.width) << "\" height=\"" << detail::fmt3(scene.height)
        << "\" viewBox=\"0 0 " << detail::fmt3(scene.width) << ' ' << detail::fmt3(scene.height)
        << "\">\n";
    if (scene.background_href) {
        svg << "  <image xlink:href=\"" << *scene.background_href << "\" x=\"0\" y=\"0\" width=\""
            << detail::fmt3(scene.width) << "\" height=\"" << detail::fmt3(scene.height) << "\"/>\n";
    } else {
        svg << "  <rect x=\"0\" y=\"0\" width=\"" << detail::fmt3(scene.width) << "\" height=\""
            << detail::fmt3(scene.height) << "\" fill=\"#ffffff\"/>\n";
    }

    const auto& colors = palette();
    for (std::size_t i = 0; i < scene.hulls.size(); ++i) {
        const HullPolygon& hull = scene.hulls[i];
        const std::string& color = colors[i % colors.size()];
        const std::vector<Point> verts = scene.smoothing_iterations > 0
                                             ? smooth_polygon(hull.vertices, scene.smoothing_iterations)
                                             : hull.vertices;
        if (verts.size() >= 3) {
            svg << "  <polygon points=\"";
            for (std::size_t v = 0; v < verts.size(); ++v) {
                if (v > 0) svg << ' ';
                svg << detail::fmt3(verts[v].x) << ',' << detail::fmt3(verts[v].y);
            }
            svg << "\" fill=\"" << color << "\" fill-opacity=\"0.4\" stroke=\"" << color
                << "\" stroke-width=\"1.5\"/>\n";
        } else if (verts.size() == 2) {
            svg << "  <line x1=\"" << detail::fmt3(verts[0].x) << "\" y1=\"" << detail::fmt3(verts[0].y)
                << "\" x2=\"" << detail::fmt3(verts[1].x) << "\" y2=\"" << detail::fmt3(verts[1].y)
                << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        } else {
            svg << "  <circle cx=\"" << detail::fmt3(verts[0].x) << "\" cy=\""
                << detail::fmt3(verts[0].y) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        const Point c = mean_point(hull.vertices);
        svg << "  <text x=\"" << detail::fmt3(c.x) << "\" y=\"" << detail::fmt3(c.y)
            << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" fill=\"#000000\">"
            << detail::fmt_pct(hull.proportion) << "</text>\n";
    }

    for (const Point& p : scene.noise_points) {
        svg << "  <circle cx=\"" << detail::fmt3(p.x) << "\" cy=\"" << detail::fmt3(p.y)
            << "\" r=\"1.5\" fill=\"none\" stroke=\"#888888\" stroke-width=\"0.8\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace gaze::viz
