#pragma once

#include "gaze/cluster/agglomerative.hpp"
#include "gaze/cluster/assignment.hpp"
#include "gaze/cluster/birch.hpp"
#include "gaze/cluster/dbscan.hpp"
#include "gaze/cluster/gmm.hpp"
#include "gaze/cluster/kmeans.hpp"
#include "gaze/cluster/kmedoids.hpp"
#include "gaze/cluster/optics.hpp"

// =============================================================================
// FILE: gaze/clustering.hpp
// BRIEF: Umbrella header plus a uniform dispatch over the seven algorithms.
// =============================================================================

namespace gaze::cluster {

inline ClusterAssignment run(Algorithm algorithm, const std::vector<Point>& points,
                             const HyperParams& p) {
    switch (algorithm) {
        case Algorithm::KMeans: return kmeans(points, p.k, p.seed, p.max_iter, p.tol);
        case Algorithm::KMedoids: return kmedoids(points, p.k, p.seed, p.max_iter);
        case Algorithm::AC: return agglomerative(points, p.k);
        case Algorithm::BIRCH: return birch(points, p.threshold, p.branching, p.k);
        case Algorithm::DBSCAN: return dbscan(points, p.eps, p.min_pts);
        case Algorithm::OPTICS: return optics(points, p.min_pts, p.xi);
        case Algorithm::GMM: return gmm(points, p.k, p.seed, p.max_iter, p.tol);
    }
    throw Error("unreachable algorithm enum");
}

}  // namespace gaze::cluster
