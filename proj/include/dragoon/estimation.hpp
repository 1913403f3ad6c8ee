#pragma once

#include <vector>

#include "dragoon/lateration.hpp"

namespace dragoon {

/// Grid-refinement search configuration. epsilon_initial <= 0 selects the
/// default: a quarter of the cloud's bounding-box diagonal, at least 1 km
/// (and never below epsilon_min).
struct GridSearchConfig {
    double epsilon_initial = 0.0;  // km; <= 0 = auto
    double epsilon_min = 0.1;      // km
};

struct FilterConfig {
    double drop_fraction = 0.1;  // per round, in (0, 0.5)
    int rounds = 3;
    int min_points = 4;  // the cloud never shrinks below this
};

/// Objective after every accepted move plus halving/move counters; lets
/// callers assert monotone descent.
struct GridTrace {
    std::vector<double> objectives;
    int moves = 0;
    int halvings = 0;
};

/// Mean orthodromic distance from `point` to the cloud, km.
double mean_distance(const GeoPoint& point, const PointCloud& cloud);

/// Point minimizing the mean distance to the cloud: best-of-8 neighbor
/// descent from the coordinate mean, halving the grid spacing whenever no
/// neighbor improves, until the spacing drops below epsilon_min. Neighbor
/// tie order is E, NE, N, NW, W, SW, S, SE.
GeoPoint grid_center(const PointCloud& cloud, const GridSearchConfig& cfg,
                     GridTrace* trace = nullptr);

struct FilterRound {
    GeoPoint center;
    std::vector<CloudPoint> dropped;
};

struct FilterResult {
    PointCloud cloud;
    std::vector<FilterRound> trace;
};

/// Iterative outlier removal: per round, place the grid center and drop the
/// ceil(drop_fraction * size) points farthest from it, never shrinking the
/// cloud below min_points. Throws TooFewPoints when the input is already
/// smaller than min_points.
FilterResult filter_outliers(const PointCloud& cloud, const FilterConfig& fcfg,
                             const GridSearchConfig& gcfg);

struct LocationEstimate {
    GeoPoint point;
    PointCloud cloud_initial;
    PointCloud cloud_final;
    double mean_residual_km = 0.0;
    std::vector<FilterRound> trace;
};

/// Full target estimation: outlier filtering (skipped for clouds at or below
/// min_points) followed by the grid center of the surviving cloud.
LocationEstimate estimate(const PointCloud& cloud, const FilterConfig& fcfg,
                          const GridSearchConfig& gcfg);

}  // namespace dragoon
