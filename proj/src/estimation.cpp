#include "dragoon/estimation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <utility>

namespace dragoon {

namespace {

// Neighbor offsets in tie order: E, NE, N, NW, W, SW, S, SE.
constexpr std::array<std::pair<double, double>, 8> kNeighborhood = {{
    {1.0, 0.0},
    {1.0, 1.0},
    {0.0, 1.0},
    {-1.0, 1.0},
    {-1.0, 0.0},
    {-1.0, -1.0},
    {0.0, -1.0},
    {1.0, -1.0},
}};

double default_epsilon(const PointCloud& cloud, const GridSearchConfig& cfg) {
    double lat_min = 90.0, lat_max = -90.0, lon_min = 180.0, lon_max = -180.0;
    for (const auto& cp : cloud.points) {
        lat_min = std::min(lat_min, cp.point.lat);
        lat_max = std::max(lat_max, cp.point.lat);
        lon_min = std::min(lon_min, cp.point.lon);
        lon_max = std::max(lon_max, cp.point.lon);
    }
    const double diagonal =
        orthodromic_distance(GeoPoint(lat_min, lon_min), GeoPoint(lat_max, lon_max));
    return std::max({diagonal / 4.0, 1.0, cfg.epsilon_min});
}

GeoPoint coordinate_mean(const PointCloud& cloud) {
    double lat = 0.0, lon = 0.0;
    for (const auto& cp : cloud.points) {
        lat += cp.point.lat;
        lon += cp.point.lon;
    }
    const double n = static_cast<double>(cloud.points.size());
    return GeoPoint(lat / n, lon / n);
}

}  // namespace

double mean_distance(const GeoPoint& point, const PointCloud& cloud) {
    double total = 0.0;
    for (const auto& cp : cloud.points) total += orthodromic_distance(point, cp.point);
    return total / static_cast<double>(cloud.points.size());
}

GeoPoint grid_center(const PointCloud& cloud, const GridSearchConfig& cfg, GridTrace* trace) {
    if (cloud.points.empty()) throw EmptyCloud("grid center of an empty cloud");
    if (!(cfg.epsilon_min > 0.0)) throw InvalidParameter("epsilon_min must be positive");
    double epsilon = cfg.epsilon_initial > 0.0 ? cfg.epsilon_initial : default_epsilon(cloud, cfg);
    if (epsilon < cfg.epsilon_min) {
        throw InvalidParameter("epsilon_initial must be >= epsilon_min");
    }

    GeoPoint current = coordinate_mean(cloud);
    double objective = mean_distance(current, cloud);
    if (trace) trace->objectives.push_back(objective);

    while (epsilon >= cfg.epsilon_min) {
        // The local grid lives in a plane centered on the current point; the
        // objective itself stays orthodromic.
        const Projection plane{current};
        GeoPoint best_point = current;
        double best_objective = objective;
        for (const auto& [dx, dy] : kNeighborhood) {
            const GeoPoint candidate = unproject(plane, PlanarPoint(dx * epsilon, dy * epsilon));
            const double value = mean_distance(candidate, cloud);
            if (value < best_objective) {  // strict: ties resolved by order
                best_objective = value;
                best_point = candidate;
            }
        }
        if (best_objective < objective) {
            current = best_point;
            objective = best_objective;
            if (trace) {
                trace->objectives.push_back(objective);
                ++trace->moves;
            }
        } else {
            epsilon /= 2.0;
            if (trace) ++trace->halvings;
        }
    }
    return current;
}

FilterResult filter_outliers(const PointCloud& cloud, const FilterConfig& fcfg,
                             const GridSearchConfig& gcfg) {
    if (!(fcfg.drop_fraction > 0.0) || fcfg.drop_fraction >= 0.5) {
        throw InvalidParameter("drop fraction must lie in (0, 0.5)");
    }
    if (fcfg.min_points < 1 || fcfg.rounds < 0) {
        throw InvalidParameter("min_points must be >= 1 and rounds >= 0");
    }
    if (static_cast<int>(cloud.points.size()) < fcfg.min_points) {
        throw TooFewPoints("cloud of " + std::to_string(cloud.points.size()) +
                           " points is below the floor of " + std::to_string(fcfg.min_points));
    }

    FilterResult result;
    result.cloud = cloud;
    for (int round = 0; round < fcfg.rounds; ++round) {
        const int size = static_cast<int>(result.cloud.points.size());
        const int droppable = size - fcfg.min_points;
        const int to_drop =
            std::min(droppable, static_cast<int>(std::ceil(fcfg.drop_fraction * size)));
        if (to_drop <= 0) break;

        const GeoPoint center = grid_center(result.cloud, gcfg);
        std::vector<int> order(result.cloud.points.size());
        std::iota(order.begin(), order.end(), 0);
        std::vector<double> distance(result.cloud.points.size());
        for (size_t i = 0; i < result.cloud.points.size(); ++i) {
            distance[i] = orthodromic_distance(center, result.cloud.points[i].point);
        }
        // Farthest first; equal distances drop the later point.
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return distance[a] > distance[b]; });

        FilterRound fr;
        fr.center = center;
        std::vector<bool> dropped(result.cloud.points.size(), false);
        for (int i = 0; i < to_drop; ++i) {
            dropped[order[i]] = true;
            fr.dropped.push_back(result.cloud.points[order[i]]);
        }
        PointCloud surviving;
        for (size_t i = 0; i < result.cloud.points.size(); ++i) {
            if (!dropped[i]) surviving.points.push_back(result.cloud.points[i]);
        }
        result.cloud = std::move(surviving);
        result.trace.push_back(std::move(fr));
    }
    return result;
}

LocationEstimate estimate(const PointCloud& cloud, const FilterConfig& fcfg,
                          const GridSearchConfig& gcfg) {
    if (cloud.points.empty()) throw EmptyCloud("cannot estimate from an empty cloud");
    LocationEstimate out;
    out.cloud_initial = cloud;
    if (static_cast<int>(cloud.points.size()) > fcfg.min_points) {
        FilterResult filtered = filter_outliers(cloud, fcfg, gcfg);
        out.cloud_final = std::move(filtered.cloud);
        out.trace = std::move(filtered.trace);
    } else {
        out.cloud_final = cloud;  // nothing to drop
    }
    out.point = grid_center(out.cloud_final, gcfg);
    out.mean_residual_km = mean_distance(out.point, out.cloud_final);
    return out;
}

}  // namespace dragoon
