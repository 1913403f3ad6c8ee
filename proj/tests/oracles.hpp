// Independent oracles used by the unit and acceptance suites. Everything in
// here deliberately avoids the library's own solution paths: circle cases
// come from dense angular sampling, hop counts from Floyd-Warshall, k-center
// optima from exhaustive subset scans, grid centers from an exhaustive grid.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "dragoon/estimation.hpp"
#include "dragoon/geo.hpp"
#include "dragoon/latency_model.hpp"
#include "dragoon/topology.hpp"

namespace dragoon::testing {

// ---- geodesic reference (atan2 form; the library uses haversine) ----

inline double reference_great_circle(const GeoPoint& a, const GeoPoint& b) {
    const double p1 = a.lat * M_PI / 180.0, l1 = a.lon * M_PI / 180.0;
    const double p2 = b.lat * M_PI / 180.0, l2 = b.lon * M_PI / 180.0;
    const double dl = l2 - l1;
    const double num = std::hypot(std::cos(p2) * std::sin(dl),
                                  std::cos(p1) * std::sin(p2) -
                                      std::sin(p1) * std::cos(p2) * std::cos(dl));
    const double den =
        std::sin(p1) * std::sin(p2) + std::cos(p1) * std::cos(p2) * std::cos(dl);
    return kEarthRadiusKm * std::atan2(num, den);
}

// ---- circle-intersection oracle: dense angular sampling of circle 1 ----

struct CircleOracleResult {
    enum Kind { two_points, disjoint, contained } kind = two_points;
    int inner = -1;                    // for contained
    std::vector<PlanarPoint> points;   // for two_points
};

inline CircleOracleResult sample_circle_intersection(const Circle& c1, const Circle& c2,
                                                     int samples = 4096) {
    const auto signed_gap = [&](double theta) {
        const PlanarPoint p =
            c1.center + c1.radius_km * PlanarPoint(std::cos(theta), std::sin(theta));
        return (p - c2.center).norm() - c2.radius_km;
    };

    CircleOracleResult result;
    std::vector<double> crossings;
    double prev = signed_gap(0.0);
    bool any_inside = prev < 0.0, any_outside = prev > 0.0;
    for (int i = 1; i <= samples; ++i) {
        const double theta = 2.0 * M_PI * i / samples;
        const double value = signed_gap(theta);
        any_inside = any_inside || value < 0.0;
        any_outside = any_outside || value > 0.0;
        if ((prev < 0.0) != (value < 0.0)) {
            // Bisect the sign change down to ~1e-14 rad.
            double lo = 2.0 * M_PI * (i - 1) / samples, hi = theta;
            double f_lo = prev;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double f_mid = signed_gap(mid);
                if ((f_lo < 0.0) == (f_mid < 0.0)) {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            crossings.push_back(0.5 * (lo + hi));
        }
        prev = value;
    }

    if (!crossings.empty()) {
        result.kind = CircleOracleResult::two_points;
        for (double theta : crossings) {
            result.points.push_back(c1.center +
                                    c1.radius_km * PlanarPoint(std::cos(theta), std::sin(theta)));
        }
        return result;
    }
    if (any_inside) {  // circle 1 entirely inside circle 2
        result.kind = CircleOracleResult::contained;
        result.inner = 0;
        return result;
    }
    // Circle 1 entirely outside circle 2: contained if center 2 lies inside
    // circle 1, disjoint otherwise.
    if ((c2.center - c1.center).norm() < c1.radius_km) {
        result.kind = CircleOracleResult::contained;
        result.inner = 1;
    } else {
        result.kind = CircleOracleResult::disjoint;
    }
    return result;
}

// Random circle pairs away from the case knife-edges (a sampling oracle has
// finite resolution exactly at tangency).
inline std::pair<Circle, Circle> random_circle_pair(std::mt19937& rng, double boundary_margin = 1e-3) {
    std::uniform_real_distribution<double> coord(-100.0, 100.0);
    std::uniform_real_distribution<double> radius(1.0, 150.0);
    for (;;) {
        const Circle c1{PlanarPoint(coord(rng), coord(rng)), radius(rng)};
        const Circle c2{PlanarPoint(coord(rng), coord(rng)), radius(rng)};
        const double d = (c2.center - c1.center).norm();
        if (d < 1e-3) continue;
        if (std::abs(d - (c1.radius_km + c2.radius_km)) < boundary_margin) continue;
        if (std::abs(d - std::abs(c1.radius_km - c2.radius_km)) < boundary_margin) continue;
        return {c1, c2};
    }
}

// ---- second algebraic route: substitution quadratic in the shifted y ----
// Eliminates x via the radical line, solves the quadratic in y' = y - y1,
// then back-substitutes. Requires the centers not to share an x coordinate.

inline bool quadratic_route(const Circle& c1, const Circle& c2, PlanarPoint out[2]) {
    const double x1 = c1.center.x(), y1 = c1.center.y(), r1 = c1.radius_km;
    const double x2 = c2.center.x(), y2 = c2.center.y(), r2 = c2.radius_km;
    const double a = x1 * x1 + y1 * y1 - r1 * r1 - x2 * x2 - y2 * y2 + r2 * r2;
    const double b = -2.0 * (x1 - x2) * x1 - 2.0 * (y1 - y2) * y1;
    const double c = x1 - x2;
    const double d = y1 - y2;
    if (std::abs(c) < 1e-9) return false;
    const double cc_dd = c * c + d * d;
    const double half_ab = (a + b) / (2.0 * c);
    // y'^2 - ((a+b)d / (c^2+d^2)) y' + (((a+b)/2c)^2 - r1^2) c^2/(c^2+d^2) = 0
    const double coeff_b = -((a + b) * d) / cc_dd;
    const double coeff_c = (half_ab * half_ab - r1 * r1) * (c * c) / cc_dd;
    const double disc = coeff_b * coeff_b - 4.0 * coeff_c;
    if (disc < 0.0) return false;
    const double root = std::sqrt(disc);
    for (int i = 0; i < 2; ++i) {
        const double y_shift = (-coeff_b + (i == 0 ? root : -root)) / 2.0;
        const double y = y_shift + y1;
        const double x = (a - 2.0 * d * y) / (2.0 * c);  // radical line
        out[i] = PlanarPoint(x, y);
    }
    return true;
}

// ---- graph oracles ----

inline Eigen::MatrixXi floyd_warshall_hops(const Topology& t) {
    const int n = t.node_count();
    const int inf = 1 << 20;
    Eigen::MatrixXi dist = Eigen::MatrixXi::Constant(n, n, inf);
    for (int v = 0; v < n; ++v) dist(v, v) = 0;
    for (const auto& [a, b] : t.edges()) dist(a, b) = dist(b, a) = 1;
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                dist(i, j) = std::min(dist(i, j), dist(i, k) + dist(k, j));
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (dist(i, j) >= inf) dist(i, j) = kUnreachableHops;
        }
    }
    return dist;
}

// Exhaustive k-center optimum (max hops over the largest component).
inline int brute_force_k_center(const Topology& t, const HopMatrix& h, int k) {
    const std::vector<int>& nodes = t.largest_component();
    std::vector<int> subset(k);
    int best = kUnreachableHops;
    const std::function<void(int, int)> scan = [&](int start, int chosen) {
        if (chosen == k) {
            int worst = 0;
            for (int v : nodes) {
                int nearest = kUnreachableHops;
                for (int c = 0; c < k; ++c) nearest = std::min(nearest, h(v, subset[c]));
                worst = std::max(worst, nearest);
            }
            best = std::min(best, worst);
            return;
        }
        for (int i = start; i < static_cast<int>(nodes.size()); ++i) {
            subset[chosen] = nodes[i];
            scan(i + 1, chosen + 1);
        }
    };
    scan(0, 0);
    return best;
}

// Random connected graph: spanning tree plus extra edges.
inline Topology random_connected_topology(std::mt19937& rng, int n, double extra_edge_share = 0.4) {
    std::uniform_real_distribution<double> lat(35.0, 60.0), lon(-10.0, 25.0);
    std::vector<TopologyNode> nodes;
    nodes.reserve(n);
    for (int i = 0; i < n; ++i) {
        const std::string id = (i < 10 ? "n0" : "n") + std::to_string(i);
        nodes.push_back(TopologyNode{id, id, GeoPoint(lat(rng), lon(rng))});
    }
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> parent(0, v - 1);
        edges.emplace_back(parent(rng), v);
    }
    const int extra = static_cast<int>(extra_edge_share * n);
    std::uniform_int_distribution<int> any(0, n - 1);
    for (int i = 0; i < extra; ++i) {
        const int a = any(rng), b = any(rng);
        if (a == b) continue;
        const auto edge = std::minmax(a, b);
        if (std::find(edges.begin(), edges.end(), std::make_pair(edge.first, edge.second)) ==
            edges.end()) {
            edges.emplace_back(edge.first, edge.second);
        }
    }
    return Topology(std::move(nodes), std::move(edges));
}

// ---- estimation oracle: exhaustive grid scan ----
// Scans a 0.05 km lattice over the cloud's bounding box (with margin) in a
// single azimuthal plane; the winning node is re-scored with the true
// orthodromic objective. Planar scanning only mislocates the argmin by a few
// meters at 100 km scales, far below the comparison tolerance.

inline double dense_grid_best_objective(const PointCloud& cloud, double step_km = 0.05,
                                        double margin_km = 1.0) {
    double lat_min = 90.0, lat_max = -90.0, lon_min = 180.0, lon_max = -180.0;
    for (const auto& cp : cloud.points) {
        lat_min = std::min(lat_min, cp.point.lat);
        lat_max = std::max(lat_max, cp.point.lat);
        lon_min = std::min(lon_min, cp.point.lon);
        lon_max = std::max(lon_max, cp.point.lon);
    }
    const GeoPoint center(0.5 * (lat_min + lat_max), 0.5 * (lon_min + lon_max));
    const Projection plane{center};

    std::vector<PlanarPoint> planar;
    planar.reserve(cloud.points.size());
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
    for (const auto& cp : cloud.points) {
        const PlanarPoint p = project(plane, cp.point);
        x_min = std::min(x_min, p.x());
        x_max = std::max(x_max, p.x());
        y_min = std::min(y_min, p.y());
        y_max = std::max(y_max, p.y());
        planar.push_back(p);
    }
    x_min -= margin_km;
    x_max += margin_km;
    y_min -= margin_km;
    y_max += margin_km;

    const int nx = static_cast<int>((x_max - x_min) / step_km) + 1;
    const int ny = static_cast<int>((y_max - y_min) / step_km) + 1;
    Eigen::ArrayXd xs(nx), ys(ny);
    for (int i = 0; i < nx; ++i) xs(i) = x_min + i * step_km;
    for (int j = 0; j < ny; ++j) ys(j) = y_min + j * step_km;

    Eigen::ArrayXXd total = Eigen::ArrayXXd::Zero(ny, nx);
    Eigen::ArrayXXd grid_x = xs.transpose().replicate(ny, 1);
    Eigen::ArrayXXd grid_y = ys.replicate(1, nx);
    for (const PlanarPoint& p : planar) {
        total += ((grid_x - p.x()).square() + (grid_y - p.y()).square()).sqrt();
    }
    int best_row = 0, best_col = 0;
    total.minCoeff(&best_row, &best_col);

    const GeoPoint winner = unproject(plane, PlanarPoint(xs(best_col), ys(best_row)));
    return mean_distance(winner, cloud);
}

// ---- synthetic latency curves for fit-recovery checks ----

inline LatencyDistanceCurve random_monotone_curve(std::mt19937& rng) {
    std::uniform_real_distribution<double> p(100.0, 2000.0), q(0.05, 2.0), n(0.5, 5.0),
        m(-100.0, 100.0);
    LatencyDistanceCurve curve;
    curve.p = p(rng);
    curve.q = q(rng);
    curve.n = n(rng);
    curve.m = m(rng);
    curve.lc = 1.0;
    return curve;
}

}  // namespace dragoon::testing
