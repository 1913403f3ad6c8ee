#pragma once

#include <Eigen/Core>
#include <variant>

#include "dragoon/errors.hpp"

namespace dragoon {

/// Mean Earth radius in km (WGS84 mean radius R1).
inline constexpr double kEarthRadiusKm = 6371.0088;

/// Azimuthal-equidistant projections are considered valid within this
/// distance of their origin.
inline constexpr double kProjectionRangeKm = 5000.0;

/// Tangency / residual tolerance for circle intersections, km.
inline constexpr double kIntersectionToleranceKm = 1e-6;

/// Two circle centers closer than this are treated as coincident, km.
inline constexpr double kCoincidentCentersKm = 1e-9;

/// WGS84 coordinate in degrees. Latitude is validated to [-90, 90];
/// longitude is normalized into [-180, 180) on construction.
struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;

    GeoPoint() = default;
    GeoPoint(double lat_deg, double lon_deg);
};

bool operator==(const GeoPoint& a, const GeoPoint& b);

/// Planar coordinate: km east (x) / km north (y) of a projection origin.
using PlanarPoint = Eigen::Vector2d;

struct Circle {
    PlanarPoint center;
    double radius_km = 0.0;  // must be > 0
};

/// Great-circle distance in km on the mean-radius sphere.
double orthodromic_distance(const GeoPoint& a, const GeoPoint& b);

/// Point reached from `start` travelling `distance_km` along the initial
/// bearing `bearing_deg` (clockwise from north).
GeoPoint destination_point(const GeoPoint& start, double bearing_deg, double distance_km);

/// Great-circle midpoint. Undefined for antipodal inputs.
GeoPoint geodesic_midpoint(const GeoPoint& a, const GeoPoint& b);

/// Azimuthal-equidistant projection about `origin`: distances from the
/// origin are preserved exactly, the origin maps to (0, 0).
struct Projection {
    GeoPoint origin;
};

/// Forward projection. Throws OutOfProjectionRange beyond kProjectionRangeKm.
PlanarPoint project(const Projection& p, const GeoPoint& g);

/// Inverse projection. Throws OutOfProjectionRange for |pt| >= kProjectionRangeKm.
GeoPoint unproject(const Projection& p, const PlanarPoint& pt);

// Circle-circle intersection outcomes. TwoPoints orders the pair
// deterministically: `first` lies to the left of the center1->center2 axis.
struct TwoPoints {
    PlanarPoint first;
    PlanarPoint second;
};
struct OnePoint {
    PlanarPoint point;
    bool shrunk = false;  // produced by RadiusPolicy::shrink_to_tangent
};
struct DisjointOutside {
    PlanarPoint gap_midpoint;  // midpoint of the gap segment between the circles
};
struct Contained {
    int inner = 0;  // 0 = first circle is the inner one, 1 = second
};

using IntersectionResult = std::variant<TwoPoints, OnePoint, DisjointOutside, Contained>;

/// What to do when the circles do not intersect: keep the degenerate
/// classification, or reduce the larger radius until the circles touch.
enum class RadiusPolicy { keep, shrink_to_tangent };

/// Intersects two circles. Throws CoincidentCenters when the centers are
/// closer than kCoincidentCentersKm (the caller must skip such pairs).
IntersectionResult intersect_circles(const Circle& c1, const Circle& c2,
                                     RadiusPolicy policy = RadiusPolicy::keep);

}  // namespace dragoon
