#include "dragoon/geo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dragoon {

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg2rad(double deg) { return deg * kPi / 180.0; }
double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Central angle between two points, radians; haversine form keeps good
// accuracy for small separations.
double central_angle(const GeoPoint& a, const GeoPoint& b) {
    const double phi1 = deg2rad(a.lat);
    const double phi2 = deg2rad(b.lat);
    const double s_lat = std::sin(deg2rad(b.lat - a.lat) / 2.0);
    const double s_lon = std::sin(deg2rad(b.lon - a.lon) / 2.0);
    double h = s_lat * s_lat + std::cos(phi1) * std::cos(phi2) * s_lon * s_lon;
    h = std::clamp(h, 0.0, 1.0);
    return 2.0 * std::atan2(std::sqrt(h), std::sqrt(1.0 - h));
}

}  // namespace

GeoPoint::GeoPoint(double lat_deg, double lon_deg) {
    if (!std::isfinite(lat_deg) || !std::isfinite(lon_deg)) {
        throw InvalidCoordinates("coordinates must be finite");
    }
    if (lat_deg < -90.0 || lat_deg > 90.0) {
        throw InvalidCoordinates("latitude " + std::to_string(lat_deg) +
                                 " outside [-90, 90]");
    }
    lat = lat_deg;
    lon = std::fmod(lon_deg, 360.0);
    if (lon < -180.0) lon += 360.0;
    if (lon >= 180.0) lon -= 360.0;
}

bool operator==(const GeoPoint& a, const GeoPoint& b) {
    return a.lat == b.lat && a.lon == b.lon;
}

double orthodromic_distance(const GeoPoint& a, const GeoPoint& b) {
    return kEarthRadiusKm * central_angle(a, b);
}

GeoPoint destination_point(const GeoPoint& start, double bearing_deg, double distance_km) {
    const double phi1 = deg2rad(start.lat);
    const double lambda1 = deg2rad(start.lon);
    const double theta = deg2rad(bearing_deg);
    const double delta = distance_km / kEarthRadiusKm;

    const double sin_phi2 = std::sin(phi1) * std::cos(delta) +
                            std::cos(phi1) * std::sin(delta) * std::cos(theta);
    const double phi2 = std::asin(std::clamp(sin_phi2, -1.0, 1.0));
    const double lambda2 =
        lambda1 + std::atan2(std::sin(theta) * std::sin(delta) * std::cos(phi1),
                             std::cos(delta) - std::sin(phi1) * sin_phi2);
    return GeoPoint(rad2deg(phi2), rad2deg(lambda2));
}

GeoPoint geodesic_midpoint(const GeoPoint& a, const GeoPoint& b) {
    const double phi1 = deg2rad(a.lat), lambda1 = deg2rad(a.lon);
    const double phi2 = deg2rad(b.lat), lambda2 = deg2rad(b.lon);
    Eigen::Vector3d u(std::cos(phi1) * std::cos(lambda1), std::cos(phi1) * std::sin(lambda1),
                      std::sin(phi1));
    Eigen::Vector3d v(std::cos(phi2) * std::cos(lambda2), std::cos(phi2) * std::sin(lambda2),
                      std::sin(phi2));
    Eigen::Vector3d m = u + v;
    const double norm = m.norm();
    if (norm < 1e-12) {
        throw InvalidCoordinates("midpoint of antipodal points is undefined");
    }
    m /= norm;
    return GeoPoint(rad2deg(std::asin(std::clamp(m.z(), -1.0, 1.0))),
                    rad2deg(std::atan2(m.y(), m.x())));
}

PlanarPoint project(const Projection& p, const GeoPoint& g) {
    const double c = central_angle(p.origin, g);
    const double dist = kEarthRadiusKm * c;
    if (dist >= kProjectionRangeKm) {
        throw OutOfProjectionRange("point " + std::to_string(dist) +
                                   " km from projection origin (limit " +
                                   std::to_string(kProjectionRangeKm) + ")");
    }
    const double phi0 = deg2rad(p.origin.lat);
    const double phi = deg2rad(g.lat);
    const double dl = deg2rad(g.lon - p.origin.lon);

    // sin(c)*sin(azimuth) and sin(c)*cos(azimuth); normalizing by their
    // hypot makes |result| equal R*c exactly.
    const double east = std::cos(phi) * std::sin(dl);
    const double north =
        std::cos(phi0) * std::sin(phi) - std::sin(phi0) * std::cos(phi) * std::cos(dl);
    const double norm = std::hypot(east, north);
    if (norm == 0.0) {
        return PlanarPoint::Zero();
    }
    return PlanarPoint(dist * east / norm, dist * north / norm);
}

GeoPoint unproject(const Projection& p, const PlanarPoint& pt) {
    const double rho = pt.norm();
    if (rho >= kProjectionRangeKm) {
        throw OutOfProjectionRange("planar point " + std::to_string(rho) +
                                   " km from projection origin (limit " +
                                   std::to_string(kProjectionRangeKm) + ")");
    }
    if (rho == 0.0) {
        return p.origin;
    }
    const double c = rho / kEarthRadiusKm;
    const double sin_c = std::sin(c), cos_c = std::cos(c);
    const double phi0 = deg2rad(p.origin.lat);
    const double sin_phi =
        cos_c * std::sin(phi0) + (pt.y() * sin_c * std::cos(phi0)) / rho;
    const double phi = std::asin(std::clamp(sin_phi, -1.0, 1.0));
    const double lambda =
        deg2rad(p.origin.lon) +
        std::atan2(pt.x() * sin_c,
                   rho * std::cos(phi0) * cos_c - pt.y() * std::sin(phi0) * sin_c);
    return GeoPoint(rad2deg(phi), rad2deg(lambda));
}

IntersectionResult intersect_circles(const Circle& c1, const Circle& c2, RadiusPolicy policy) {
    if (!(c1.radius_km > 0.0) || !(c2.radius_km > 0.0)) {
        throw InvalidParameter("circle radii must be positive");
    }
    const PlanarPoint delta = c2.center - c1.center;
    const double d = delta.norm();
    if (d < kCoincidentCentersKm) {
        throw CoincidentCenters("circle centers coincide within " +
                                std::to_string(kCoincidentCentersKm) + " km");
    }
    const PlanarPoint u = delta / d;
    const double r1 = c1.radius_km, r2 = c2.radius_km;
    const double r_sum = r1 + r2;
    const double r_diff = std::abs(r1 - r2);

    if (d >= r_sum) {
        if (d - r_sum <= kIntersectionToleranceKm) {
            return OnePoint{c1.center + r1 * u, false};
        }
        if (policy == RadiusPolicy::shrink_to_tangent) {
            // Reduce the larger radius to d - r_small: the circles touch on
            // the smaller circle's boundary, on the segment between centers.
            if (r1 <= r2) {
                return OnePoint{c1.center + r1 * u, true};
            }
            return OnePoint{c2.center - r2 * u, true};
        }
        const PlanarPoint near1 = c1.center + r1 * u;
        const PlanarPoint near2 = c2.center - r2 * u;
        return DisjointOutside{0.5 * (near1 + near2)};
    }

    if (d <= r_diff) {
        // One circle strictly inside the other.
        const bool first_is_larger = r1 > r2;
        const PlanarPoint& big_center = first_is_larger ? c1.center : c2.center;
        const double big_r = first_is_larger ? r1 : r2;
        const double small_r = first_is_larger ? r2 : r1;
        const PlanarPoint toward_small = first_is_larger ? u : PlanarPoint(-u);
        if (r_diff - d <= kIntersectionToleranceKm) {
            return OnePoint{big_center + big_r * toward_small, false};
        }
        if (policy == RadiusPolicy::shrink_to_tangent) {
            // Reduce the larger radius to d + r_small: internal tangency on
            // the far side of the smaller circle.
            return OnePoint{big_center + (d + small_r) * toward_small, true};
        }
        return Contained{first_is_larger ? 1 : 0};
    }

    // Proper intersection via the radical line: a = signed distance from
    // center1 to the chord, h = half chord length.
    const double a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    const double h = std::sqrt(std::max(0.0, r1 * r1 - a * a));
    const PlanarPoint base = c1.center + a * u;
    if (h <= kIntersectionToleranceKm) {
        return OnePoint{base, false};
    }
    const PlanarPoint perp(-u.y(), u.x());
    return TwoPoints{base + h * perp, base - h * perp};
}

}  // namespace dragoon
