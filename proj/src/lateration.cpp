#include "dragoon/lateration.hpp"

#include <cmath>
#include <optional>

namespace dragoon {

namespace {

constexpr double kResidualTieKm = 1e-6;

// Sum of |distance(point, L_k) - d_k| over all constraints except the pair
// that produced the point.
double support_residual(const std::vector<DistanceConstraint>& constraints, int skip_a, int skip_b,
                        const GeoPoint& point) {
    double total = 0.0;
    for (size_t k = 0; k < constraints.size(); ++k) {
        if (static_cast<int>(k) == skip_a || static_cast<int>(k) == skip_b) continue;
        total += std::abs(orthodromic_distance(point, constraints[k].landmark) -
                          constraints[k].distance_km);
    }
    return total;
}

// Unprojects, dropping points that fall outside the projection's validity
// range (they cannot be meaningful target candidates).
std::optional<GeoPoint> unproject_checked(const Projection& plane, const PlanarPoint& pt) {
    if (pt.norm() >= kProjectionRangeKm) return std::nullopt;
    return unproject(plane, pt);
}

}  // namespace

std::string to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::two_a: return "two-a";
        case CaseTag::two_b: return "two-b";
        case CaseTag::tangent: return "tangent";
        case CaseTag::gap_midpoint: return "gap-midpoint";
        case CaseTag::contained_center: return "contained-center";
        case CaseTag::shrunk_tangent: return "shrunk-tangent";
    }
    return "unknown";
}

PointCloud multilaterate(const std::vector<DistanceConstraint>& constraints, CasePolicy policy) {
    if (constraints.size() < 2) {
        throw TooFewConstraints("multilateration needs >= 2 constraints, got " +
                                std::to_string(constraints.size()));
    }
    for (const auto& c : constraints) {
        if (!(c.distance_km > 0.0)) {
            throw InvalidParameter("estimated distance for '" + c.landmark_id +
                                   "' must be positive");
        }
    }

    PointCloud cloud;
    const auto keep = [&](const GeoPoint& g, int i, int j, CaseTag tag) {
        cloud.points.push_back(CloudPoint{g, i, j, tag});
    };

    for (size_t i = 0; i < constraints.size(); ++i) {
        for (size_t j = i + 1; j < constraints.size(); ++j) {
            const DistanceConstraint& a = constraints[i];
            const DistanceConstraint& b = constraints[j];
            if (a.landmark == b.landmark) {
                throw InvalidParameter("landmarks '" + a.landmark_id + "' and '" + b.landmark_id +
                                       "' share a position");
            }
            const Projection plane{geodesic_midpoint(a.landmark, b.landmark)};
            const Circle ca{project(plane, a.landmark), a.distance_km};
            const Circle cb{project(plane, b.landmark), b.distance_km};

            IntersectionResult result;
            try {
                result = intersect_circles(ca, cb,
                                           policy == CasePolicy::shrink_to_tangent
                                               ? RadiusPolicy::shrink_to_tangent
                                               : RadiusPolicy::keep);
            } catch (const CoincidentCenters&) {
                continue;  // caller contract: skip the pair
            }

            const int ii = static_cast<int>(i), jj = static_cast<int>(j);
            if (const auto* two = std::get_if<TwoPoints>(&result)) {
                const auto first = unproject_checked(plane, two->first);
                const auto second = unproject_checked(plane, two->second);
                if (first && second && constraints.size() >= 3) {
                    const double res_first = support_residual(constraints, ii, jj, *first);
                    const double res_second = support_residual(constraints, ii, jj, *second);
                    if (std::abs(res_first - res_second) <= kResidualTieKm) {
                        keep(*first, ii, jj, CaseTag::two_a);
                        keep(*second, ii, jj, CaseTag::two_b);
                    } else if (res_first < res_second) {
                        keep(*first, ii, jj, CaseTag::two_a);
                    } else {
                        keep(*second, ii, jj, CaseTag::two_b);
                    }
                } else {
                    // Two constraints only (or one side out of range): no
                    // third landmark can disambiguate, keep what we have.
                    if (first) keep(*first, ii, jj, CaseTag::two_a);
                    if (second) keep(*second, ii, jj, CaseTag::two_b);
                }
            } else if (const auto* one = std::get_if<OnePoint>(&result)) {
                if (const auto g = unproject_checked(plane, one->point)) {
                    keep(*g, ii, jj, one->shrunk ? CaseTag::shrunk_tangent : CaseTag::tangent);
                }
            } else if (const auto* gap = std::get_if<DisjointOutside>(&result)) {
                if (const auto g = unproject_checked(plane, gap->gap_midpoint)) {
                    keep(*g, ii, jj, CaseTag::gap_midpoint);
                }
            } else if (const auto* contained = std::get_if<Contained>(&result)) {
                const PlanarPoint center = contained->inner == 0 ? ca.center : cb.center;
                if (const auto g = unproject_checked(plane, center)) {
                    keep(*g, ii, jj, CaseTag::contained_center);
                }
            }
        }
    }

    if (cloud.points.empty()) {
        throw AllPairsDegenerate("no landmark pair produced a usable intersection point");
    }
    return cloud;
}

}  // namespace dragoon
