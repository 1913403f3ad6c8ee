#pragma once

#include <string>
#include <vector>

#include "dragoon/geo.hpp"

namespace dragoon {

/// One landmark with the curve-estimated distance to the target.
struct DistanceConstraint {
    std::string landmark_id;
    GeoPoint landmark;
    double distance_km = 0.0;  // must be > 0
};

/// How a cloud point was produced by its landmark pair.
enum class CaseTag {
    two_a,             // first of a two-point intersection
    two_b,             // second of a two-point intersection
    tangent,           // circles touch
    gap_midpoint,      // disjoint circles: midpoint of the gap
    contained_center,  // one circle inside the other: center of the smaller
    shrunk_tangent,    // tangency forced by shrinking the larger radius
};

std::string to_string(CaseTag tag);

struct CloudPoint {
    GeoPoint point;
    int pair_first = 0;   // indices into the constraint list
    int pair_second = 0;
    CaseTag tag = CaseTag::two_a;
};

/// Candidate target locations from all pairwise circle intersections.
struct PointCloud {
    std::vector<CloudPoint> points;
};

/// Handling of non-intersecting pairs: keep the degenerate stand-in point
/// (gap midpoint / smaller-circle center) or shrink the larger radius until
/// the circles touch.
enum class CasePolicy { keep_degenerate, shrink_to_tangent };

/// Pairwise multilateration. Every unordered landmark pair is projected into
/// an azimuthal-equidistant plane centered on the pair midpoint, the two
/// distance circles are intersected there, and the resulting points are
/// unprojected. Two-point ambiguities are resolved against the remaining
/// constraints (smallest total radial misfit) when at least three exist;
/// near-ties keep both points.
PointCloud multilaterate(const std::vector<DistanceConstraint>& constraints,
                         CasePolicy policy = CasePolicy::keep_degenerate);

}  // namespace dragoon
