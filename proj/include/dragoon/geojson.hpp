#pragma once

#include <string>

#include <json.hpp>

#include "dragoon/estimation.hpp"
#include "dragoon/lateration.hpp"

namespace dragoon {

/// Point cloud as a GeoJSON FeatureCollection: one Point feature per cloud
/// point, with case_tag and the source landmark pair in the properties.
nlohmann::ordered_json point_cloud_geojson(const PointCloud& cloud,
                                           const std::vector<DistanceConstraint>& constraints);

/// Location estimate as a GeoJSON FeatureCollection: the estimate Point
/// (kind "estimate", with mean residual and per-round filter trace) followed
/// by the initial cloud (points dropped by filtering are marked).
nlohmann::ordered_json location_estimate_geojson(
    const LocationEstimate& est, const std::vector<DistanceConstraint>& constraints,
    nlohmann::ordered_json extra_properties = nlohmann::ordered_json::object());

void write_json(const nlohmann::ordered_json& doc, const std::string& path);

}  // namespace dragoon
