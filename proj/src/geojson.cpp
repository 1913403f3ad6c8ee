#include "dragoon/geojson.hpp"

#include <fstream>

namespace dragoon {

namespace {

nlohmann::ordered_json point_geometry(const GeoPoint& g) {
    return {{"type", "Point"}, {"coordinates", {g.lon, g.lat}}};  // GeoJSON order: lon, lat
}

nlohmann::ordered_json cloud_feature(const CloudPoint& cp,
                                     const std::vector<DistanceConstraint>& constraints,
                                     bool filtered) {
    nlohmann::ordered_json props = {
        {"kind", "cloud-point"},
        {"case_tag", to_string(cp.tag)},
        {"pair", {constraints[cp.pair_first].landmark_id, constraints[cp.pair_second].landmark_id}},
    };
    if (filtered) props["filtered"] = true;
    return {{"type", "Feature"}, {"geometry", point_geometry(cp.point)}, {"properties", props}};
}

bool same_cloud_point(const CloudPoint& a, const CloudPoint& b) {
    return a.point == b.point && a.pair_first == b.pair_first && a.pair_second == b.pair_second &&
           a.tag == b.tag;
}

}  // namespace

nlohmann::ordered_json point_cloud_geojson(const PointCloud& cloud,
                                           const std::vector<DistanceConstraint>& constraints) {
    nlohmann::ordered_json features = nlohmann::ordered_json::array();
    for (const auto& cp : cloud.points) features.push_back(cloud_feature(cp, constraints, false));
    return {{"type", "FeatureCollection"}, {"features", features}};
}

nlohmann::ordered_json location_estimate_geojson(const LocationEstimate& est,
                                                 const std::vector<DistanceConstraint>& constraints,
                                                 nlohmann::ordered_json extra_properties) {
    nlohmann::ordered_json trace = nlohmann::ordered_json::array();
    for (size_t round = 0; round < est.trace.size(); ++round) {
        nlohmann::ordered_json dropped = nlohmann::ordered_json::array();
        for (const auto& cp : est.trace[round].dropped) {
            dropped.push_back({{"lon", cp.point.lon},
                               {"lat", cp.point.lat},
                               {"case_tag", to_string(cp.tag)}});
        }
        trace.push_back({{"round", static_cast<int>(round)},
                         {"center", {est.trace[round].center.lon, est.trace[round].center.lat}},
                         {"dropped", dropped}});
    }

    nlohmann::ordered_json props = {
        {"kind", "estimate"},
        {"mean_residual_km", est.mean_residual_km},
        {"cloud_size_initial", est.cloud_initial.points.size()},
        {"cloud_size_final", est.cloud_final.points.size()},
        {"trace", trace},
    };
    for (auto& [key, value] : extra_properties.items()) props[key] = value;

    nlohmann::ordered_json features = nlohmann::ordered_json::array();
    features.push_back(
        {{"type", "Feature"}, {"geometry", point_geometry(est.point)}, {"properties", props}});
    for (const auto& cp : est.cloud_initial.points) {
        const bool survived =
            std::any_of(est.cloud_final.points.begin(), est.cloud_final.points.end(),
                        [&](const CloudPoint& other) { return same_cloud_point(cp, other); });
        features.push_back(cloud_feature(cp, constraints, !survived));
    }
    return {{"type", "FeatureCollection"}, {"features", features}};
}

void write_json(const nlohmann::ordered_json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::runtime, "io_error", "cannot write '" + path + "'");
    out << doc.dump(2) << "\n";
}

}  // namespace dragoon
