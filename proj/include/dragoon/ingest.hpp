#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dragoon/geo.hpp"
#include "dragoon/measurement.hpp"

namespace dragoon {

enum class MeasurementFormat { json, csv };

/// Parses a measurement dump. JSON is the native "measurements/1" schema;
/// CSV has header src,dst,rtt_ms,hops with one row per probe, grouped by
/// (src, dst) in first-appearance order. Rows with non-positive RTTs are
/// rejected with their line number.
std::vector<MeasurementSample> parse_measurements(const std::string& path,
                                                  MeasurementFormat format);

void save_measurements_json(const std::vector<MeasurementSample>& samples,
                            const std::string& path, bool with_timestamp = false);
void save_measurements_csv(const std::vector<MeasurementSample>& samples,
                           const std::string& path);

/// Symmetric pairwise road distances, km.
class RoadDistanceMatrix {
public:
    void set(const std::string& a, const std::string& b, double km);
    std::optional<double> lookup(const std::string& a, const std::string& b) const;
    std::size_t pair_count() const { return km_.size(); }
    const std::map<std::pair<std::string, std::string>, double>& entries() const { return km_; }

private:
    std::map<std::pair<std::string, std::string>, double> km_;
};

/// CSV header id_a,id_b,km. When both directions are present they are
/// averaged; a deviation above 1% adds a warning.
RoadDistanceMatrix parse_road_matrix(const std::string& path,
                                     std::vector<std::string>* warnings = nullptr);

/// Pairs whose road distance is below the orthodromic distance between the
/// given coordinates (road routes cannot beat the great circle).
std::vector<std::string> road_matrix_below_orthodromic(
    const RoadDistanceMatrix& matrix,
    const std::vector<std::pair<std::string, GeoPoint>>& coordinates);

/// CSV header target,lat,lon.
using GroundTruth = std::map<std::string, GeoPoint>;
GroundTruth parse_truth(const std::string& path);

}  // namespace dragoon
