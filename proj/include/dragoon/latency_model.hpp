#pragma once

#include <string>
#include <vector>

#include "dragoon/errors.hpp"

namespace dragoon {

enum class DistanceMode { orthodromic, road_matrix };

std::string to_string(DistanceMode mode);
DistanceMode distance_mode_from_string(const std::string& s);

/// Logarithmic latency-to-distance curve
///   distance = lc * max(0, p * ln(q * latency + n) + m)
/// with latency in ms and distance in km. The training factor lc lives in
/// (0, 2] and uniformly scales predictions.
struct LatencyDistanceCurve {
    double p = 0.0;   // km
    double q = 1.0;   // 1/ms
    double n = 1.0;   // dimensionless
    double m = 0.0;   // km
    double lc = 1.0;
    DistanceMode distance_mode = DistanceMode::orthodromic;
    double latency_max = 0.0;  // upper end of the fitted latency domain, ms
    double sse = 0.0;          // sum of squared residuals at the fit
    int n_points = 0;
};

/// One inter-landmark data point: hop-corrected latency plus the known
/// distance between the two landmarks.
struct CalibrationPair {
    std::string src;
    std::string dst;
    double latency_ms = 0.0;
    double distance_km = 0.0;
};

/// One-way latency after hop correction: max(0, rtt/2 - hops * per_hop_delay).
double effective_latency(double rtt_min_ms, int hop_count, double per_hop_delay_ms = 0.1);

/// Curve prediction; throws DomainError when q * latency + n <= 0.
double predict_distance(const LatencyDistanceCurve& c, double latency_ms);

struct FitReport {
    LatencyDistanceCurve curve;  // lc = 1
    int iterations = 0;
    std::vector<double> sse_history;  // SSE after every accepted iteration
};

/// Least-squares fit of (p, q, n, m) by alternating damped Gauss-Newton
/// updates on the parameter pairs (p, m) and (q, n). Keeps the curve
/// monotone on the data domain (p, q, n > 0); every accepted iteration
/// lowers the SSE. Needs >= 4 pairs with >= 3 distinct latencies.
FitReport fit_curve(const std::vector<CalibrationPair>& pairs);

/// Least-squares scale factor: lc = sum(pred * dist) / sum(pred^2) with the
/// curve evaluated at lc = 1, clamped into (0, 2].
double calibrate_lc(const LatencyDistanceCurve& c, const std::vector<CalibrationPair>& holdout);

/// "curve/1" JSON serialization.
void save_curve_json(const LatencyDistanceCurve& c, const std::string& path,
                     bool with_timestamp = false);
LatencyDistanceCurve load_curve_json(const std::string& path);

}  // namespace dragoon
