#pragma once

#include <string>
#include <vector>

#include "dragoon/errors.hpp"

namespace dragoon {

/// Raw probe result: all RTT samples between one source and one destination
/// plus the traced hop count.
struct MeasurementSample {
    std::string src;
    std::string dst;
    std::vector<double> rtts_ms;
    int hop_count = 0;
};

/// Minimum RTT over the samples; the estimator of the deterministic delay.
double min_rtt(const MeasurementSample& s);

}  // namespace dragoon
