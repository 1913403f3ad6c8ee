#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dragoon/measurement.hpp"
#include "dragoon/placement.hpp"
#include "dragoon/topology.hpp"

namespace dragoon {

/// Delay decomposition used to synthesize RTTs: a deterministic floor
/// (propagation + per-hop processing + a constant last-mile term) plus an
/// exponential excess drawn independently per sample.
struct DelayModel {
    double propagation_speed_km_per_ms = 200.0;  // must lie in [133, 300]
    double per_hop_processing_ms = 0.1;
    double last_mile_extra_ms = 2.0;   // applied once at the target attachment
    double stochastic_mean_ms = 1.0;   // mean of the exponential excess; 0 disables
    std::uint64_t seed = 0;
    double road_factor = 1.0;  // edge-length multiplier emulating road routing
};

/// A target hanging off a topology node via an access segment of
/// `extra_hops` hops.
struct SyntheticTarget {
    int attachment_node = 0;
    GeoPoint true_location;
    int extra_hops = 2;
    std::string id = "target";
};

void validate(const DelayModel& model);

/// RTT samples from node `src` to the target. The one-way deterministic
/// delay sums the hop-shortest path's edge propagation, the attachment ->
/// true-location leg, per-hop processing for path + access hops, and the
/// last-mile constant; every RTT adds a fresh exponential excess. The
/// minimum over samples converges to twice the deterministic delay.
MeasurementSample simulate_rtt(const Topology& t, const DelayModel& model, int src,
                               const SyntheticTarget& target, int samples);

/// One sample set per landmark, from per-landmark RNG substreams derived
/// from (seed, landmark order) so campaigns are reproducible and
/// order-independent to generate.
std::vector<MeasurementSample> simulate_campaign(const Topology& t, const DelayModel& model,
                                                 const LandmarkSet& landmarks,
                                                 const SyntheticTarget& target, int samples);

/// Inter-landmark measurements (every unordered pair, probed like targets
/// with the same delay model but no access segment); feeds curve fitting.
std::vector<MeasurementSample> simulate_calibration(const Topology& t, const DelayModel& model,
                                                    const LandmarkSet& landmarks, int samples);

}  // namespace dragoon
