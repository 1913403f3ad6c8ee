#include "dragoon/simulator.hpp"

#include <algorithm>
#include <random>

namespace dragoon {

namespace {

// splitmix64; decorrelates per-landmark substreams from the campaign seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Hop-shortest path src -> dst (BFS, neighbor order by id rank) and its
// propagation length in km. Returns hops < 0 when unreachable.
struct PathInfo {
    int hops = -1;
    double length_km = 0.0;
};

PathInfo shortest_path(const Topology& t, int src, int dst) {
    const int n = t.node_count();
    std::vector<int> parent(n, -2);
    std::vector<int> queue{src};
    parent[src] = -1;
    for (size_t head = 0; head < queue.size() && parent[dst] == -2; ++head) {
        for (int next : t.neighbors(queue[head])) {
            if (parent[next] == -2) {
                parent[next] = queue[head];
                queue.push_back(next);
            }
        }
    }
    if (parent[dst] == -2) return {};
    PathInfo info;
    info.hops = 0;
    for (int v = dst; parent[v] != -1; v = parent[v]) {
        info.length_km += orthodromic_distance(t.node(v).location, t.node(parent[v]).location);
        ++info.hops;
    }
    return info;
}

}  // namespace

void validate(const DelayModel& model) {
    if (model.propagation_speed_km_per_ms < 133.0 || model.propagation_speed_km_per_ms > 300.0) {
        throw InvalidParameter("propagation speed must lie in [133, 300] km/ms, got " +
                               std::to_string(model.propagation_speed_km_per_ms));
    }
    if (model.per_hop_processing_ms < 0.0 || model.last_mile_extra_ms < 0.0 ||
        model.stochastic_mean_ms < 0.0) {
        throw InvalidParameter("delay components must be non-negative");
    }
    if (model.road_factor < 1.0) {
        throw InvalidParameter("road factor must be >= 1");
    }
}

MeasurementSample simulate_rtt(const Topology& t, const DelayModel& model, int src,
                               const SyntheticTarget& target, int samples) {
    validate(model);
    if (samples < 1) throw InvalidParameter("need at least one RTT sample");
    if (src < 0 || src >= t.node_count() || target.attachment_node < 0 ||
        target.attachment_node >= t.node_count()) {
        throw InvalidParameter("node index out of range");
    }
    if (target.extra_hops < 0) throw InvalidParameter("extra hops must be non-negative");

    const PathInfo path = shortest_path(t, src, target.attachment_node);
    if (path.hops < 0) {
        throw NoPath("no path from '" + t.node(src).id + "' to '" +
                     t.node(target.attachment_node).id + "'");
    }
    const double access_km =
        orthodromic_distance(t.node(target.attachment_node).location, target.true_location);
    const int total_hops = path.hops + target.extra_hops;
    const double one_way_ms =
        (path.length_km * model.road_factor + access_km) / model.propagation_speed_km_per_ms +
        total_hops * model.per_hop_processing_ms + model.last_mile_extra_ms;

    std::mt19937_64 rng(mix_seed(model.seed, static_cast<std::uint64_t>(src)));
    std::exponential_distribution<double> excess(
        model.stochastic_mean_ms > 0.0 ? 1.0 / model.stochastic_mean_ms : 1.0);

    MeasurementSample sample;
    sample.src = t.node(src).id;
    sample.dst = target.id;
    sample.hop_count = total_hops;
    sample.rtts_ms.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        const double extra = model.stochastic_mean_ms > 0.0 ? excess(rng) : 0.0;
        sample.rtts_ms.push_back(2.0 * one_way_ms + extra);
    }
    return sample;
}

std::vector<MeasurementSample> simulate_campaign(const Topology& t, const DelayModel& model,
                                                 const LandmarkSet& landmarks,
                                                 const SyntheticTarget& target, int samples) {
    std::vector<MeasurementSample> result;
    result.reserve(landmarks.landmarks.size());
    for (size_t i = 0; i < landmarks.landmarks.size(); ++i) {
        DelayModel substream = model;
        substream.seed = mix_seed(model.seed, i);
        result.push_back(simulate_rtt(t, substream, landmarks.landmarks[i], target, samples));
    }
    return result;
}

std::vector<MeasurementSample> simulate_calibration(const Topology& t, const DelayModel& model,
                                                    const LandmarkSet& landmarks, int samples) {
    // Landmark-to-landmark probes are backbone-to-backbone: no access
    // segment, no last-mile surcharge.
    DelayModel backbone = model;
    backbone.last_mile_extra_ms = 0.0;
    std::vector<MeasurementSample> result;
    std::uint64_t pair_index = 0;
    for (size_t i = 0; i < landmarks.landmarks.size(); ++i) {
        for (size_t j = i + 1; j < landmarks.landmarks.size(); ++j) {
            const int dst = landmarks.landmarks[j];
            DelayModel substream = backbone;
            substream.seed = mix_seed(model.seed, 0x10000000ULL + pair_index++);
            SyntheticTarget peer{dst, t.node(dst).location, 0, t.node(dst).id};
            result.push_back(
                simulate_rtt(t, substream, landmarks.landmarks[i], peer, samples));
        }
    }
    return result;
}

}  // namespace dragoon
