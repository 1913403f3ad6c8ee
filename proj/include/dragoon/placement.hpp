#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dragoon/topology.hpp"

namespace dragoon {

/// Placement objective, compared lexicographically on (max_hops, total_hops).
/// total_hops is kept as an integer so mean comparisons are exact.
struct PlacementObjective {
    int max_hops = 0;
    std::int64_t total_hops = 0;
    int covered = 0;  // nodes the objective is taken over

    double mean_hops() const {
        return covered == 0 ? 0.0 : static_cast<double>(total_hops) / covered;
    }

    friend bool operator<(const PlacementObjective& a, const PlacementObjective& b) {
        if (a.max_hops != b.max_hops) return a.max_hops < b.max_hops;
        return a.total_hops < b.total_hops;
    }
    friend bool operator==(const PlacementObjective& a, const PlacementObjective& b) {
        return a.max_hops == b.max_hops && a.total_hops == b.total_hops;
    }
};

/// Chosen landmarks in placement order plus the closest-landmark clustering.
/// assignment[v] is an index into `landmarks` (-1 for nodes outside the
/// component the placement ran on); ties go to the earliest-placed landmark.
struct LandmarkSet {
    std::vector<int> landmarks;
    std::vector<int> assignment;
    PlacementObjective objective;
    int refinement_passes = 0;  // filled by dragoon_place / extend_landmarks
};

/// Recomputes assignment + objective for a fixed landmark list over the
/// nodes of the largest component.
LandmarkSet assign_landmarks(const Topology& t, const HopMatrix& h, std::vector<int> landmarks);

/// Graph 1-center of the largest component: minimizes the maximum hop
/// distance to all its nodes; ties by minimum total hops, then lowest id.
int orientation_mark(const Topology& t, const HopMatrix& h);

/// Farthest-first traversal: the first landmark is the node farthest from
/// `seed_node`, each next one the node with the largest hop distance to its
/// closest landmark. Guarantees max_hops <= 2x the optimal k-center value.
LandmarkSet two_approx(const Topology& t, const HopMatrix& h, int k, int seed_node);

/// Landmark placement: two_approx seeded by the orientation mark, then
/// iterative neighbor refinement (each landmark may shift to an adjacent
/// node once per pass while all others stay fixed; a move must improve
/// (max_hops, mean_hops) lexicographically; repeat until a full pass
/// accepts nothing).
LandmarkSet dragoon_place(const Topology& t, const HopMatrix& h, int k);

/// Extends an existing landmark set by `extra` new landmarks: farthest-first
/// continuation, then refinement where only the new landmarks may move.
LandmarkSet extend_landmarks(const Topology& t, const HopMatrix& h, const LandmarkSet& existing,
                             int extra);

/// "landmarks/1" JSON serialization.
void save_landmarks_json(const Topology& t, const LandmarkSet& set, const std::string& path,
                         bool with_timestamp = false);
LandmarkSet load_landmarks_json(const Topology& t, const HopMatrix& h, const std::string& path);

}  // namespace dragoon
