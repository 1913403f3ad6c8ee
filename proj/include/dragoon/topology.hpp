#pragma once

#include <Eigen/Core>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "dragoon/geo.hpp"

namespace dragoon {

struct TopologyNode {
    std::string id;
    std::string label;
    GeoPoint location;
};

/// Undirected graph of geolocated nodes. Immutable after construction;
/// connected components are computed up front.
class Topology {
public:
    /// Edges are pairs of node indices. Throws on duplicate ids, self-loops,
    /// duplicate edges or out-of-range endpoints.
    Topology(std::vector<TopologyNode> nodes, std::vector<std::pair<int, int>> edges);

    int node_count() const { return static_cast<int>(nodes_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const TopologyNode& node(int idx) const { return nodes_[idx]; }
    const std::vector<TopologyNode>& nodes() const { return nodes_; }

    /// Index of a node id, -1 when absent.
    int index_of(const std::string& id) const;

    /// Neighbor indices, ordered by ascending id rank (deterministic).
    const std::vector<int>& neighbors(int idx) const { return adjacency_[idx]; }

    /// Edges in canonical form: index pairs (i, j) with i < j, sorted.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    /// Rank of a node in the lexicographic order of all ids; used for every
    /// deterministic tie-break.
    int id_rank(int idx) const { return id_rank_[idx]; }

    int component_count() const { return component_count_; }
    int component_of(int idx) const { return component_[idx]; }

    /// Node indices of the largest connected component (ties broken by the
    /// component containing the lexicographically smallest id).
    const std::vector<int>& largest_component() const { return largest_component_; }

    std::vector<int> component_sizes() const;

private:
    std::vector<TopologyNode> nodes_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<int> id_rank_;
    std::vector<int> component_;
    std::vector<int> largest_component_;
    int component_count_ = 0;
};

enum class TopologyFormat { graphml, json };

/// Loads and validates a topology file. Nodes without coordinates cause a
/// MissingCoordinates error listing the offending ids. A disconnected graph
/// loads fine and appends a warning (placement later restricts itself to the
/// largest component).
Topology load_topology(const std::string& path, TopologyFormat format,
                       std::vector<std::string>* warnings = nullptr);

/// Writes the native "topology/1" JSON format.
void save_topology_json(const Topology& t, const std::string& path);

/// Dense hop-count matrix; kUnreachableHops marks cross-component pairs.
using HopMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr int kUnreachableHops = std::numeric_limits<int>::max();

/// All-pairs unweighted shortest-path hop counts (BFS from every node).
HopMatrix hop_distances(const Topology& t);

}  // namespace dragoon
