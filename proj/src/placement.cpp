#include "dragoon/placement.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>

#include <json.hpp>

namespace dragoon {

namespace {

// Nodes the placement objective runs over, in index order.
const std::vector<int>& placement_nodes(const Topology& t) { return t.largest_component(); }

PlacementObjective evaluate(const Topology& t, const HopMatrix& h, const std::vector<int>& landmarks,
                            std::vector<int>* assignment_out) {
    PlacementObjective obj;
    obj.covered = static_cast<int>(placement_nodes(t).size());
    if (assignment_out) assignment_out->assign(t.node_count(), -1);
    for (int v : placement_nodes(t)) {
        int best_hops = kUnreachableHops;
        int best_landmark = -1;
        for (size_t li = 0; li < landmarks.size(); ++li) {
            const int d = h(v, landmarks[li]);
            if (d < best_hops) {  // ties: earliest-placed landmark wins
                best_hops = d;
                best_landmark = static_cast<int>(li);
            }
        }
        obj.max_hops = std::max(obj.max_hops, best_hops);
        obj.total_hops += best_hops;
        if (assignment_out) (*assignment_out)[v] = best_landmark;
    }
    return obj;
}

// Node of the largest component maximizing the minimum hop distance to the
// reference set; ties by lowest id. Nodes in `exclude` (already-placed
// landmarks) are not eligible.
int farthest_from(const Topology& t, const HopMatrix& h, const std::vector<int>& reference,
                  const std::vector<int>& exclude) {
    int best = -1;
    int best_dist = -1;
    for (int v : placement_nodes(t)) {
        if (std::find(exclude.begin(), exclude.end(), v) != exclude.end()) continue;
        int nearest = kUnreachableHops;
        for (int l : reference) nearest = std::min(nearest, h(v, l));
        if (nearest > best_dist ||
            (nearest == best_dist && t.id_rank(v) < t.id_rank(best))) {
            best_dist = nearest;
            best = v;
        }
    }
    return best;
}

int check_k(const Topology& t, int k, int already_placed = 0) {
    const int available = static_cast<int>(placement_nodes(t).size()) - already_placed;
    if (k < 0 || k + already_placed < 1 || k > available) {
        throw KTooLarge("k = " + std::to_string(k + already_placed) + " landmarks requested, " +
                        std::to_string(static_cast<int>(placement_nodes(t).size())) +
                        " placeable nodes available");
    }
    return k;
}

// One refinement sweep: each movable landmark, in placement order, may shift
// to one adjacent non-landmark node. Among the improving neighbors the best
// objective wins (ties by lowest id). Returns true if any move was accepted.
bool refinement_pass(const Topology& t, const HopMatrix& h, std::vector<int>& landmarks,
                     const std::vector<bool>& movable, PlacementObjective& objective) {
    bool moved = false;
    std::vector<int> candidate = landmarks;
    for (size_t li = 0; li < landmarks.size(); ++li) {
        if (!movable[li]) continue;
        int best_node = -1;
        PlacementObjective best_obj;
        for (int nb : t.neighbors(landmarks[li])) {
            if (std::find(landmarks.begin(), landmarks.end(), nb) != landmarks.end()) continue;
            candidate[li] = nb;
            const PlacementObjective obj = evaluate(t, h, candidate, nullptr);
            if (obj < objective &&
                (best_node == -1 || obj < best_obj ||
                 (obj == best_obj && t.id_rank(nb) < t.id_rank(best_node)))) {
                best_node = nb;
                best_obj = obj;
            }
        }
        candidate[li] = landmarks[li];
        if (best_node != -1) {
            landmarks[li] = best_node;
            candidate[li] = best_node;
            objective = best_obj;  // nodes reassigned after every accepted move
            moved = true;
        }
    }
    return moved;
}

LandmarkSet refine(const Topology& t, const HopMatrix& h, std::vector<int> landmarks,
                   const std::vector<bool>& movable) {
    PlacementObjective objective = evaluate(t, h, landmarks, nullptr);
    int passes = 0;
    while (refinement_pass(t, h, landmarks, movable, objective)) ++passes;
    LandmarkSet result = assign_landmarks(t, h, std::move(landmarks));
    result.refinement_passes = passes;
    return result;
}

}  // namespace

LandmarkSet assign_landmarks(const Topology& t, const HopMatrix& h, std::vector<int> landmarks) {
    if (landmarks.empty()) throw KTooLarge("landmark set must not be empty");
    {
        std::set<int> unique(landmarks.begin(), landmarks.end());
        if (unique.size() != landmarks.size()) {
            throw InvalidParameter("duplicate landmark node");
        }
        for (int l : landmarks) {
            if (l < 0 || l >= t.node_count()) throw InvalidParameter("landmark index out of range");
        }
    }
    LandmarkSet set;
    set.landmarks = std::move(landmarks);
    set.objective = evaluate(t, h, set.landmarks, &set.assignment);
    return set;
}

int orientation_mark(const Topology& t, const HopMatrix& h) {
    int best = -1;
    int best_ecc = kUnreachableHops;
    std::int64_t best_total = 0;
    for (int v : placement_nodes(t)) {
        int ecc = 0;
        std::int64_t total = 0;
        for (int u : placement_nodes(t)) {
            ecc = std::max(ecc, h(v, u));
            total += h(v, u);
        }
        const bool better =
            ecc < best_ecc || (ecc == best_ecc && total < best_total) ||
            (ecc == best_ecc && total == best_total && best != -1 && t.id_rank(v) < t.id_rank(best));
        if (best == -1 || better) {
            best = v;
            best_ecc = ecc;
            best_total = total;
        }
    }
    return best;
}

LandmarkSet two_approx(const Topology& t, const HopMatrix& h, int k, int seed_node) {
    check_k(t, k);
    if (seed_node < 0 || seed_node >= t.node_count()) {
        throw InvalidParameter("seed node index out of range");
    }
    std::vector<int> landmarks;
    landmarks.push_back(farthest_from(t, h, {seed_node}, {}));
    while (static_cast<int>(landmarks.size()) < k) {
        landmarks.push_back(farthest_from(t, h, landmarks, landmarks));
    }
    return assign_landmarks(t, h, std::move(landmarks));
}

LandmarkSet dragoon_place(const Topology& t, const HopMatrix& h, int k) {
    LandmarkSet init = two_approx(t, h, k, orientation_mark(t, h));
    return refine(t, h, std::move(init.landmarks), std::vector<bool>(k, true));
}

LandmarkSet extend_landmarks(const Topology& t, const HopMatrix& h, const LandmarkSet& existing,
                             int extra) {
    for (int l : existing.landmarks) {
        if (l < 0 || l >= t.node_count()) throw InvalidParameter("existing landmark out of range");
    }
    check_k(t, extra, static_cast<int>(existing.landmarks.size()));
    std::vector<int> landmarks = existing.landmarks;
    if (extra == 0 && landmarks.empty()) throw KTooLarge("no landmarks to place");
    for (int i = 0; i < extra; ++i) {
        if (landmarks.empty()) {
            // Empty continuation seeds exactly like dragoon_place.
            landmarks.push_back(farthest_from(t, h, {orientation_mark(t, h)}, {}));
        } else {
            landmarks.push_back(farthest_from(t, h, landmarks, landmarks));
        }
    }
    std::vector<bool> movable(landmarks.size(), false);
    for (size_t i = existing.landmarks.size(); i < landmarks.size(); ++i) movable[i] = true;
    return refine(t, h, std::move(landmarks), movable);
}

void save_landmarks_json(const Topology& t, const LandmarkSet& set, const std::string& path,
                         bool with_timestamp) {
    nlohmann::ordered_json doc;
    doc["schema"] = "landmarks/1";
    if (with_timestamp) {
        doc["generated_at"] = static_cast<std::int64_t>(
            std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count());
    }
    doc["landmarks"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < set.landmarks.size(); ++i) {
        const TopologyNode& node = t.node(set.landmarks[i]);
        doc["landmarks"].push_back({{"node_id", node.id},
                                    {"lat", node.location.lat},
                                    {"lon", node.location.lon},
                                    {"order", static_cast<int>(i)}});
    }
    doc["objective"] = {{"max_hops", set.objective.max_hops},
                        {"mean_hops", set.objective.mean_hops()}};
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::runtime, "io_error", "cannot write '" + path + "'");
    out << doc.dump(2) << "\n";
}

LandmarkSet load_landmarks_json(const Topology& t, const HopMatrix& h, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("landmarks JSON: ") + e.what());
    }
    try {
        if (doc.value("schema", "") != "landmarks/1") {
            throw ParseError("landmarks JSON: expected schema 'landmarks/1'");
        }
        std::vector<std::pair<int, std::string>> ordered;
        for (const auto& jl : doc.at("landmarks")) {
            ordered.emplace_back(jl.at("order").get<int>(), jl.at("node_id").get<std::string>());
        }
        std::sort(ordered.begin(), ordered.end());
        std::vector<int> landmarks;
        for (const auto& [order, id] : ordered) {
            const int idx = t.index_of(id);
            if (idx < 0) throw ParseError("landmarks JSON: unknown node id '" + id + "'");
            landmarks.push_back(idx);
        }
        return assign_landmarks(t, h, std::move(landmarks));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("landmarks JSON: ") + e.what());
    }
}

}  // namespace dragoon
