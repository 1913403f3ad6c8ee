#include "dragoon/topology.hpp"

#include <algorithm>
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dragoon {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::optional<std::string> xml_attr(const boost::property_tree::ptree& elem, const std::string& name) {
    auto attrs = elem.get_child_optional("<xmlattr>");
    if (!attrs) return std::nullopt;
    for (const auto& [key, value] : *attrs) {
        if (key == name) return value.get_value<std::string>();
    }
    return std::nullopt;
}

struct RawGraph {
    std::vector<TopologyNode> nodes;
    std::vector<std::pair<int, int>> edges;
};

RawGraph parse_graphml(const std::string& path, std::vector<std::string>* warnings) {
    boost::property_tree::ptree doc;
    try {
        boost::property_tree::read_xml(path, doc);
    } catch (const boost::property_tree::xml_parser_error& e) {
        throw ParseError(std::string("GraphML: ") + e.what(), e.line());
    }

    auto graphml = doc.get_child_optional("graphml");
    if (!graphml) throw ParseError("GraphML: missing <graphml> root element");

    // Key declarations: map key-id -> semantic (latitude/longitude/label).
    std::set<std::string> lat_keys, lon_keys, label_keys;
    for (const auto& [name, elem] : *graphml) {
        if (name != "key") continue;
        const auto id = xml_attr(elem, "id");
        const auto attr_name = xml_attr(elem, "attr.name");
        const auto target = xml_attr(elem, "for");
        if (!id || !attr_name) continue;
        if (target && *target != "node") continue;
        const std::string lowered = to_lower(*attr_name);
        if (lowered == "latitude" || lowered == "lat") lat_keys.insert(*id);
        if (lowered == "longitude" || lowered == "lon") lon_keys.insert(*id);
        if (lowered == "label") label_keys.insert(*id);
    }

    auto graph = graphml->get_child_optional("graph");
    if (!graph) throw ParseError("GraphML: missing <graph> element");

    RawGraph out;
    std::map<std::string, int> index;
    std::vector<std::string> missing;
    std::vector<std::pair<std::string, std::string>> raw_edges;

    for (const auto& [name, elem] : *graph) {
        if (name == "node") {
            const auto id = xml_attr(elem, "id");
            if (!id) throw ParseError("GraphML: <node> without id");
            if (index.count(*id)) throw ParseError("GraphML: duplicate node id '" + *id + "'");
            std::optional<double> lat, lon;
            std::string label = *id;
            for (const auto& [child_name, child] : elem) {
                if (child_name != "data") continue;
                const auto key = xml_attr(child, "key");
                if (!key) continue;
                const std::string text = child.get_value<std::string>();
                try {
                    if (lat_keys.count(*key)) lat = std::stod(text);
                    if (lon_keys.count(*key)) lon = std::stod(text);
                } catch (const std::exception&) {
                    throw ParseError("GraphML: node '" + *id + "' has non-numeric coordinate '" +
                                     text + "'");
                }
                if (label_keys.count(*key)) label = text;
            }
            if (!lat || !lon) {
                missing.push_back(*id);
                continue;
            }
            GeoPoint location;
            try {
                location = GeoPoint(*lat, *lon);
            } catch (const InvalidCoordinates& e) {
                throw ParseError("GraphML: node '" + *id + "': " + e.what());
            }
            index[*id] = static_cast<int>(out.nodes.size());
            out.nodes.push_back(TopologyNode{*id, label, location});
        } else if (name == "edge") {
            const auto source = xml_attr(elem, "source");
            const auto target = xml_attr(elem, "target");
            if (!source || !target) throw ParseError("GraphML: <edge> without source/target");
            raw_edges.emplace_back(*source, *target);
        }
    }

    if (!missing.empty()) {
        std::sort(missing.begin(), missing.end());
        std::string msg = "nodes missing coordinates:";
        for (const auto& id : missing) msg += " " + id;
        throw MissingCoordinates(msg, missing);
    }
    if (out.nodes.empty()) throw ParseError("GraphML: no nodes");

    std::set<std::pair<int, int>> seen;
    for (const auto& [src, dst] : raw_edges) {
        auto it_s = index.find(src);
        auto it_d = index.find(dst);
        if (it_s == index.end() || it_d == index.end()) {
            throw ParseError("GraphML: edge references unknown node '" +
                             (it_s == index.end() ? src : dst) + "'");
        }
        int a = it_s->second, b = it_d->second;
        if (a == b) {
            if (warnings) warnings->push_back("dropped self-loop on node '" + src + "'");
            continue;
        }
        if (a > b) std::swap(a, b);
        if (!seen.insert({a, b}).second) {
            if (warnings)
                warnings->push_back("collapsed duplicate edge '" + src + "' -- '" + dst + "'");
            continue;
        }
        out.edges.emplace_back(a, b);
    }
    return out;
}

RawGraph parse_topology_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("topology JSON: ") + e.what());
    }
    try {
        if (doc.value("schema", "") != "topology/1") {
            throw ParseError("topology JSON: expected schema 'topology/1'");
        }
        RawGraph out;
        std::map<std::string, int> index;
        for (const auto& jn : doc.at("nodes")) {
            const std::string id = jn.at("id").get<std::string>();
            if (index.count(id)) throw ParseError("topology JSON: duplicate node id '" + id + "'");
            GeoPoint location;
            try {
                location = GeoPoint(jn.at("lat").get<double>(), jn.at("lon").get<double>());
            } catch (const InvalidCoordinates& e) {
                throw ParseError("topology JSON: node '" + id + "': " + e.what());
            }
            index[id] = static_cast<int>(out.nodes.size());
            out.nodes.push_back(TopologyNode{id, jn.value("label", id), location});
        }
        if (out.nodes.empty()) throw ParseError("topology JSON: no nodes");
        std::set<std::pair<int, int>> seen;
        for (const auto& je : doc.at("edges")) {
            if (!je.is_array() || je.size() != 2) {
                throw ParseError("topology JSON: edge entries must be [a, b] pairs");
            }
            const std::string src = je.at(0).get<std::string>();
            const std::string dst = je.at(1).get<std::string>();
            auto it_s = index.find(src);
            auto it_d = index.find(dst);
            if (it_s == index.end() || it_d == index.end()) {
                throw ParseError("topology JSON: edge references unknown node '" +
                                 (it_s == index.end() ? src : dst) + "'");
            }
            int a = it_s->second, b = it_d->second;
            if (a == b) throw ParseError("topology JSON: self-loop on '" + src + "'");
            if (a > b) std::swap(a, b);
            if (!seen.insert({a, b}).second) {
                throw ParseError("topology JSON: duplicate edge '" + src + "' -- '" + dst + "'");
            }
            out.edges.emplace_back(a, b);
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("topology JSON: ") + e.what());
    }
}

}  // namespace

Topology::Topology(std::vector<TopologyNode> nodes, std::vector<std::pair<int, int>> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
    const int n = static_cast<int>(nodes_.size());
    if (n == 0) throw InvalidParameter("topology must have at least one node");

    {
        std::set<std::string> ids;
        for (const auto& node : nodes_) {
            if (!ids.insert(node.id).second) {
                throw InvalidParameter("duplicate node id '" + node.id + "'");
            }
        }
    }

    // Rank of each node in lexicographic id order.
    id_rank_.resize(n);
    std::vector<int> by_id(n);
    std::iota(by_id.begin(), by_id.end(), 0);
    std::sort(by_id.begin(), by_id.end(),
              [this](int a, int b) { return nodes_[a].id < nodes_[b].id; });
    for (int rank = 0; rank < n; ++rank) id_rank_[by_id[rank]] = rank;

    std::set<std::pair<int, int>> seen;
    adjacency_.resize(n);
    for (auto& [a, b] : edges_) {
        if (a < 0 || b < 0 || a >= n || b >= n) throw InvalidParameter("edge endpoint out of range");
        if (a == b) throw InvalidParameter("self-loop on node '" + nodes_[a].id + "'");
        if (a > b) std::swap(a, b);
        if (!seen.insert({a, b}).second) {
            throw InvalidParameter("duplicate edge '" + nodes_[a].id + "' -- '" + nodes_[b].id + "'");
        }
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }
    std::sort(edges_.begin(), edges_.end());
    for (auto& adj : adjacency_) {
        std::sort(adj.begin(), adj.end(),
                  [this](int a, int b) { return id_rank_[a] < id_rank_[b]; });
    }

    // Connected components via BFS.
    component_.assign(n, -1);
    for (int start = 0; start < n; ++start) {
        if (component_[start] != -1) continue;
        const int comp = component_count_++;
        std::vector<int> queue{start};
        component_[start] = comp;
        for (size_t head = 0; head < queue.size(); ++head) {
            for (int next : adjacency_[queue[head]]) {
                if (component_[next] == -1) {
                    component_[next] = comp;
                    queue.push_back(next);
                }
            }
        }
    }

    std::vector<int> sizes(component_count_, 0);
    for (int c : component_) ++sizes[c];
    std::vector<int> best_rank(component_count_, n);
    for (int v = 0; v < n; ++v) {
        best_rank[component_[v]] = std::min(best_rank[component_[v]], id_rank_[v]);
    }
    int best = 0;
    for (int c = 1; c < component_count_; ++c) {
        if (sizes[c] > sizes[best] || (sizes[c] == sizes[best] && best_rank[c] < best_rank[best])) {
            best = c;
        }
    }
    for (int v = 0; v < n; ++v) {
        if (component_[v] == best) largest_component_.push_back(v);
    }
}

int Topology::index_of(const std::string& id) const {
    for (int i = 0; i < node_count(); ++i) {
        if (nodes_[i].id == id) return i;
    }
    return -1;
}

std::vector<int> Topology::component_sizes() const {
    std::vector<int> sizes(component_count_, 0);
    for (int c : component_) ++sizes[c];
    return sizes;
}

Topology load_topology(const std::string& path, TopologyFormat format,
                       std::vector<std::string>* warnings) {
    RawGraph raw = format == TopologyFormat::graphml ? parse_graphml(path, warnings)
                                                     : parse_topology_json(path);
    Topology t(std::move(raw.nodes), std::move(raw.edges));
    if (t.component_count() > 1 && warnings) {
        std::ostringstream msg;
        msg << "graph has " << t.component_count() << " connected components (sizes:";
        for (int s : t.component_sizes()) msg << " " << s;
        msg << "); placement will use the largest";
        warnings->push_back(msg.str());
    }
    return t;
}

void save_topology_json(const Topology& t, const std::string& path) {
    nlohmann::ordered_json doc;
    doc["schema"] = "topology/1";
    doc["nodes"] = nlohmann::ordered_json::array();
    for (const auto& node : t.nodes()) {
        doc["nodes"].push_back({{"id", node.id},
                                {"label", node.label},
                                {"lat", node.location.lat},
                                {"lon", node.location.lon}});
    }
    doc["edges"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : t.edges()) {
        doc["edges"].push_back({t.node(a).id, t.node(b).id});
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::runtime, "io_error", "cannot write '" + path + "'");
    out << doc.dump(2) << "\n";
}

HopMatrix hop_distances(const Topology& t) {
    const int n = t.node_count();
    HopMatrix hops = HopMatrix::Constant(n, n, kUnreachableHops);
    std::vector<int> queue;
    queue.reserve(n);
    for (int src = 0; src < n; ++src) {
        queue.clear();
        queue.push_back(src);
        hops(src, src) = 0;
        for (size_t head = 0; head < queue.size(); ++head) {
            const int v = queue[head];
            for (int next : t.neighbors(v)) {
                if (hops(src, next) == kUnreachableHops) {
                    hops(src, next) = hops(src, v) + 1;
                    queue.push_back(next);
                }
            }
        }
    }
    return hops;
}

}  // namespace dragoon
