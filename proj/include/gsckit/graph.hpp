#pragma once

#include <map>
#include <set>
#include <vector>
#include <string>
#include <sstream>
#include <algorithm>
#include <optional>

#include "gsckit/errors.hpp"

#include <json.hpp>

namespace gsckit {

using Json = nlohmann::ordered_json;

enum class Colour { Red, Blue, Green };

inline std::string to_string(Colour c) {
    switch (c) {
        case Colour::Red: return "red";
        case Colour::Blue: return "blue";
        case Colour::Green: return "green";
    }
    return "?";
}

/// Finite multigraph. Loops and parallel edges are allowed; edge ids are
/// stable across deletions and must be positive (walks reference them signed).
class Graph {
public:
    struct Edge {
        int u = 0;
        int v = 0;
        bool is_loop() const { return u == v; }
    };

    std::set<int> vertices;
    std::map<int, Edge> edges;

    void add_vertex(int v) { vertices.insert(v); }

    void add_edge(int id, int u, int v) {
        if (id <= 0) throw input_error("edge id must be positive: " + std::to_string(id));
        if (edges.count(id)) throw input_error("duplicate edge id " + std::to_string(id));
        if (!vertices.count(u) || !vertices.count(v))
            throw input_error("edge " + std::to_string(id) + " references missing vertex");
        edges[id] = Edge{u, v};
    }

    /// Adds with the smallest unused positive id.
    int add_edge_auto(int u, int v) {
        int id = edges.empty() ? 1 : edges.rbegin()->first + 1;
        add_edge(id, u, v);
        return id;
    }

    const Edge& edge(int id) const {
        auto it = edges.find(id);
        if (it == edges.end()) throw input_error("unknown edge id " + std::to_string(id));
        return it->second;
    }

    bool has_edge(int id) const { return edges.count(id) != 0; }

    /// Connected components as vertex sets (lexicographically ordered roots).
    std::vector<std::set<int>> components() const {
        std::map<int, int> comp;
        int n = 0;
        for (int v : vertices)
            if (!comp.count(v)) {
                std::vector<int> stack{v};
                comp[v] = n;
                while (!stack.empty()) {
                    int x = stack.back();
                    stack.pop_back();
                    for (const auto& [id, e] : edges) {
                        int y = -1;
                        if (e.u == x && !comp.count(e.v)) y = e.v;
                        else if (e.v == x && !comp.count(e.u)) y = e.u;
                        if (y != -1) { comp[y] = n; stack.push_back(y); }
                    }
                }
                ++n;
            }
        std::vector<std::set<int>> out(n);
        for (const auto& [v, c] : comp) out[c].insert(v);
        return out;
    }

    bool connected() const {
        if (vertices.empty()) return false;
        return components().size() == 1;
    }

    std::size_t degree(int v) const {
        std::size_t d = 0;
        for (const auto& [id, e] : edges) {
            if (e.u == v) ++d;
            if (e.v == v) ++d;
        }
        return d;
    }

    /// First Betti number |E| - |V| + #components (0 for empty graph).
    std::size_t betti1() const {
        if (vertices.empty()) return 0;
        return edges.size() + components().size() - vertices.size();
    }

    /// Unique path between two vertices when the graph is a forest; edge-id
    /// sequence. Throws structural_error if none exists.
    std::vector<int> tree_path(int from, int to) const {
        if (!vertices.count(from) || !vertices.count(to))
            throw input_error("tree_path endpoint not in graph");
        std::map<int, std::pair<int, int>> parent; // vertex -> (prev vertex, via edge)
        std::vector<int> queue{from};
        std::set<int> seen{from};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int x = queue[qi];
            if (x == to) break;
            for (const auto& [id, e] : edges) {
                int y = -1;
                if (e.u == x) y = e.v;
                else if (e.v == x) y = e.u;
                if (y != -1 && !seen.count(y)) {
                    seen.insert(y);
                    parent[y] = {x, id};
                    queue.push_back(y);
                }
            }
        }
        if (!seen.count(to)) throw structural_error("tree_path: endpoints disconnected");
        std::vector<int> path;
        for (int x = to; x != from;) {
            auto [px, id] = parent.at(x);
            path.push_back(id);
            x = px;
        }
        std::reverse(path.begin(), path.end());
        return path;
    }
};

/// A set of spots, one colour, at most one per edge (a spot is identified
/// with the edge carrying it).
struct SpotSet {
    Colour colour = Colour::Red;
    std::set<int> spots;

    bool contains(int edge_id) const { return spots.count(edge_id) != 0; }

    void validate_against(const Graph& g) const {
        for (int s : spots)
            if (!g.has_edge(s))
                throw input_error("spot on unknown edge " + std::to_string(s));
    }
};

/// Blocks of vertices; disjoint, nonempty.
struct Partition {
    std::vector<std::set<int>> blocks;
};

inline bool is_tree(const Graph& g) {
    if (g.vertices.empty()) return false;
    return g.connected() && g.edges.size() == g.vertices.size() - 1;
}

inline Graph delete_spots(const Graph& g, const SpotSet& s) {
    s.validate_against(g);
    Graph out;
    out.vertices = g.vertices;
    for (const auto& [id, e] : g.edges)
        if (!s.contains(id)) out.edges[id] = e;
    return out;
}

/// Property P: g minus the spotted edges is a tree. Per the theory a spotted
/// loop is rejected outright (splitting at it would be degenerate).
inline bool is_property_p(const Graph& g, const SpotSet& s) {
    s.validate_against(g);
    for (int id : s.spots)
        if (g.edge(id).is_loop()) return false;
    return is_tree(delete_spots(g, s));
}

/// The basic tree split: deleting all spots of s leaves exactly two
/// components, joined in g - (s - spot) only by the spot's edge. Returns the
/// two blocks with the spot edge's endpoints in blocks[0] / blocks[1].
inline Partition split_at_spot(const Graph& g, const SpotSet& s, int spot) {
    if (!s.contains(spot)) throw input_error("split_at_spot: spot not in spot set");
    const auto& e = g.edge(spot);
    if (e.is_loop())
        throw structural_error("split_at_spot: spot sits on a loop, cannot separate");
    SpotSet rest = s;
    rest.spots.erase(spot);
    if (!is_property_p(g, rest))
        throw structural_error("split_at_spot: remaining spots do not leave a tree");
    Graph cut = delete_spots(g, s);
    auto comps = cut.components();
    const std::set<int>* bu = nullptr;
    const std::set<int>* bv = nullptr;
    for (const auto& c : comps) {
        if (c.count(e.u)) bu = &c;
        if (c.count(e.v)) bv = &c;
    }
    if (bu == nullptr || bv == nullptr || bu == bv)
        throw structural_error("split_at_spot: endpoints fall in one component");
    Partition p;
    p.blocks.push_back(*bu);
    p.blocks.push_back(*bv);
    return p;
}

// ---------------------------------------------------------------------------
// JSON / DOT

inline Json graph_to_json(const Graph& g, const SpotSet* red = nullptr, const SpotSet* blue = nullptr) {
    Json j;
    j["vertices"] = Json::array();
    for (int v : g.vertices) j["vertices"].push_back(v);
    j["edges"] = Json::array();
    for (const auto& [id, e] : g.edges)
        j["edges"].push_back({{"id", id}, {"u", e.u}, {"v", e.v}});
    if (red || blue) {
        Json spots;
        spots["red"] = Json::array();
        spots["blue"] = Json::array();
        if (red) for (int s : red->spots) spots["red"].push_back(s);
        if (blue) for (int s : blue->spots) spots["blue"].push_back(s);
        j["spots"] = spots;
    }
    return j;
}

inline Graph graph_from_json(const Json& j, SpotSet* red = nullptr, SpotSet* blue = nullptr) {
    Graph g;
    if (!j.contains("vertices") || !j.contains("edges"))
        throw input_error("graph json: missing vertices/edges");
    for (const auto& v : j.at("vertices")) g.add_vertex(v.get<int>());
    for (const auto& e : j.at("edges"))
        g.add_edge(e.at("id").get<int>(), e.at("u").get<int>(), e.at("v").get<int>());
    if (j.contains("spots")) {
        const auto& sp = j.at("spots");
        if (red && sp.contains("red")) {
            red->colour = Colour::Red;
            for (const auto& s : sp.at("red")) red->spots.insert(s.get<int>());
            red->validate_against(g);
        }
        if (blue && sp.contains("blue")) {
            blue->colour = Colour::Blue;
            for (const auto& s : sp.at("blue")) blue->spots.insert(s.get<int>());
            blue->validate_against(g);
        }
    }
    return g;
}

/// DOT with colour attributes; edges in R∩B come out purple.
inline std::string graph_to_dot(const Graph& g, const SpotSet* red = nullptr, const SpotSet* blue = nullptr,
                                const std::string& name = "g") {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    for (int v : g.vertices) os << "  v" << v << ";\n";
    for (const auto& [id, e] : g.edges) {
        bool r = red && red->contains(id);
        bool b = blue && blue->contains(id);
        os << "  v" << e.u << " -- v" << e.v << " [label=\"e" << id << "\"";
        if (r && b) os << ", color=purple";
        else if (r) os << ", color=red";
        else if (b) os << ", color=blue";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace gsckit
