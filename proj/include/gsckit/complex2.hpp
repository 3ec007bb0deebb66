#pragma once

#include <map>
#include <set>
#include <vector>
#include <string>
#include <optional>
#include <algorithm>

#include "gsckit/graph.hpp"

namespace gsckit {

enum class FaceLabel { Gamma, C, Gamma0, Eta, Gamma1, Unlabeled };

inline std::string to_string(FaceLabel l) {
    switch (l) {
        case FaceLabel::Gamma: return "Gamma";
        case FaceLabel::C: return "C";
        case FaceLabel::Gamma0: return "gamma0";
        case FaceLabel::Eta: return "eta";
        case FaceLabel::Gamma1: return "gamma1";
        case FaceLabel::Unlabeled: return "unlabeled";
    }
    return "?";
}

inline FaceLabel face_label_from_string(const std::string& s) {
    if (s == "Gamma") return FaceLabel::Gamma;
    if (s == "C") return FaceLabel::C;
    if (s == "gamma0") return FaceLabel::Gamma0;
    if (s == "eta") return FaceLabel::Eta;
    if (s == "gamma1") return FaceLabel::Gamma1;
    if (s == "unlabeled") return FaceLabel::Unlabeled;
    throw input_error("unknown face label '" + s + "'");
}

/// One step of a boundary walk: edge id traversed forward or backward.
struct WalkStep {
    int edge = 0;
    int dir = 1; // +1 forward (u->v), -1 backward

    int signed_id() const { return dir >= 0 ? edge : -edge; }
    static WalkStep from_signed(int s) {
        if (s == 0) throw input_error("walk step 0 is not a signed edge id");
        return WalkStep{s > 0 ? s : -s, s > 0 ? 1 : -1};
    }
};

using Walk = std::vector<WalkStep>;

/// Combinatorial 2-complex: a multigraph skeleton plus 2-cells attached along
/// closed boundary walks. Orientation signs are stored; incidence counts for
/// collapse theory are unsigned.
class TwoComplex {
public:
    Graph skeleton;
    std::map<int, Walk> faces;
    std::map<int, FaceLabel> labels;

    void add_face(int id, Walk walk, FaceLabel label = FaceLabel::Unlabeled) {
        if (id <= 0) throw input_error("face id must be positive");
        if (faces.count(id)) throw input_error("duplicate face id " + std::to_string(id));
        validate_walk(walk);
        faces[id] = std::move(walk);
        labels[id] = label;
    }

    int add_face_auto(Walk walk, FaceLabel label = FaceLabel::Unlabeled) {
        int id = faces.empty() ? 1 : faces.rbegin()->first + 1;
        add_face(id, std::move(walk), label);
        return id;
    }

    const Walk& face(int id) const {
        auto it = faces.find(id);
        if (it == faces.end()) throw input_error("unknown face id " + std::to_string(id));
        return it->second;
    }

    FaceLabel label(int id) const {
        auto it = labels.find(id);
        return it == labels.end() ? FaceLabel::Unlabeled : it->second;
    }

    /// Tail vertex of a step.
    int step_tail(const WalkStep& s) const {
        const auto& e = skeleton.edge(s.edge);
        return s.dir >= 0 ? e.u : e.v;
    }
    int step_head(const WalkStep& s) const {
        const auto& e = skeleton.edge(s.edge);
        return s.dir >= 0 ? e.v : e.u;
    }

    void validate_walk(const Walk& w) const {
        if (w.empty()) throw input_error("face boundary walk is empty");
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (!skeleton.has_edge(w[i].edge))
                throw input_error("walk references unknown edge " + std::to_string(w[i].edge));
            const auto& nxt = w[(i + 1) % w.size()];
            if (step_head(w[i]) != step_tail(nxt))
                throw input_error("boundary walk is not closed");
        }
    }

    void validate() const {
        for (const auto& [id, w] : faces) validate_walk(w);
    }

    /// Edge id -> number of traversals over all faces (unsigned).
    std::map<int, std::size_t> edge_multiplicity() const {
        std::map<int, std::size_t> m;
        for (const auto& [fid, w] : faces)
            for (const auto& s : w) ++m[s.edge];
        return m;
    }

    std::size_t multiplicity_in_face(int edge, int face_id) const {
        std::size_t n = 0;
        for (const auto& s : face(face_id))
            if (s.edge == edge) ++n;
        return n;
    }
};

// ---------------------------------------------------------------------------
// GF(2) homology

namespace detail {

inline std::size_t gf2_rank(std::vector<std::vector<std::uint8_t>> m) {
    std::size_t rank = 0;
    std::size_t rows = m.size();
    if (rows == 0) return 0;
    std::size_t cols = m[0].size();
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && !m[pivot][c]) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = 0; r < rows; ++r)
            if (r != rank && m[r][c])
                for (std::size_t k = c; k < cols; ++k) m[r][k] ^= m[rank][k];
        ++rank;
    }
    return rank;
}

} // namespace detail

struct BettiNumbers {
    std::size_t b0 = 0, b1 = 0, b2 = 0;
    friend bool operator==(const BettiNumbers&, const BettiNumbers&) = default;
};

/// Betti numbers over GF(2) via boundary-matrix ranks. The oracle every
/// collapse and bisection is checked against.
inline BettiNumbers gf2_homology_ranks(const TwoComplex& k) {
    std::vector<int> vs(k.skeleton.vertices.begin(), k.skeleton.vertices.end());
    std::vector<int> es;
    for (const auto& [id, e] : k.skeleton.edges) es.push_back(id);
    std::vector<int> fs;
    for (const auto& [id, w] : k.faces) fs.push_back(id);

    std::map<int, std::size_t> vi, ei;
    for (std::size_t i = 0; i < vs.size(); ++i) vi[vs[i]] = i;
    for (std::size_t i = 0; i < es.size(); ++i) ei[es[i]] = i;

    // d1: edges -> vertices
    std::vector<std::vector<std::uint8_t>> d1(es.size(), std::vector<std::uint8_t>(vs.size(), 0));
    for (std::size_t i = 0; i < es.size(); ++i) {
        const auto& e = k.skeleton.edge(es[i]);
        if (e.u != e.v) {
            d1[i][vi[e.u]] ^= 1;
            d1[i][vi[e.v]] ^= 1;
        }
    }
    // d2: faces -> edges
    std::vector<std::vector<std::uint8_t>> d2(fs.size(), std::vector<std::uint8_t>(es.size(), 0));
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (const auto& s : k.face(fs[i])) d2[i][ei[s.edge]] ^= 1;

    std::size_t r1 = detail::gf2_rank(std::move(d1));
    std::size_t r2 = detail::gf2_rank(std::move(d2));
    BettiNumbers b;
    b.b0 = vs.size() - r1;
    b.b1 = es.size() - r1 - r2;
    b.b2 = fs.size() - r2;
    return b;
}

// ---------------------------------------------------------------------------
// Free faces and elementary collapses

struct FreePair {
    int dim = 1;   // 1: (edge, face); 0: (vertex, edge)
    int cell = 0;  // edge id or vertex id
    int coface = 0; // face id or edge id
    friend bool operator==(const FreePair&, const FreePair&) = default;
    friend auto operator<=>(const FreePair&, const FreePair&) = default;
};

/// All collapsible pairs: edges appearing exactly once in exactly one face,
/// and degree-1 vertices whose edge lies in no face boundary.
inline std::vector<FreePair> free_faces(const TwoComplex& k) {
    std::vector<FreePair> out;
    auto mult = k.edge_multiplicity();
    for (const auto& [eid, e] : k.skeleton.edges) {
        auto it = mult.find(eid);
        if (it == mult.end() || it->second != 1) continue;
        for (const auto& [fid, w] : k.faces)
            if (k.multiplicity_in_face(eid, fid) == 1) {
                out.push_back(FreePair{1, eid, fid});
                break;
            }
    }
    for (int v : k.skeleton.vertices) {
        int incident = 0;
        int last = 0;
        for (const auto& [eid, e] : k.skeleton.edges) {
            if (e.u == v) { ++incident, last = eid; }
            if (e.v == v) { ++incident, last = eid; }
        }
        if (incident == 1 && (mult.find(last) == mult.end() || mult.at(last) == 0))
            out.push_back(FreePair{0, v, last});
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_free_pair(const TwoComplex& k, const FreePair& p) {
    if (p.dim == 1) {
        if (!k.skeleton.has_edge(p.cell) || !k.faces.count(p.coface)) return false;
        std::size_t total = 0;
        for (const auto& [fid, w] : k.faces) total += k.multiplicity_in_face(p.cell, fid);
        return total == 1 && k.multiplicity_in_face(p.cell, p.coface) == 1;
    }
    if (!k.skeleton.vertices.count(p.cell) || !k.skeleton.has_edge(p.coface)) return false;
    int incident = 0;
    for (const auto& [eid, e] : k.skeleton.edges) {
        if (e.u == p.cell) ++incident;
        if (e.v == p.cell) ++incident;
    }
    if (incident != 1) return false;
    const auto& e = k.skeleton.edge(p.coface);
    if (e.u != p.cell && e.v != p.cell) return false;
    auto mult = k.edge_multiplicity();
    return mult.find(p.coface) == mult.end() || mult.at(p.coface) == 0;
}

inline TwoComplex elementary_collapse(const TwoComplex& k, const FreePair& p) {
    if (!is_free_pair(k, p))
        throw input_error("elementary_collapse: pair is not free");
    TwoComplex out = k;
    if (p.dim == 1) {
        out.faces.erase(p.coface);
        out.labels.erase(p.coface);
        out.skeleton.edges.erase(p.cell);
    } else {
        out.skeleton.edges.erase(p.coface);
        out.skeleton.vertices.erase(p.cell);
    }
    return out;
}

struct CollapseSchedule {
    std::vector<FreePair> steps;

    Json to_json() const {
        Json j = Json::array();
        for (const auto& s : steps)
            j.push_back({{"dim", s.dim}, {"cell", s.cell}, {"coface", s.coface}});
        return j;
    }
    static CollapseSchedule from_json(const Json& j) {
        CollapseSchedule s;
        for (const auto& st : j)
            s.steps.push_back(FreePair{st.at("dim").get<int>(), st.at("cell").get<int>(),
                                       st.at("coface").get<int>()});
        return s;
    }
};

/// Applies a schedule, checking the free-face condition at every step.
inline TwoComplex replay_schedule(TwoComplex k, const CollapseSchedule& s) {
    for (const auto& p : s.steps) k = elementary_collapse(k, p);
    return k;
}

/// Same contract as replay_schedule but in place with incremental incidence
/// bookkeeping; the only way to replay large schedules in reasonable time.
inline void replay_schedule_inplace(TwoComplex& k, const CollapseSchedule& s) {
    std::map<int, std::size_t> mult = k.edge_multiplicity();
    std::map<int, std::size_t> degree;
    for (const auto& [eid, e] : k.skeleton.edges) {
        ++degree[e.u];
        ++degree[e.v];
    }
    for (const auto& p : s.steps) {
        if (p.dim == 1) {
            auto fit = k.faces.find(p.coface);
            if (fit == k.faces.end()) throw input_error("replay: face already gone");
            std::size_t in_face = 0;
            for (const auto& st : fit->second)
                if (st.edge == p.cell) ++in_face;
            auto mit = mult.find(p.cell);
            if (in_face != 1 || mit == mult.end() || mit->second != 1)
                throw input_error("replay: pair is not free");
            for (const auto& st : fit->second) --mult[st.edge];
            k.faces.erase(fit);
            k.labels.erase(p.coface);
            const auto& ed = k.skeleton.edge(p.cell);
            --degree[ed.u];
            --degree[ed.v];
            k.skeleton.edges.erase(p.cell);
        } else {
            if (!k.skeleton.vertices.count(p.cell) || !k.skeleton.has_edge(p.coface))
                throw input_error("replay: cells already gone");
            const auto& ed = k.skeleton.edge(p.coface);
            if (ed.u != p.cell && ed.v != p.cell) throw input_error("replay: pair not incident");
            auto mit = mult.find(p.coface);
            if (degree[p.cell] != 1 || (mit != mult.end() && mit->second != 0))
                throw input_error("replay: vertex pair is not free");
            --degree[ed.u];
            --degree[ed.v];
            k.skeleton.edges.erase(p.coface);
            k.skeleton.vertices.erase(p.cell);
        }
    }
}

// ---------------------------------------------------------------------------
// Collapse-to-spine search

struct CellSet {
    std::set<int> vertices, edges, faces;

    bool is_subcomplex_of(const TwoComplex& k) const {
        for (int f : faces) {
            if (!k.faces.count(f)) return false;
            for (const auto& s : k.face(f))
                if (!edges.count(s.edge)) return false;
        }
        for (int e : edges) {
            if (!k.skeleton.has_edge(e)) return false;
            const auto& ed = k.skeleton.edge(e);
            if (!vertices.count(ed.u) || !vertices.count(ed.v)) return false;
        }
        for (int v : vertices)
            if (!k.skeleton.vertices.count(v)) return false;
        return true;
    }

    static CellSet all_of(const TwoComplex& k) {
        CellSet c;
        c.vertices = k.skeleton.vertices;
        for (const auto& [id, e] : k.skeleton.edges) c.edges.insert(id);
        for (const auto& [id, w] : k.faces) c.faces.insert(id);
        return c;
    }

    static CellSet single_vertex(int v) {
        CellSet c;
        c.vertices.insert(v);
        return c;
    }
};

enum class CollapseStatus { Found, Impossible, BoundExceeded };

struct CollapseResult {
    CollapseStatus status = CollapseStatus::Impossible;
    CollapseSchedule schedule;

    bool found() const { return status == CollapseStatus::Found; }
};

namespace detail {

// Greedy 1-d collapse of everything outside the spine; confluent, so no
// backtracking is needed at this stage.
inline bool collapse_graph_to_spine(TwoComplex& k, const CellSet& spine,
                                    std::vector<FreePair>& steps) {
    bool progress = true;
    while (progress) {
        progress = false;
        auto mult = k.edge_multiplicity();
        for (int v : std::vector<int>(k.skeleton.vertices.begin(), k.skeleton.vertices.end())) {
            if (spine.vertices.count(v)) continue;
            int incident = 0;
            int last = 0;
            for (const auto& [eid, e] : k.skeleton.edges) {
                if (e.u == v) { ++incident; last = eid; }
                if (e.v == v) { ++incident; last = eid; }
            }
            if (incident == 1 && !spine.edges.count(last) &&
                (mult.find(last) == mult.end() || mult.at(last) == 0)) {
                k.skeleton.edges.erase(last);
                k.skeleton.vertices.erase(v);
                steps.push_back(FreePair{0, v, last});
                progress = true;
                break;
            }
        }
    }
    // Exact spine reached?
    std::set<int> fids;
    for (const auto& [id, w] : k.faces) fids.insert(id);
    if (fids != spine.faces) return false;
    if (k.skeleton.vertices != spine.vertices) return false;
    std::set<int> eids;
    for (const auto& [id, e] : k.skeleton.edges) eids.insert(id);
    return eids == spine.edges;
}

struct SpineSearch {
    const CellSet& spine;
    std::size_t face_bound;
    bool exhaustive;
    std::set<std::pair<std::set<int>, std::set<int>>> visited; // (faces, edges)
    CollapseResult result;

    SpineSearch(const CellSet& sp, std::size_t bound, bool exh)
        : spine(sp), face_bound(bound), exhaustive(exh) {}

    // Candidate (edge, face) collapses outside the spine, longest face first.
    std::vector<FreePair> candidates(const TwoComplex& k) const {
        std::vector<FreePair> cand;
        for (const auto& p : free_faces(k)) {
            if (p.dim != 1) continue;
            if (spine.faces.count(p.coface) || spine.edges.count(p.cell)) continue;
            cand.push_back(p);
        }
        std::stable_sort(cand.begin(), cand.end(), [&](const FreePair& a, const FreePair& b) {
            return k.face(a.coface).size() > k.face(b.coface).size();
        });
        return cand;
    }

    bool dfs(TwoComplex k, std::vector<FreePair> steps) {
        bool spine_faces_only = true;
        for (const auto& [fid, w] : k.faces)
            if (!spine.faces.count(fid)) { spine_faces_only = false; break; }
        if (spine_faces_only) {
            TwoComplex k1 = k;
            auto steps1 = steps;
            if (collapse_graph_to_spine(k1, spine, steps1)) {
                result.status = CollapseStatus::Found;
                result.schedule.steps = std::move(steps1);
                return true;
            }
            if (!exhaustive) return false;
            // fall through: no face moves remain either, dead end
        }
        if (exhaustive) {
            std::set<int> fset, eset;
            for (const auto& [id, w] : k.faces) fset.insert(id);
            for (const auto& [id, e] : k.skeleton.edges) eset.insert(id);
            if (!visited.insert({fset, eset}).second) return false;
        }
        auto cand = candidates(k);
        for (const auto& p : cand) {
            auto steps2 = steps;
            steps2.push_back(p);
            if (dfs(elementary_collapse(k, p), std::move(steps2))) return true;
            if (!exhaustive) return false; // greedy: first choice only
        }
        return false;
    }
};

} // namespace detail

/// Searches for a collapse of k onto the given spine subcomplex. Exhaustive
/// (with memoized backtracking) up to `face_bound` faces; greedy longest-first
/// beyond it, where failure means "not found" rather than "impossible".
inline CollapseResult collapse_to_spine(const TwoComplex& k, const CellSet& spine,
                                        std::size_t face_bound = 8) {
    if (!spine.is_subcomplex_of(k))
        throw input_error("collapse_to_spine: spine is not a subcomplex");
    std::size_t movable = 0;
    for (const auto& [fid, w] : k.faces)
        if (!spine.faces.count(fid)) ++movable;
    bool exhaustive = movable <= face_bound;
    detail::SpineSearch search(spine, face_bound, exhaustive);
    if (search.dfs(k, {})) return search.result;
    CollapseResult r;
    r.status = exhaustive ? CollapseStatus::Impossible : CollapseStatus::BoundExceeded;
    return r;
}

// ---------------------------------------------------------------------------
// Bisections

struct ChordPos {
    std::size_t walk_index = 0; // step index into the boundary walk
    bool at_midpoint = false;   // false: the vertex where that step starts

    friend bool operator==(const ChordPos&, const ChordPos&) = default;
};

namespace detail {

// Splits edge `eid` at a new vertex; rewrites every face walk. Returns the
// new vertex id and the two replacement edge ids (tail half, head half).
struct EdgeSplit {
    int new_vertex;
    int first_half;  // from old u
    int second_half; // to old v
};

inline EdgeSplit bisect_edge(TwoComplex& k, int eid) {
    auto e = k.skeleton.edge(eid);
    int nv = k.skeleton.vertices.empty() ? 1 : *k.skeleton.vertices.rbegin() + 1;
    k.skeleton.add_vertex(nv);
    k.skeleton.edges.erase(eid);
    int e1 = k.skeleton.add_edge_auto(e.u, nv);
    int e2 = k.skeleton.add_edge_auto(nv, e.v);
    for (auto& [fid, w] : k.faces) {
        Walk nw;
        for (const auto& s : w) {
            if (s.edge != eid) { nw.push_back(s); continue; }
            if (s.dir >= 0) {
                nw.push_back(WalkStep{e1, 1});
                nw.push_back(WalkStep{e2, 1});
            } else {
                nw.push_back(WalkStep{e2, -1});
                nw.push_back(WalkStep{e1, -1});
            }
        }
        w = std::move(nw);
    }
    return EdgeSplit{nv, e1, e2};
}

// Label bookkeeping for subdivisions: gamma0 spawns C pieces, gamma1 spawns
// eta pieces, everything else keeps its label.
inline FaceLabel secondary_label(FaceLabel l) {
    if (l == FaceLabel::Gamma0) return FaceLabel::C;
    if (l == FaceLabel::Gamma1) return FaceLabel::Eta;
    return l;
}

} // namespace detail

/// Splits a 2-cell by a chord between two points of its boundary walk
/// (vertices or edge midpoints; midpoints trigger an edge bisection first).
/// Positions are boundary-circle points, so two different occurrences of one
/// vertex are distinct legal chord ends. The piece containing walk position 0
/// keeps the parent label.
inline TwoComplex bisect_face(const TwoComplex& k0, int face_id, ChordPos a, ChordPos b) {
    TwoComplex k = k0;
    {
        const Walk& w = k.face(face_id);
        if (a.walk_index >= w.size() || b.walk_index >= w.size())
            throw input_error("bisect_face: position out of range");
    }
    if (a == b) throw input_error("bisect_face: chord endpoints coincide");

    // Splitting the edge under a midpoint position rewrites every walk; track
    // both positions through the rewrite explicitly.
    auto split_under = [&](ChordPos& mine, ChordPos& other) {
        const Walk old = k.face(face_id);
        int eid = old[mine.walk_index].edge;
        detail::bisect_edge(k, eid);
        auto new_start = [&](std::size_t i) {
            std::size_t shift = 0;
            for (std::size_t j = 0; j < i; ++j)
                if (old[j].edge == eid) ++shift;
            return i + shift;
        };
        std::size_t pos = new_start(mine.walk_index) + 1; // the fresh midpoint vertex
        if (other.walk_index == mine.walk_index && other.at_midpoint) {
            // same traversal's midpoint: identical point, already rejected
            throw input_error("bisect_face: chord endpoints coincide");
        }
        std::size_t o = new_start(other.walk_index);
        if (other.at_midpoint && old[other.walk_index].edge == eid) {
            // other referenced another traversal of the same edge: its
            // midpoint is now the new vertex seen at that traversal
            other = ChordPos{o + 1, false};
        } else {
            other.walk_index = o;
        }
        mine = ChordPos{pos, false};
    };

    if (a.at_midpoint) split_under(a, b);
    if (b.at_midpoint) split_under(b, a);

    std::size_t ia = a.walk_index, ib = b.walk_index;
    if (ia == ib) throw input_error("bisect_face: chord endpoints coincide");
    if (ia > ib) std::swap(ia, ib);

    const Walk walk = k.face(face_id);
    int va = k.step_tail(walk[ia]);
    int vb = k.step_tail(walk[ib]);

    FaceLabel parent = k.label(face_id);
    int chord = k.skeleton.add_edge_auto(va, vb);

    Walk w1; // positions [ia, ib) then chord back
    for (std::size_t i = ia; i < ib; ++i) w1.push_back(walk[i]);
    w1.push_back(WalkStep{chord, -1});
    Walk w2; // positions [ib, end) + [0, ia) then chord forward
    for (std::size_t i = ib; i < walk.size(); ++i) w2.push_back(walk[i]);
    for (std::size_t i = 0; i < ia; ++i) w2.push_back(walk[i]);
    w2.push_back(WalkStep{chord, 1});

    k.faces.erase(face_id);
    k.labels.erase(face_id);
    // w2 contains original position 0 (unless ia == 0, then w1 does).
    int keep = k.add_face_auto(ia == 0 ? std::move(w1) : std::move(w2), parent);
    (void)keep;
    k.add_face_auto(ia == 0 ? std::move(w2) : std::move(w1), detail::secondary_label(parent));
    return k;
}

// ---------------------------------------------------------------------------
// JSON

inline Json complex_to_json(const TwoComplex& k, const SpotSet* red = nullptr,
                            const SpotSet* blue = nullptr) {
    Json j = graph_to_json(k.skeleton, red, blue);
    j["faces"] = Json::array();
    for (const auto& [id, w] : k.faces) {
        Json walk = Json::array();
        for (const auto& s : w) walk.push_back(s.signed_id());
        j["faces"].push_back({{"id", id}, {"walk", walk}, {"label", to_string(k.label(id))}});
    }
    return j;
}

inline TwoComplex complex_from_json(const Json& j, SpotSet* red = nullptr, SpotSet* blue = nullptr) {
    TwoComplex k;
    k.skeleton = graph_from_json(j, red, blue);
    if (j.contains("faces"))
        for (const auto& f : j.at("faces")) {
            Walk w;
            for (const auto& s : f.at("walk")) w.push_back(WalkStep::from_signed(s.get<int>()));
            FaceLabel l = f.contains("label") ? face_label_from_string(f.at("label").get<std::string>())
                                              : FaceLabel::Unlabeled;
            k.add_face(f.at("id").get<int>(), std::move(w), l);
        }
    return k;
}

} // namespace gsckit
