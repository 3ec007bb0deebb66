#pragma once

#include <map>
#include <set>
#include <vector>
#include <optional>
#include <algorithm>
#include <functional>

#include "gsckit/complex2.hpp"

namespace gsckit {

/// Geometric intersection matrix: curves x handles crossing counts, plus an
/// optional diagonal pairing.
class IntersectionMatrix {
public:
    std::vector<int> curves;
    std::vector<int> handles;
    std::map<std::pair<int, int>, std::size_t> entries; // (curve, handle) -> count, zero omitted
    std::map<int, int> pairing;                         // curve -> handle, injective

    std::size_t entry(int curve, int handle) const {
        auto it = entries.find({curve, handle});
        return it == entries.end() ? 0 : it->second;
    }

    void set_entry(int curve, int handle, std::size_t n) {
        if (n == 0) entries.erase({curve, handle});
        else entries[{curve, handle}] = n;
    }

    void validate() const {
        std::set<int> cs(curves.begin(), curves.end()), hs(handles.begin(), handles.end());
        if (cs.size() != curves.size()) throw input_error("duplicate curve id");
        if (hs.size() != handles.size()) throw input_error("duplicate handle id");
        for (const auto& [k, n] : entries)
            if (!cs.count(k.first) || !hs.count(k.second))
                throw input_error("entry outside curve/handle index sets");
        std::set<int> used;
        for (const auto& [c, h] : pairing) {
            if (!cs.count(c) || !hs.count(h)) throw input_error("pairing outside index sets");
            if (!used.insert(h).second) throw input_error("pairing not injective");
        }
    }

    Json to_json() const {
        Json j;
        j["curves"] = curves;
        j["handles"] = handles;
        j["entries"] = Json::array();
        for (const auto& [k, n] : entries)
            j["entries"].push_back({k.first, k.second, n});
        j["pairing"] = Json::array();
        for (const auto& [c, h] : pairing) j["pairing"].push_back({c, h});
        return j;
    }

    static IntersectionMatrix from_json(const Json& j) {
        IntersectionMatrix m;
        for (const auto& c : j.at("curves")) m.curves.push_back(c.get<int>());
        for (const auto& h : j.at("handles")) m.handles.push_back(h.get<int>());
        for (const auto& e : j.at("entries"))
            m.set_entry(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<std::size_t>());
        if (j.contains("pairing"))
            for (const auto& p : j.at("pairing"))
                m.pairing[p.at(0).get<int>()] = p.at(1).get<int>();
        m.validate();
        return m;
    }
};

/// Arcs derive from off-diagonal nonzeros under a fixed pairing; nodes are the
/// paired states (named by curve id).
struct TrajectoryDigraph {
    std::vector<int> nodes;                 // curve ids of paired states
    std::map<int, int> handle_of;           // curve -> paired handle
    std::multiset<std::pair<int, int>> arcs; // (from curve, to curve)

    bool has_arc(int from, int to) const { return arcs.count({from, to}) != 0; }

    /// Deterministic Kahn topological order (smallest id first); nullopt when
    /// cyclic.
    std::optional<std::vector<int>> topological_order() const {
        std::map<int, std::size_t> indeg;
        for (int n : nodes) indeg[n] = 0;
        std::set<std::pair<int, int>> unique_arcs(arcs.begin(), arcs.end());
        for (const auto& [f, t] : unique_arcs) ++indeg[t];
        std::set<int> ready;
        for (const auto& [n, d] : indeg)
            if (d == 0) ready.insert(n);
        std::vector<int> order;
        while (!ready.empty()) {
            int n = *ready.begin();
            ready.erase(ready.begin());
            order.push_back(n);
            for (const auto& [f, t] : unique_arcs)
                if (f == n && --indeg[t] == 0) ready.insert(t);
        }
        if (order.size() != nodes.size()) return std::nullopt;
        return order;
    }

    /// Some directed cycle (as a curve-id sequence, first == last), when one
    /// exists.
    std::optional<std::vector<int>> find_cycle() const {
        std::map<int, int> state; // 0 unseen, 1 in stack, 2 done
        std::map<int, std::vector<int>> adj;
        for (const auto& [f, t] : std::set<std::pair<int, int>>(arcs.begin(), arcs.end()))
            adj[f].push_back(t);
        std::vector<int> stack;
        std::optional<std::vector<int>> found;
        auto dfs = [&](auto&& self, int v) -> bool {
            state[v] = 1;
            stack.push_back(v);
            for (int w : adj[v]) {
                if (state[w] == 1) {
                    std::vector<int> cyc;
                    auto it = std::find(stack.begin(), stack.end(), w);
                    cyc.assign(it, stack.end());
                    cyc.push_back(w);
                    found = cyc;
                    return true;
                }
                if (state[w] == 0 && self(self, w)) return true;
            }
            stack.pop_back();
            state[v] = 2;
            return false;
        };
        for (int n : nodes)
            if (state[n] == 0 && dfs(dfs, n)) return found;
        return std::nullopt;
    }

    std::string to_dot() const {
        std::ostringstream os;
        os << "digraph trajectories {\n";
        for (int n : nodes) os << "  s" << n << ";\n";
        for (const auto& [f, t] : arcs) os << "  s" << f << " -> s" << t << ";\n";
        os << "}\n";
        return os.str();
    }
};

enum class MatrixClass { Easy, Difficult, NotIdNil };

struct Classification {
    MatrixClass verdict = MatrixClass::NotIdNil;
    std::vector<int> ordering;            // EASY: curve ids, sinks first; arcs point backward
    std::map<int, int> pairing;           // the diagonal used
    std::optional<std::vector<int>> cycle; // refutation: directed cycle
    bool diagonal_defect = false;          // refutation: no perfect 1-matching
};

namespace detail {

// Maximum bipartite matching over the 1-entries, preferring low curve ids then
// low handle ids; deterministic.
inline std::optional<std::map<int, int>> diagonal_matching(const IntersectionMatrix& m) {
    if (m.curves.size() != m.handles.size()) return std::nullopt;
    std::map<int, std::vector<int>> cand;
    for (int c : m.curves) {
        for (int h : m.handles)
            if (m.entry(c, h) == 1) cand[c].push_back(h);
        std::sort(cand[c].begin(), cand[c].end());
    }
    std::map<int, int> match_h; // handle -> curve
    auto augment = [&](auto&& self, int c, std::set<int>& seen) -> bool {
        for (int h : cand[c]) {
            if (seen.count(h)) continue;
            seen.insert(h);
            auto it = match_h.find(h);
            if (it == match_h.end() || self(self, it->second, seen)) {
                match_h[h] = c;
                return true;
            }
        }
        return false;
    };
    for (int c : m.curves) {
        std::set<int> seen;
        if (!augment(augment, c, seen)) return std::nullopt;
    }
    std::map<int, int> out;
    for (const auto& [h, c] : match_h) out[c] = h;
    return out;
}

// All perfect matchings over 1-entries, capped; used when the canonical one
// is cyclic (an exhaustive reindexing search).
inline void enumerate_matchings(const IntersectionMatrix& m, std::size_t cap,
                                const std::function<bool(const std::map<int, int>&)>& visit) {
    std::vector<int> cs = m.curves;
    std::map<int, int> cur;
    std::set<int> used;
    std::size_t count = 0;
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (count >= cap) return true;
        if (i == cs.size()) {
            ++count;
            return visit(cur);
        }
        for (int h : m.handles) {
            if (used.count(h) || m.entry(cs[i], h) != 1) continue;
            used.insert(h);
            cur[cs[i]] = h;
            if (self(self, i + 1)) return true;
            cur.erase(cs[i]);
            used.erase(h);
        }
        return false;
    };
    rec(rec, 0);
}

} // namespace detail

inline TrajectoryDigraph trajectory_digraph(const IntersectionMatrix& m,
                                            const std::map<int, int>& pairing) {
    TrajectoryDigraph g;
    std::map<int, int> curve_of; // handle -> curve
    for (const auto& [c, h] : pairing) {
        g.nodes.push_back(c);
        g.handle_of[c] = h;
        curve_of[h] = c;
    }
    std::sort(g.nodes.begin(), g.nodes.end());
    for (const auto& [k, n] : m.entries) {
        auto [c, h] = k;
        if (!pairing.count(c) || !curve_of.count(h)) continue;
        int target = curve_of.at(h);
        if (target == c) continue;
        for (std::size_t i = 0; i < n; ++i) g.arcs.insert({c, target});
    }
    return g;
}

/// Easy id + nilpotent test. EASY iff some perfect matching of 1-entries has
/// an acyclic off-diagonal trajectory digraph; the ordering returned lists
/// states sinks-first, so every arc points from a later state to an earlier
/// one. Cyclic or diagonal-defective inputs are NotIdNil with a witness.
/// The Difficult verdict is reserved for genuinely infinite presentations and
/// is never produced on finite data (mixed cases classify EASY).
inline Classification classify(const IntersectionMatrix& m) {
    m.validate();
    Classification out;
    auto canonical = detail::diagonal_matching(m);
    if (!canonical) {
        out.verdict = MatrixClass::NotIdNil;
        out.diagonal_defect = true;
        return out;
    }
    auto try_pairing = [&](const std::map<int, int>& pairing) -> bool {
        auto g = trajectory_digraph(m, pairing);
        auto order = g.topological_order();
        if (!order) return false;
        out.verdict = MatrixClass::Easy;
        out.pairing = pairing;
        // Paper convention: list sinks first so every off-diagonal nonzero
        // points from a later position to an earlier one.
        out.ordering.assign(order->rbegin(), order->rend());
        return true;
    };
    if (try_pairing(*canonical)) return out;
    bool found = false;
    detail::enumerate_matchings(m, 10000, [&](const std::map<int, int>& p) {
        if (try_pairing(p)) { found = true; return true; }
        return false;
    });
    if (found) return out;
    out.verdict = MatrixClass::NotIdNil;
    out.pairing = *canonical;
    out.cycle = trajectory_digraph(m, *canonical).find_cycle();
    return out;
}

/// Exact cancelling position: entries are the identity
/// under the pairing, nothing else.
inline bool is_cancelling_position(const IntersectionMatrix& m) {
    m.validate();
    if (m.curves.size() != m.handles.size()) return false;
    if (m.pairing.size() != m.curves.size()) return false;
    for (int c : m.curves)
        if (m.entry(c, m.pairing.at(c)) != 1) return false;
    std::size_t nonzero = 0;
    for (const auto& [k, n] : m.entries)
        if (n != 0) ++nonzero;
    return nonzero == m.curves.size();
}

/// Crossing counts of labeled faces over spotted edges. Curves are the faces
/// whose label is in `which` (all faces when empty).
inline IntersectionMatrix build_matrix(const TwoComplex& k, const SpotSet& spots,
                                       const std::set<FaceLabel>& which = {}) {
    spots.validate_against(k.skeleton);
    IntersectionMatrix m;
    for (const auto& [fid, w] : k.faces) {
        if (!which.empty() && !which.count(k.label(fid))) continue;
        m.curves.push_back(fid);
        for (int s : spots.spots) {
            std::size_t n = k.multiplicity_in_face(s, fid);
            if (n) m.set_entry(fid, s, n);
        }
    }
    for (int s : spots.spots) m.handles.push_back(s);
    return m;
}

/// Convenience: RED selects the C-labeled curves, BLUE the eta-labeled ones.
inline IntersectionMatrix build_matrix(const TwoComplex& k, const SpotSet& spots, Colour colour) {
    std::set<FaceLabel> which;
    if (colour == Colour::Red) which = {FaceLabel::C};
    else if (colour == Colour::Blue) which = {FaceLabel::Eta};
    return build_matrix(k, spots, which);
}

// ---------------------------------------------------------------------------
// GSC certificate

struct GscCertificate {
    bool gsc = false;
    /// Dilatation-order witness: (spot edge, dual face) removed first to last;
    /// at each removal the face is free over its spot.
    std::vector<std::pair<int, int>> order;
    Classification refutation; // when !gsc

    Json to_json() const {
        Json j;
        j["gsc"] = gsc;
        j["order"] = Json::array();
        for (const auto& [s, f] : order) j["order"].push_back({s, f});
        if (!gsc) {
            j["diagonal_defect"] = refutation.diagonal_defect;
            if (refutation.cycle) j["cycle"] = *refutation.cycle;
        }
        return j;
    }
};

/// Lifts an EASY classification of the face/spot crossing matrix to a removal
/// order in which every (spot, dual face) pair is a free pair at its turn.
/// The witness is re-verified by literally replaying the removals.
inline GscCertificate gsc_certificate(const TwoComplex& k, const SpotSet& spots) {
    IntersectionMatrix m = build_matrix(k, spots, std::set<FaceLabel>{});
    GscCertificate cert;
    Classification cls = classify(m);
    if (cls.verdict != MatrixClass::Easy) {
        cert.gsc = false;
        cert.refutation = cls;
        return cert;
    }
    // Sinks-first order removes a state only after everything crossing its
    // spot is gone... removal wants sources first: invert.
    std::vector<int> removal(cls.ordering.rbegin(), cls.ordering.rend());
    TwoComplex cur = k;
    for (int fid : removal) {
        int spot = cls.pairing.at(fid);
        FreePair p{1, spot, fid};
        if (!is_free_pair(cur, p)) {
            cert.gsc = false;
            cert.refutation.verdict = MatrixClass::NotIdNil;
            return cert;
        }
        cur = elementary_collapse(cur, p);
        cert.order.push_back({spot, fid});
    }
    cert.gsc = true;
    return cert;
}

} // namespace gsckit
