#pragma once

#include <map>
#include <set>
#include <vector>
#include <optional>
#include <algorithm>

#include "gsckit/graph.hpp"

namespace gsckit {

/// Ambient graph with a distinguished connected subgraph (the Γ(1) side) and
/// the two spot families. Both colours have Property P in the ambient graph;
/// the subgraph is well-balanced for RED.
struct BalancingInstance {
    Graph g;
    std::set<int> sub_vertices;
    std::set<int> sub_edges;
    SpotSet red;
    SpotSet blue;

    Graph subgraph() const {
        Graph s;
        for (int v : sub_vertices) s.add_vertex(v);
        for (int e : sub_edges) {
            const auto& ed = g.edge(e);
            if (!sub_vertices.count(ed.u) || !sub_vertices.count(ed.v))
                throw input_error("sub edge endpoint outside sub vertex set");
            s.add_edge(e, ed.u, ed.v);
        }
        return s;
    }

    SpotSet red_in_sub() const {
        SpotSet s;
        s.colour = Colour::Red;
        for (int e : red.spots)
            if (sub_edges.count(e)) s.spots.insert(e);
        return s;
    }

    SpotSet blue_in_sub() const {
        SpotSet s;
        s.colour = Colour::Blue;
        for (int e : blue.spots)
            if (sub_edges.count(e)) s.spots.insert(e);
        return s;
    }

    void validate() const {
        red.validate_against(g);
        blue.validate_against(g);
        if (!is_property_p(g, red)) throw input_error("balancing: (g,R) lacks Property P");
        if (!is_property_p(g, blue)) throw input_error("balancing: (g,B) lacks Property P");
        Graph s = subgraph();
        if (!s.connected()) throw input_error("balancing: sub is not connected");
        if (!is_property_p(s, red_in_sub()))
            throw input_error("balancing: sub is not well-balanced for RED");
    }
};

/// One handle slide: y slid over the passive xs, the arc adjoined.
struct SlideRecord {
    int y = 0;
    std::vector<int> xs;
    std::vector<int> arc;             // edge path in g - B
    std::optional<int> rerouted_edge; // fresh edge carrying y's spot (empty when mute)

    Json to_json() const {
        Json j;
        j["y"] = y;
        j["xs"] = xs;
        j["arc"] = arc;
        if (rerouted_edge) j["rerouted"] = *rerouted_edge;
        return j;
    }
};

/// χ = (#components of sub - B) - 1; must equal |sub∩B| - |sub∩R|, which
/// compute_chi cross-checks.
inline std::size_t compute_chi(const BalancingInstance& inst) {
    inst.validate();
    Graph sub = inst.subgraph();
    Graph cut = delete_spots(sub, inst.blue_in_sub());
    std::size_t comps = cut.components().size();
    if (comps == 0) throw input_error("balancing: empty sub");
    std::size_t chi = comps - 1;
    // the defect equals the spot-count difference
    std::size_t nb = inst.blue_in_sub().spots.size();
    std::size_t nr = inst.red_in_sub().spots.size();
    if (nb < nr || chi != nb - nr)
        throw structural_error("balancing: component count disagrees with |sub∩B| - |sub∩R|");
    return chi;
}

/// Shortest path in g - B joining two distinct components of sub - B and
/// touching sub only at its endpoints. Ties broken by lexicographic edge ids.
/// Always crosses R (forced by the four tree conditions); a violation is a broken
/// instance.
inline std::vector<int> find_geodetic_arc(const BalancingInstance& inst) {
    std::size_t chi = compute_chi(inst);
    if (chi == 0) throw input_error("find_geodetic_arc: chi = 0, nothing to do");

    Graph ambient = delete_spots(inst.g, inst.blue); // a tree
    Graph subcut = delete_spots(inst.subgraph(), inst.blue_in_sub());
    auto comps = subcut.components();
    std::map<int, std::size_t> comp_of;
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (int v : comps[i]) comp_of[v] = i;

    std::optional<std::vector<int>> best;
    auto better = [&](const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    };
    for (int u : inst.sub_vertices)
        for (int w : inst.sub_vertices) {
            if (u >= w) continue;
            if (comp_of.at(u) == comp_of.at(w)) continue;
            std::vector<int> path;
            try {
                path = ambient.tree_path(u, w);
            } catch (const structural_error&) {
                continue;
            }
            // interior vertices must avoid sub
            bool clean = true;
            int at = u;
            for (std::size_t i = 0; i + 1 < path.size() && clean; ++i) {
                const auto& e = ambient.edge(path[i]);
                at = (e.u == at) ? e.v : e.u;
                if (inst.sub_vertices.count(at)) clean = false;
            }
            if (!clean || path.empty()) continue;
            if (!best || better(path, *best)) best = path;
        }
    if (!best)
        throw structural_error("find_geodetic_arc: no clean arc between components");
    bool touches_red = false;
    for (int e : *best)
        if (inst.red.contains(e)) touches_red = true;
    if (!touches_red)
        throw structural_error("find_geodetic_arc: arc misses R, which the tree conditions forbid");
    return *best;
}

namespace detail {

inline std::pair<int, int> arc_endpoints(const Graph& g, const std::vector<int>& arc,
                                         const std::set<int>& sub_vertices) {
    // walk the arc from the sub endpoint
    std::map<int, int> deg;
    for (int e : arc) {
        ++deg[g.edge(e).u];
        ++deg[g.edge(e).v];
    }
    std::vector<int> ends;
    for (const auto& [v, d] : deg)
        if (d == 1) ends.push_back(v);
    if (ends.size() != 2) throw input_error("arc is not a simple path");
    if (!sub_vertices.count(ends[0]) || !sub_vertices.count(ends[1]))
        throw input_error("arc endpoints must lie in sub");
    return {ends[0], ends[1]};
}

} // namespace detail

/// Executes one slide: with n passive spots the y edge is deleted and a fresh
/// edge joining the arc's endpoints carries y's spot (the minimal rerouting
/// surgery); with none the slide is mute and the whole arc is adjoined.
inline std::pair<BalancingInstance, SlideRecord>
slide_balance_step(const BalancingInstance& inst, const std::vector<int>& arc,
                   const std::map<int, int>& red_order) {
    inst.validate();
    if (arc.empty()) throw input_error("slide_balance_step: empty arc");
    std::vector<int> reds;
    for (int e : arc)
        if (inst.red.contains(e)) reds.push_back(e);
    if (reds.empty()) throw structural_error("slide_balance_step: arc misses R");
    for (int e : reds)
        if (!red_order.count(e)) throw input_error("slide_balance_step: RED order missing spot");
    int y = reds[0];
    for (int e : reds)
        if (red_order.at(e) > red_order.at(y)) y = e;

    SlideRecord rec;
    rec.y = y;
    for (int e : reds)
        if (e != y) rec.xs.push_back(e);
    rec.arc = arc;

    auto [a, b] = detail::arc_endpoints(inst.g, arc, inst.sub_vertices);

    BalancingInstance next = inst;
    if (rec.xs.empty()) {
        // mute: adjoin the arc as it stands, y included
        for (int e : arc) {
            next.sub_edges.insert(e);
            next.sub_vertices.insert(inst.g.edge(e).u);
            next.sub_vertices.insert(inst.g.edge(e).v);
        }
    } else {
        next.g.edges.erase(y);
        next.red.spots.erase(y);
        int fresh = next.g.add_edge_auto(a, b);
        next.red.spots.insert(fresh);
        next.sub_edges.insert(fresh);
        rec.rerouted_edge = fresh;
    }
    next.validate(); // both colours keep Property P (eq 110.1)
    return {next, rec};
}

struct BalanceOutcome {
    BalancingInstance balanced; // final g and Γ(3) (= its sub)
    std::vector<SlideRecord> records;
    std::map<int, int> red_order; // input order with slid spots carried over
};

/// Runs exactly χ slides and checks the balance laws: all four complements
/// are trees and |Γ(3)∩R| = |Γ(3)∩B| = b1(Γ(3)). A rerouted y keeps its
/// place in the RED order (slides never reorder the surviving spots).
inline BalanceOutcome balance(const BalancingInstance& inst0, const std::map<int, int>& red_order) {
    BalanceOutcome out;
    out.red_order = red_order;
    BalancingInstance inst = inst0;
    std::size_t chi = compute_chi(inst);
    for (std::size_t step = 0; step < chi; ++step) {
        auto arc = find_geodetic_arc(inst);
        auto [next, rec] = slide_balance_step(inst, arc, out.red_order);
        if (compute_chi(next) != chi - step - 1)
            throw structural_error("balance: chi did not drop by one");
        if (rec.rerouted_edge) {
            out.red_order[*rec.rerouted_edge] = out.red_order.at(rec.y);
            out.red_order.erase(rec.y);
        }
        out.records.push_back(rec);
        inst = std::move(next);
    }
    if (compute_chi(inst) != 0) throw structural_error("balance: chi nonzero at the end");
    // final counts and the four-trees condition
    Graph sub = inst.subgraph();
    if (!is_tree(delete_spots(inst.g, inst.red))) throw structural_error("balance: g - R not a tree");
    if (!is_tree(delete_spots(inst.g, inst.blue))) throw structural_error("balance: g - B not a tree");
    if (!is_tree(delete_spots(sub, inst.red_in_sub())))
        throw structural_error("balance: sub - R not a tree");
    if (!is_tree(delete_spots(sub, inst.blue_in_sub())))
        throw structural_error("balance: sub - B not a tree");
    std::size_t nr = inst.red_in_sub().spots.size();
    std::size_t nb = inst.blue_in_sub().spots.size();
    if (nr != nb || nr != sub.betti1())
        throw structural_error("balance: final balance counts disagree");
    out.balanced = std::move(inst);
    return out;
}

/// The Promotion Table bookkeeping: after balancing, the slid y's are
/// promoted (honorifically) to 1-handles of the Delta side, raising the count
/// from n to M = n + χ. Purely a report, never a transformation.
struct PromotionReport {
    std::size_t n = 0; // |Γ(1) ∩ R| before
    std::size_t M = 0; // |Γ(3) ∩ R| after
    std::vector<int> promoted; // the surviving y spots, in slide order

    Json to_json() const {
        Json j;
        j["n"] = n;
        j["M"] = M;
        j["promoted"] = promoted;
        return j;
    }
};

inline PromotionReport promotion_report(const BalancingInstance& before,
                                        const BalanceOutcome& out) {
    PromotionReport rep;
    rep.n = before.red_in_sub().spots.size();
    rep.M = out.balanced.red_in_sub().spots.size();
    for (const auto& rec : out.records)
        rep.promoted.push_back(rec.rerouted_edge ? *rec.rerouted_edge : rec.y);
    if (rep.M != rep.n + out.records.size())
        throw structural_error("promotion report: counts disagree with the slides");
    return rep;
}

} // namespace gsckit
