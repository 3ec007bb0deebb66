#pragma once

#include <map>
#include <set>
#include <vector>
#include <optional>
#include <functional>
#include <algorithm>

#include "gsckit/complex2.hpp"

namespace gsckit {

/// State of the inductive recolouring: R(j) is the current red set, phi the
/// partial bijection built so far (identity on R∩B from the start).
struct ColourChangeState {
    Graph g;
    SpotSet r_current; // R(j)
    SpotSet b;         // B, fixed
    std::map<int, int> phi;
    std::size_t j = 0;

    void validate() const {
        if (!is_property_p(g, r_current))
            throw structural_error("colour change: R(j) lost Property P");
        if (!is_property_p(g, b))
            throw structural_error("colour change: B lost Property P");
    }
};

/// Witness cell of one step: a closed walk crossing exactly the converted
/// spot and its blue replacement, once each.
struct WitnessCell {
    std::size_t j = 0;
    Walk cycle;
    int r_spot = 0;
    int b_spot = 0;
};

struct ColourChangeTrace {
    std::vector<WitnessCell> steps;
    std::map<int, int> phi;

    Json to_json() const {
        Json j = Json::array();
        for (const auto& s : steps) {
            Json w = Json::array();
            for (const auto& st : s.cycle) w.push_back(st.signed_id());
            j.push_back({{"j", s.j}, {"r", s.r_spot}, {"b", s.b_spot}, {"witness", w}});
        }
        return j;
    }

    static ColourChangeTrace from_json(const Json& j) {
        ColourChangeTrace t;
        for (const auto& s : j) {
            WitnessCell w;
            w.j = s.at("j").get<std::size_t>();
            w.r_spot = s.at("r").get<int>();
            w.b_spot = s.at("b").get<int>();
            for (const auto& e : s.at("witness")) w.cycle.push_back(WalkStep::from_signed(e.get<int>()));
            t.steps.push_back(std::move(w));
        }
        for (const auto& s : t.steps) t.phi[s.r_spot] = s.b_spot;
        return t;
    }
};

namespace detail {

// Closed walk through both spotted edges: tree paths inside the two split
// blocks joined by the spots. r = (p,q), b = (u,v) with p,u in X and q,v in Y.
inline Walk witness_cycle(const Graph& g, const SpotSet& deleted, int r_edge, int b_edge) {
    SpotSet cut = deleted;
    cut.spots.insert(b_edge);
    Partition part = split_at_spot(g, cut, b_edge);
    const auto& be = g.edge(b_edge);
    const auto& re = g.edge(r_edge);
    const std::set<int>& X = part.blocks[0]; // contains be.u
    int ru = re.u, rv = re.v;
    if (!X.count(ru)) std::swap(ru, rv);
    if (!X.count(ru) || part.blocks[1].count(ru) || !part.blocks[1].count(rv))
        throw structural_error("witness: r edge does not join the two blocks");

    Graph forest = delete_spots(g, cut); // X and Y are its components

    Walk w;
    auto append_path = [&](int from, int to) {
        int at = from;
        for (int eid : forest.tree_path(from, to)) {
            const auto& e = g.edge(eid);
            if (e.u == at) { w.push_back(WalkStep{eid, 1}); at = e.v; }
            else { w.push_back(WalkStep{eid, -1}); at = e.u; }
        }
        return at;
    };
    // b forward (u->v), path in Y from v to rv, r crossed back into X, path in
    // X from ru to u.
    w.push_back(WalkStep{b_edge, 1});
    int at = append_path(be.v, rv);
    if (re.u == at) { w.push_back(WalkStep{r_edge, 1}); at = re.v; }
    else { w.push_back(WalkStep{r_edge, -1}); at = re.u; }
    append_path(at, be.u);
    return w;
}

inline std::size_t crossings(const Walk& w, int edge) {
    std::size_t n = 0;
    for (const auto& s : w)
        if (s.edge == edge) ++n;
    return n;
}

} // namespace detail

/// One induction step: choose b(j+1), split the tree g - R(j) at it, find a
/// red spot joining the two sides, recolour it.
inline std::pair<ColourChangeState, WitnessCell>
colour_change_step(const ColourChangeState& s, std::optional<int> choose_b = std::nullopt) {
    s.validate();
    std::set<int> remaining;
    for (int be : s.b.spots)
        if (!s.r_current.contains(be)) remaining.insert(be);
    if (remaining.empty()) throw input_error("colour_change_step: nothing left to convert");

    int b_edge = choose_b.value_or(*remaining.begin());
    if (!remaining.count(b_edge)) throw input_error("colour_change_step: chosen b not in B - R(j)");

    SpotSet cut = s.r_current;
    cut.spots.insert(b_edge);
    Partition part = split_at_spot(s.g, cut, b_edge);
    const std::set<int>& X = part.blocks[0];
    const std::set<int>& Y = part.blocks[1];

    std::optional<int> r_edge;
    for (int re : s.r_current.spots) {
        if (s.b.contains(re)) continue; // R∩B is mute
        const auto& e = s.g.edge(re);
        if ((X.count(e.u) && Y.count(e.v)) || (X.count(e.v) && Y.count(e.u))) {
            r_edge = re;
            break;
        }
    }
    if (!r_edge)
        throw structural_error("colour_change_step: no red spot joins the split blocks");

    WitnessCell cell;
    cell.j = s.j + 1;
    cell.r_spot = *r_edge;
    cell.b_spot = b_edge;
    cell.cycle = detail::witness_cycle(s.g, s.r_current, *r_edge, b_edge);

    ColourChangeState next = s;
    next.j = s.j + 1;
    next.r_current.spots.erase(*r_edge);
    next.r_current.spots.insert(b_edge);
    next.phi[*r_edge] = b_edge;
    next.validate(); // Property P after the step, the heart of the induction
    return {next, cell};
}

/// Runs the whole process; |R - B| steps, ends with R(final) = B and phi a
/// bijection that is the identity on R∩B.
inline ColourChangeTrace run_colour_change(const Graph& g, const SpotSet& R, const SpotSet& B,
                                           const std::function<std::optional<int>(const ColourChangeState&)>&
                                               chooser = {}) {
    if (!is_property_p(g, R)) throw input_error("run_colour_change: (g, R) lacks Property P");
    if (!is_property_p(g, B)) throw input_error("run_colour_change: (g, B) lacks Property P");

    ColourChangeState s;
    s.g = g;
    s.r_current = R;
    s.b = B;
    for (int e : R.spots)
        if (B.contains(e)) s.phi[e] = e; // id on R∩B

    ColourChangeTrace trace;
    while (true) {
        bool done = true;
        for (int be : B.spots)
            if (!s.r_current.contains(be)) { done = false; break; }
        if (done) break;
        auto choice = chooser ? chooser(s) : std::nullopt;
        auto [next, cell] = colour_change_step(s, choice);
        trace.steps.push_back(cell);
        s = std::move(next);
    }
    if (s.r_current.spots != B.spots)
        throw structural_error("run_colour_change: final red set differs from B");
    trace.phi = s.phi;
    return trace;
}

struct TraceVerdict {
    bool ok = true;
    std::size_t failed_step = 0; // 1-based; 0 when global
    std::string reason;
    explicit operator bool() const { return ok; }
};

/// Replays a trace from scratch: Property P of every R(j), the crossing
/// counts of every witness, and phi consistency.
inline TraceVerdict verify_trace(const Graph& g, const SpotSet& R, const SpotSet& B,
                                 const ColourChangeTrace& trace) {
    auto fail = [](std::size_t step, const std::string& why) {
        return TraceVerdict{false, step, why};
    };
    if (!is_property_p(g, R)) return fail(0, "(g,R) lacks Property P");
    if (!is_property_p(g, B)) return fail(0, "(g,B) lacks Property P");

    SpotSet r_cur = R;
    std::map<int, int> phi;
    for (int e : R.spots)
        if (B.contains(e)) phi[e] = e;

    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& cell = trace.steps[i];
        std::size_t stepno = i + 1;
        if (!r_cur.contains(cell.r_spot) || B.contains(cell.r_spot))
            return fail(stepno, "r spot not in R(j-1) - B");
        if (!B.contains(cell.b_spot) || r_cur.contains(cell.b_spot))
            return fail(stepno, "b spot not in B - R(j-1)");
        // Witness must be a closed walk in g.
        for (std::size_t p = 0; p < cell.cycle.size(); ++p) {
            if (!g.has_edge(cell.cycle[p].edge)) return fail(stepno, "witness uses unknown edge");
        }
        {
            TwoComplex probe;
            probe.skeleton = g;
            try {
                probe.validate_walk(cell.cycle);
            } catch (const input_error&) {
                return fail(stepno, "witness is not a closed walk");
            }
        }
        if (detail::crossings(cell.cycle, cell.r_spot) != 1)
            return fail(stepno, "witness does not cross r exactly once");
        if (detail::crossings(cell.cycle, cell.b_spot) != 1)
            return fail(stepno, "witness does not cross b exactly once");
        for (int other : r_cur.spots)
            if (other != cell.r_spot && detail::crossings(cell.cycle, other) != 0)
                return fail(stepno, "witness crosses another spot of R(j-1)");
        if (phi.count(cell.r_spot)) return fail(stepno, "phi not injective on r side");
        for (const auto& [rr, bb] : phi)
            if (bb == cell.b_spot) return fail(stepno, "phi not injective on b side");
        phi[cell.r_spot] = cell.b_spot;
        r_cur.spots.erase(cell.r_spot);
        r_cur.spots.insert(cell.b_spot);
        if (!is_property_p(g, r_cur)) return fail(stepno, "R(j) lost Property P");
    }
    if (r_cur.spots != B.spots) return fail(0, "final red set is not B");
    if (trace.phi != phi) return fail(0, "phi mismatch");
    return TraceVerdict{};
}

} // namespace gsckit
