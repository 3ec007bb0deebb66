#pragma once

#include <map>
#include <set>
#include <vector>
#include <optional>
#include <algorithm>

#include "gsckit/flowmatrix.hpp"
#include "gsckit/rational.hpp"

namespace gsckit {

/// Exact closed interval.
struct Interval {
    Rat lo, hi;
    Rat length() const { return hi - lo; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool disjoint(const Interval& o) const { return hi < o.lo || o.hi < lo; }
};

/// Directed multigraph of LAVA states with Box metrics and per-arrow interval
/// and disc placements. Discs are proxied by intervals (the transversal is
/// one-dimensional).
class StateGraph {
public:
    struct Arrow {
        int id = 0;
        int from = 0;
        int to = 0;
        Interval lambda_image; // subinterval of I_from, a copy of I_to
        Interval mu_image;     // subinterval of D_to, an isometric copy of D_from
    };

    std::vector<int> states;                 // sorted
    std::map<int, Rat> interval_length;      // length of I_i
    std::map<int, Rat> disc_diameter;        // diameter of D_i
    std::map<int, Arrow> arrows;             // by arrow id

    Interval interval_of(int state) const { return {Rat(0), interval_length.at(state)}; }
    Interval disc_of(int state) const { return {Rat(0), disc_diameter.at(state)}; }

    std::vector<int> arrows_out(int state) const {
        std::vector<int> out;
        for (const auto& [id, a] : arrows)
            if (a.from == state) out.push_back(id);
        return out;
    }
    std::vector<int> arrows_in(int state) const {
        std::vector<int> out;
        for (const auto& [id, a] : arrows)
            if (a.to == state) out.push_back(id);
        return out;
    }

    void validate() const {
        for (const auto& [id, a] : arrows) {
            if (!interval_length.count(a.from) || !interval_length.count(a.to))
                throw input_error("arrow on unknown state");
            if (!(interval_length.at(a.from) > interval_length.at(a.to)))
                throw structural_error("state graph: arrow does not shrink interval length");
            if (!(disc_diameter.at(a.from) < disc_diameter.at(a.to)))
                throw structural_error("state graph: arrow does not grow disc diameter");
            if (!(interval_of(a.from).contains(a.lambda_image)))
                throw structural_error("state graph: lambda image escapes I(from)");
            if (!(disc_of(a.to).contains(a.mu_image)))
                throw structural_error("state graph: mu image escapes D(to)");
            if (a.mu_image.length() != disc_diameter.at(a.from))
                throw structural_error("state graph: mu image is not an isometric disc copy");
        }
        // independence: lambda images of arrows out of one source are disjoint
        for (int s : states) {
            auto out = arrows_out(s);
            for (std::size_t i = 0; i < out.size(); ++i)
                for (std::size_t j = i + 1; j < out.size(); ++j)
                    if (!arrows.at(out[i]).lambda_image.disjoint(arrows.at(out[j]).lambda_image))
                        throw structural_error("state graph: lambda images overlap");
            auto in = arrows_in(s);
            for (std::size_t i = 0; i < in.size(); ++i)
                for (std::size_t j = i + 1; j < in.size(); ++j)
                    if (!arrows.at(in[i]).mu_image.disjoint(arrows.at(in[j]).mu_image))
                        throw structural_error("state graph: mu images overlap");
        }
    }

    Json to_json() const {
        Json j;
        j["states"] = Json::array();
        for (int s : states)
            j["states"].push_back({{"id", s},
                                   {"length", interval_length.at(s).str()},
                                   {"diameter", disc_diameter.at(s).str()}});
        j["arrows"] = Json::array();
        for (const auto& [id, a] : arrows)
            j["arrows"].push_back({{"id", id},
                                   {"from", a.from},
                                   {"to", a.to},
                                   {"lambda", {a.lambda_image.lo.str(), a.lambda_image.hi.str()}},
                                   {"mu", {a.mu_image.lo.str(), a.mu_image.hi.str()}}});
        return j;
    }

    std::string to_dot() const {
        std::ostringstream os;
        os << "digraph states {\n";
        std::map<std::pair<int, int>, std::size_t> mult;
        for (const auto& [id, a] : arrows) ++mult[{a.from, a.to}];
        for (int s : states) os << "  s" << s << ";\n";
        for (const auto& [k, n] : mult)
            os << "  s" << k.first << " -> s" << k.second << " [label=\"x" << n << "\"];\n";
        os << "}\n";
        return os.str();
    }
};

/// Degenerate-case detector: cyclic trajectory digraphs have non-closed
/// orbits and the quotient only makes sense non-commutatively.
struct DegeneracyReport {
    bool ok = true;
    std::vector<int> cycle; // curve ids, first == last
};

inline DegeneracyReport detect_degenerate(const IntersectionMatrix& m) {
    m.validate();
    auto pairing = m.pairing.size() == m.curves.size() && !m.curves.empty()
                       ? std::optional<std::map<int, int>>(m.pairing)
                       : detail::diagonal_matching(m);
    DegeneracyReport rep;
    if (!pairing) return rep; // no diagonal to speak of: nothing to detect
    auto g = trajectory_digraph(m, *pairing);
    if (auto cyc = g.find_cycle()) {
        rep.ok = false;
        rep.cycle = *cyc;
    }
    return rep;
}

/// Builds the state graph of an EASY matrix. Lengths grow along the order,
/// diameters shrink geometrically so every incoming isometric disc copy fits
/// disjointly.
inline StateGraph build_state_graph(const IntersectionMatrix& m) {
    Classification cls = classify(m);
    if (cls.verdict != MatrixClass::Easy) {
        auto rep = detect_degenerate(m);
        std::string why = rep.ok ? "no diagonal matching" : "trajectory cycle";
        throw input_error("build_state_graph: matrix is not easy id+nilpotent (" + why +
                          "); see detect_degenerate");
    }
    StateGraph sg;
    sg.states.assign(cls.ordering.begin(), cls.ordering.end());
    std::sort(sg.states.begin(), sg.states.end());

    std::map<int, std::size_t> pos; // 1-based position in the sinks-first order
    for (std::size_t i = 0; i < cls.ordering.size(); ++i) pos[cls.ordering[i]] = i + 1;

    std::size_t total_arrows = 0;
    std::map<int, int> curve_of;
    for (const auto& [c, h] : cls.pairing) curve_of[h] = c;
    for (const auto& [k, n] : m.entries) {
        auto [c, h] = k;
        if (curve_of.at(h) != c) total_arrows += n;
    }
    Rat q(1, static_cast<std::int64_t>(2 * (total_arrows + 2)));

    auto pow_q = [&](std::size_t e) {
        Rat r(1);
        for (std::size_t i = 0; i < e; ++i) r = r * q;
        return r;
    };
    for (int s : sg.states) {
        sg.interval_length[s] = Rat(static_cast<std::int64_t>(pos[s]));
        sg.disc_diameter[s] = pow_q(pos[s]);
    }

    // arrows, multiplicity-aware
    int next_arrow = 1;
    std::map<int, std::vector<int>> out_of, into;
    for (const auto& [k, n] : m.entries) {
        auto [c, h] = k;
        int t = curve_of.at(h);
        if (t == c) continue;
        for (std::size_t i = 0; i < n; ++i) {
            StateGraph::Arrow a;
            a.id = next_arrow++;
            a.from = c;
            a.to = t;
            sg.arrows[a.id] = a;
            out_of[c].push_back(a.id);
            into[t].push_back(a.id);
        }
    }
    // lambda slots: equal division of I_from with gaps
    for (const auto& [s, ids] : out_of) {
        Rat len = sg.interval_length[s];
        auto d = static_cast<std::int64_t>(ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i) {
            Rat a = len * Rat(static_cast<std::int64_t>(3 * i + 1), 3 * d + 1);
            Rat b = len * Rat(static_cast<std::int64_t>(3 * i + 2), 3 * d + 1);
            sg.arrows[ids[i]].lambda_image = {a, b};
        }
    }
    // mu slots: isometric copies packed into D_to with equal gaps
    for (const auto& [s, ids] : into) {
        Rat diam = sg.disc_diameter[s];
        Rat need(0);
        for (int id : ids) need += sg.disc_diameter[sg.arrows[id].from];
        Rat gap = (diam - need) / Rat(static_cast<std::int64_t>(ids.size() + 1));
        if (!(gap > Rat(0)))
            throw structural_error("build_state_graph: disc copies do not fit");
        Rat at = gap;
        for (int id : ids) {
            Rat w = sg.disc_diameter[sg.arrows[id].from];
            sg.arrows[id].mu_image = {at, at + w};
            at = at + w + gap;
        }
    }
    sg.validate();
    return sg;
}

/// All incoming arrow-paths into `state` of length <= depth (the length-0
/// path included), multiplicity-aware, deterministic order. A trajectory is
/// the arrow-id sequence listed source-first, i.e. the arrow into `state`
/// comes last.
inline std::vector<std::vector<int>> enumerate_trajectories(const StateGraph& sg, int state,
                                                            std::size_t depth) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int at, std::size_t left) -> void {
        out.push_back(std::vector<int>(cur.rbegin(), cur.rend()));
        if (left == 0) return;
        for (int id : sg.arrows_in(at)) {
            cur.push_back(id);
            self(self, sg.arrows.at(id).from, left - 1);
            cur.pop_back();
        }
    };
    rec(rec, state, depth);
    return out;
}

/// The depth-d Cantor approximation transversal to Box(state): composed
/// mu-images of all length-d incoming trajectories. Laminar, refining in d,
/// diameters strictly decreasing.
inline std::vector<Interval> transversal_intervals(const StateGraph& sg, int state,
                                                   std::size_t depth) {
    std::vector<Interval> out;
    auto rec = [&](auto&& self, int at, std::size_t left, std::vector<int>& stack) -> void {
        if (left == 0) {
            // compose from the deepest source downward
            if (stack.empty()) return;
            int src = sg.arrows.at(stack.back()).from;
            Interval img = {Rat(0), sg.disc_diameter.at(src)};
            for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
                const auto& a = sg.arrows.at(*it);
                // isometric mu: shift into the slot inside D_to
                img = {a.mu_image.lo + img.lo, a.mu_image.lo + img.hi};
            }
            out.push_back(img);
            return;
        }
        for (int id : sg.arrows_in(at)) {
            stack.push_back(id);
            self(self, sg.arrows.at(id).from, left - 1, stack);
            stack.pop_back();
        }
    };
    std::vector<int> stack;
    rec(rec, state, depth, stack);
    std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.hi < b.hi;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Train track

/// The quotient X1(α): arcs glued by the lambda embeddings. A point is
/// addressed by (state, coordinate); canonical form maps down through slots.
class TrainTrack {
public:
    struct Point {
        int state = 0;
        Rat coord;
        friend bool operator==(const Point&, const Point&) = default;
        friend bool operator<(const Point& a, const Point& b) {
            if (a.state != b.state) return a.state < b.state;
            return a.coord < b.coord;
        }
    };

    struct EdgeCell {
        int state = 0; // host interval
        Rat lo, hi;    // segment of I_state not inside any slot
    };

    std::vector<int> states;       // the component
    std::vector<Point> branch_set; // canonical X0 points
    std::vector<EdgeCell> edges;

    /// Sub-state-graph weight of a smooth point: occurrences (upward gluing
    /// paths) with immediate-nesting arrows. Node ids index `occurrences`.
    struct Weight {
        struct Occurrence {
            int state = 0;
            Rat coord;
            std::vector<int> path; // arrow ids climbed, deepest last
        };
        std::vector<Occurrence> occurrences;
        std::vector<std::pair<int, int>> arrows; // (outer occ, immediately inner occ)

        std::size_t out_degree(int occ) const {
            std::size_t n = 0;
            for (const auto& [f, t] : arrows)
                if (f == occ) ++n;
            return n;
        }
    };
};

namespace detail {

/// Maps (state, coord) one level down if it lies inside an out-slot.
inline std::optional<TrainTrack::Point> down_once(const StateGraph& sg, const TrainTrack::Point& p) {
    for (int id : sg.arrows_out(p.state)) {
        const auto& a = sg.arrows.at(id);
        if (a.lambda_image.lo <= p.coord && p.coord <= a.lambda_image.hi) {
            // affine from lambda_image onto [0, len(to)]
            Rat t = (p.coord - a.lambda_image.lo) / a.lambda_image.length();
            return TrainTrack::Point{a.to, t * sg.interval_length.at(a.to)};
        }
    }
    return std::nullopt;
}

inline TrainTrack::Point canonical_point(const StateGraph& sg, TrainTrack::Point p) {
    while (auto q = down_once(sg, p)) p = *q;
    return p;
}

} // namespace detail

/// Connected components of the state graph, each named by its sorted state
/// list. Components correspond to the final states they contain.
inline std::vector<std::vector<int>> state_components(const StateGraph& sg) {
    std::map<int, int> comp;
    int n = 0;
    for (int s : sg.states)
        if (!comp.count(s)) {
            std::vector<int> stack{s};
            comp[s] = n;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (const auto& [id, a] : sg.arrows) {
                    int y = -1;
                    if (a.from == x && !comp.count(a.to)) y = a.to;
                    if (a.to == x && !comp.count(a.from)) y = a.from;
                    if (y != -1) { comp[y] = n; stack.push_back(y); }
                }
            }
            ++n;
        }
    std::vector<std::vector<int>> out(n);
    for (const auto& [s, c] : comp) out[c].push_back(s);
    for (auto& v : out) std::sort(v.begin(), v.end());
    return out;
}

/// A component is elementary when it has a unique final (arrow-free) state;
/// its LAVA contribution is a single atom.
inline bool is_elementary_component(const StateGraph& sg, const std::vector<int>& component) {
    std::size_t finals = 0;
    for (int s : component)
        if (sg.arrows_out(s).empty()) ++finals;
    return finals == 1;
}

inline TrainTrack build_train_track(const StateGraph& sg, const std::vector<int>& component) {
    TrainTrack tt;
    tt.states = component;
    std::set<int> member(component.begin(), component.end());
    for (int s : component)
        if (!sg.interval_length.count(s)) throw input_error("train track: unknown state");
    // canonical X0 points: endpoint images
    std::set<TrainTrack::Point> x0;
    for (int s : component) {
        x0.insert(detail::canonical_point(sg, {s, Rat(0)}));
        x0.insert(detail::canonical_point(sg, {s, sg.interval_length.at(s)}));
    }
    tt.branch_set.assign(x0.begin(), x0.end());
    // edge cells: per state, segments between consecutive cut coordinates that
    // are not interior to any slot
    for (int s : component) {
        std::set<Rat> cuts{Rat(0), sg.interval_length.at(s)};
        std::vector<std::pair<Interval, int>> slots;
        for (int id : sg.arrows_out(s)) {
            const auto& a = sg.arrows.at(id);
            cuts.insert(a.lambda_image.lo);
            cuts.insert(a.lambda_image.hi);
            slots.push_back({a.lambda_image, id});
        }
        std::vector<Rat> cs(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
            bool inside_slot = false;
            for (const auto& [iv, id] : slots)
                if (iv.lo <= cs[i] && cs[i + 1] <= iv.hi) inside_slot = true;
            if (!inside_slot) tt.edges.push_back({s, cs[i], cs[i + 1]});
        }
    }
    return tt;
}

/// Weight of a smooth point: every upward gluing path is an occurrence; the
/// unique-prefix structure makes each occurrence have at most one outgoing
/// (toward-inner) arrow, which weight_of asserts.
inline TrainTrack::Weight weight_of(const StateGraph& sg, const TrainTrack::Point& smooth_point,
                                    std::size_t path_cap = 100000) {
    auto canon = detail::canonical_point(sg, smooth_point);
    TrainTrack::Weight w;
    struct Item {
        TrainTrack::Point at;
        std::vector<int> path;
        int parent; // occurrence index of the immediately inner occurrence
    };
    std::vector<Item> queue{{canon, {}, -1}};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        if (queue.size() > path_cap) throw input_error("weight_of: occurrence cap exceeded");
        auto item = queue[qi];
        int idx = static_cast<int>(w.occurrences.size());
        w.occurrences.push_back({item.at.state, item.at.coord, item.path});
        if (item.parent >= 0) w.arrows.push_back({idx, item.parent});
        // climb: every arrow into ... every arrow id whose lambda target is
        // this state lifts the point into the arrow's source interval
        for (const auto& [aid, a] : sg.arrows) {
            if (a.to != item.at.state) continue;
            Rat t = item.at.coord / sg.interval_length.at(a.to);
            Rat lifted = a.lambda_image.lo + t * a.lambda_image.length();
            auto path = item.path;
            path.push_back(aid);
            queue.push_back({{a.from, lifted}, std::move(path), idx});
        }
    }
    for (std::size_t i = 0; i < w.occurrences.size(); ++i)
        if (w.out_degree(static_cast<int>(i)) > 1)
            throw structural_error("weight_of: occurrence with two outgoing arrows");
    return w;
}

} // namespace gsckit
