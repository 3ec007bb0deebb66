#pragma once

#include <map>
#include <set>
#include <vector>
#include <optional>
#include <algorithm>

#include "gsckit/complex2.hpp"
#include "gsckit/flowmatrix.hpp"

namespace gsckit {

/// X2[new]: the old complex at xi0 = 0, a prism band over Gamma(1), and a
/// fresh copy of Delta2 at xi0 = -1, with the promoted labels and spots.
struct NewComplex {
    TwoComplex k;
    SpotSet R0, B0;
    std::set<int> delta_top_faces;    // old Delta2 faces, retrograded gamma0
    std::set<int> delta_bottom_faces; // Delta2 x (xi0 = -1), red Gamma / blue gamma1
    std::set<int> prism_faces;        // e x [0 >= xi0 >= -1], red C / blue eta
    std::set<int> old_other_faces;
    std::map<int, int> bottom_vertex; // P -> P'
    std::map<int, int> bottom_edge;   // e -> e'
    std::map<int, int> xi_edge;       // P -> P x [0,-1]
    std::map<int, FaceLabel> red;     // red partition label per face
    std::map<int, FaceLabel> blue;    // blue partition label per face

    std::set<int> gamma1_faces() const { return delta_bottom_faces; }
    std::set<int> eta_faces() const {
        std::set<int> out = prism_faces;
        for (int f : delta_top_faces) out.insert(f);
        for (int f : old_other_faces)
            if (blue.count(f) && blue.at(f) == FaceLabel::Eta) out.insert(f);
        return out;
    }
};

/// Builds X2[new] from X2(old) and a designated Delta2 subcomplex. Old faces
/// outside delta keep their red labels; delta faces retrograde to gamma0 and
/// reappear at the bottom as Gamma (red) / gamma1 (blue).
inline NewComplex build_new(const TwoComplex& x2, const std::set<int>& delta_faces,
                            const SpotSet& R_old, const SpotSet& B_old) {
    for (int f : delta_faces)
        if (!x2.faces.count(f)) throw input_error("build_new: delta face not in complex");
    R_old.validate_against(x2.skeleton);
    B_old.validate_against(x2.skeleton);

    NewComplex out;
    out.k = x2;

    // Gamma(1): skeleton of the delta subcomplex
    std::set<int> e1;
    std::set<int> v1;
    for (int f : delta_faces)
        for (const auto& s : x2.face(f)) {
            e1.insert(s.edge);
            v1.insert(x2.skeleton.edge(s.edge).u);
            v1.insert(x2.skeleton.edge(s.edge).v);
        }

    for (int p : v1) {
        int p2 = out.k.skeleton.vertices.empty() ? 1 : *out.k.skeleton.vertices.rbegin() + 1;
        out.k.skeleton.add_vertex(p2);
        out.bottom_vertex[p] = p2;
        out.xi_edge[p] = out.k.skeleton.add_edge_auto(p, p2);
    }
    for (int e : e1) {
        const auto& ed = x2.skeleton.edge(e);
        out.bottom_edge[e] = out.k.skeleton.add_edge_auto(out.bottom_vertex.at(ed.u),
                                                          out.bottom_vertex.at(ed.v));
    }
    // prisms
    for (int e : e1) {
        const auto& ed = x2.skeleton.edge(e);
        Walk w;
        w.push_back(WalkStep{e, 1});                      // P -> Q on top
        w.push_back(WalkStep{out.xi_edge.at(ed.v), 1});   // Q down
        w.push_back(WalkStep{out.bottom_edge.at(e), -1}); // Q' -> P'
        w.push_back(WalkStep{out.xi_edge.at(ed.u), -1});  // P up
        int fid = out.k.add_face_auto(std::move(w), FaceLabel::C);
        out.prism_faces.insert(fid);
        out.red[fid] = FaceLabel::C;
        out.blue[fid] = FaceLabel::Eta;
    }
    // bottom delta copy
    for (int f : delta_faces) {
        Walk w;
        for (const auto& s : x2.face(f)) w.push_back(WalkStep{out.bottom_edge.at(s.edge), s.dir});
        int fid = out.k.add_face_auto(std::move(w), FaceLabel::Gamma);
        out.delta_bottom_faces.insert(fid);
        out.red[fid] = FaceLabel::Gamma;
        out.blue[fid] = FaceLabel::Gamma1;
    }
    // labels of the old part
    for (const auto& [fid, w] : x2.faces) {
        if (delta_faces.count(fid)) {
            out.k.labels[fid] = FaceLabel::Gamma0;
            out.delta_top_faces.insert(fid);
            out.red[fid] = FaceLabel::Gamma0;
            out.blue[fid] = FaceLabel::Eta; // an old face is eta unless it was gamma1
        } else {
            out.old_other_faces.insert(fid);
            out.red[fid] = x2.label(fid);
            out.blue[fid] = x2.label(fid) == FaceLabel::Gamma1 ? FaceLabel::Gamma1 : FaceLabel::Eta;
        }
    }

    // spots: every Gamma(1) edge at xi0=0 carries an h; old R inside Gamma(1)
    // gets promoted copies at -1; no spot on the xi edges
    out.R0.colour = Colour::Red;
    for (int e : e1) out.R0.spots.insert(e);
    for (int e : R_old.spots) {
        out.R0.spots.insert(e);
        if (e1.count(e)) out.R0.spots.insert(out.bottom_edge.at(e));
    }
    out.B0.colour = Colour::Blue;
    out.B0.spots = B_old.spots;
    for (int e : e1) out.B0.spots.insert(out.bottom_edge.at(e));
    return out;
}

enum class RbCase { I, II, III, IV, Bis };

inline std::string to_string(RbCase c) {
    switch (c) {
        case RbCase::I: return "I";
        case RbCase::II: return "II";
        case RbCase::III: return "III";
        case RbCase::IV: return "IV";
        case RbCase::Bis: return "BIS";
    }
    return "?";
}

/// A registered boundary curve of a cell that was deleted by decree (its
/// interior is gone, its walk survives in the skeleton).
struct RegisteredCurve {
    std::string name;
    Walk walk;
    FaceLabel red = FaceLabel::Unlabeled;
    FaceLabel blue = FaceLabel::Unlabeled;
};

/// 2X2 with its registries. Face set is the full doubled complex; the RED
/// space drops the case II/III/BIS band cells, the BLUE space drops every
/// r-side cell (they are all extended gamma1's).
struct DoubledComplex {
    TwoComplex k;
    SpotSet R1, B1;

    std::map<int, int> r_vertex, b_vertex;   // new-complex vertex -> copies
    std::map<int, int> r_edge, b_edge;       // new-complex edge -> copies
    std::map<int, int> temporal_edge;        // new-complex vertex -> P x [r,b]
    std::map<int, RbCase> case_tag;          // new-complex edge -> band case
    std::map<int, int> rb_face;              // new-complex edge -> band face
    std::set<int> r_side_faces, b_side_faces;
    std::map<int, int> r_face_of, b_face_of; // new-complex face -> copies
    std::vector<RegisteredCurve> deleted_curves; // ext gamma0: old gamma0 walks (r side)
    std::set<int> very_trivial_b;            // b's whose state has no outgoing arrows

    NewComplex base;

    std::set<int> red_space_faces() const {
        std::set<int> out;
        for (const auto& [fid, w] : k.faces) out.insert(fid);
        for (const auto& [e, f] : rb_face) {
            RbCase c = case_tag.at(e);
            if (c == RbCase::II || c == RbCase::III || c == RbCase::Bis) out.erase(f);
        }
        return out;
    }

    std::set<int> blue_space_faces() const {
        std::set<int> out;
        for (const auto& [fid, w] : k.faces) out.insert(fid);
        for (int f : r_side_faces) out.erase(f);
        return out;
    }

    TwoComplex restricted(const std::set<int>& faces) const {
        TwoComplex out;
        out.skeleton = k.skeleton;
        for (int f : faces) {
            out.faces[f] = k.face(f);
            out.labels[f] = k.label(f);
        }
        return out;
    }
};

/// The doubling: two copies of X2[new] joined by the
/// Gamma(infinity) x [r,b] band, with case tags and extended spot families.
inline DoubledComplex build_double(const NewComplex& nc) {
    DoubledComplex d;
    d.base = nc;
    const Graph& g = nc.k.skeleton;

    int next_v = 1;
    for (int v : g.vertices) d.r_vertex[v] = next_v++;
    for (int v : g.vertices) d.b_vertex[v] = next_v++;
    for (const auto& [v, rv] : d.r_vertex) d.k.skeleton.add_vertex(rv);
    for (const auto& [v, bv] : d.b_vertex) d.k.skeleton.add_vertex(bv);

    for (const auto& [eid, e] : g.edges)
        d.r_edge[eid] = d.k.skeleton.add_edge_auto(d.r_vertex.at(e.u), d.r_vertex.at(e.v));
    for (const auto& [eid, e] : g.edges)
        d.b_edge[eid] = d.k.skeleton.add_edge_auto(d.b_vertex.at(e.u), d.b_vertex.at(e.v));
    for (int v : g.vertices)
        d.temporal_edge[v] = d.k.skeleton.add_edge_auto(d.r_vertex.at(v), d.b_vertex.at(v));

    std::set<int> bottom_edges;
    for (const auto& [e, be] : nc.bottom_edge) bottom_edges.insert(be);

    auto copy_walk = [&](const Walk& w, const std::map<int, int>& emap) {
        Walk out;
        for (const auto& s : w) out.push_back(WalkStep{emap.at(s.edge), s.dir});
        return out;
    };

    // r side: X02[new] = X2[new] minus the gamma0 interiors (delta top and old
    // gamma0 faces); their walks are registered curves
    for (const auto& [fid, w] : nc.k.faces) {
        bool gamma0 = nc.red.at(fid) == FaceLabel::Gamma0 || nc.delta_top_faces.count(fid);
        if (gamma0) {
            RegisteredCurve c;
            c.name = "gamma0(new) face " + std::to_string(fid);
            c.walk = copy_walk(w, d.r_edge);
            c.red = FaceLabel::Gamma0;
            c.blue = nc.blue.at(fid);
            d.deleted_curves.push_back(std::move(c));
            continue;
        }
        int rf = d.k.add_face_auto(copy_walk(w, d.r_edge), nc.red.at(fid));
        d.r_side_faces.insert(rf);
        d.r_face_of[fid] = rf;
    }
    // band
    for (const auto& [eid, e] : g.edges) {
        bool in_b0 = nc.B0.contains(eid);
        bool in_r0 = nc.R0.contains(eid);
        RbCase c;
        if (bottom_edges.count(eid)) c = RbCase::Bis;
        else if (in_b0 && in_r0) c = RbCase::II;
        else if (in_b0) c = RbCase::III;
        else if (in_r0) c = RbCase::I;
        else c = RbCase::IV;
        d.case_tag[eid] = c;
        Walk w;
        w.push_back(WalkStep{d.r_edge.at(eid), 1});
        w.push_back(WalkStep{d.temporal_edge.at(e.v), 1});
        w.push_back(WalkStep{d.b_edge.at(eid), -1});
        w.push_back(WalkStep{d.temporal_edge.at(e.u), -1});
        int f = d.k.add_face_auto(w,
                                  (c == RbCase::I || c == RbCase::IV) ? FaceLabel::C : FaceLabel::Gamma0);
        d.rb_face[eid] = f;
        if (c != RbCase::I && c != RbCase::IV) {
            // extended gamma0: the c(b) curve; its interior is absent from the
            // red space (collar-free model, BIS keeps nothing at all)
            RegisteredCurve rc;
            rc.name = std::string("c(b) over edge ") + std::to_string(eid) +
                      (c == RbCase::Bis ? " [BIS]" : "");
            rc.walk = w;
            rc.red = FaceLabel::Gamma0;
            rc.blue = FaceLabel::Eta;
            d.deleted_curves.push_back(std::move(rc));
        }
    }
    // b side: the eta faces of X2[new], transported
    for (int fid : nc.eta_faces()) {
        int bf = d.k.add_face_auto(copy_walk(nc.k.face(fid), d.b_edge), FaceLabel::Eta);
        d.b_side_faces.insert(bf);
        d.b_face_of[fid] = bf;
    }

    // spots: R0 at r; every b-side edge is in both R1 and B1
    d.R1.colour = Colour::Red;
    for (int e : nc.R0.spots) d.R1.spots.insert(d.r_edge.at(e));
    for (const auto& [eid, be] : d.b_edge) d.R1.spots.insert(be);
    d.B1.colour = Colour::Blue;
    for (int e : nc.B0.spots) d.B1.spots.insert(d.r_edge.at(e));
    for (const auto& [eid, be] : d.b_edge) d.B1.spots.insert(be);

    // very trivial b's: the state has no outgoing arrows, i.e. the
    // dual eta face crosses no other b. They sit as isolated diagonal blocks
    // and downstream checks need not dwell on them; the registry records
    // them.
    {
        IntersectionMatrix blue_base;
        for (int f : nc.eta_faces()) {
            blue_base.curves.push_back(f);
            for (int h : nc.B0.spots) {
                std::size_t n = nc.k.multiplicity_in_face(h, f);
                if (n) blue_base.set_entry(f, h, n);
            }
        }
        for (int h : nc.B0.spots) blue_base.handles.push_back(h);
        auto cls = classify(blue_base);
        if (cls.verdict == MatrixClass::Easy)
            for (const auto& [face, b] : cls.pairing) {
                bool off_diag = false;
                for (const auto& [key, n] : blue_base.entries)
                    if (key.first == face && key.second != b && n > 0) off_diag = true;
                if (!off_diag) d.very_trivial_b.insert(b);
            }
    }
    return d;
}

namespace detail {

// Removal schedule for a face family in the classify order of its crossing
// matrix over the given handles, each face removed over its paired handle.
struct OrderedRemoval {
    std::vector<std::pair<int, int>> steps; // (free edge, face)
};

inline OrderedRemoval ordered_removal(const TwoComplex& k, const std::set<int>& face_family,
                                      const std::set<int>& handle_edges, const std::string& what) {
    IntersectionMatrix m;
    for (int f : face_family) {
        m.curves.push_back(f);
        for (int h : handle_edges) {
            std::size_t n = k.multiplicity_in_face(h, f);
            if (n) m.set_entry(f, h, n);
        }
    }
    for (int h : handle_edges) m.handles.push_back(h);
    Classification cls = classify(m);
    if (cls.verdict != MatrixClass::Easy)
        throw structural_error("doubling: " + what + " matrix is not easy id+nilpotent");
    OrderedRemoval out;
    for (auto it = cls.ordering.rbegin(); it != cls.ordering.rend(); ++it)
        out.steps.push_back({cls.pairing.at(*it), *it});
    return out;
}

inline void peel_to(TwoComplex& k, const CellSet& spine, CollapseSchedule& sched) {
    std::vector<FreePair> steps;
    if (!gsckit::detail::collapse_graph_to_spine(k, spine, steps))
        throw structural_error("doubling: 1d peel did not reach the spine");
    for (const auto& s : steps) sched.steps.push_back(s);
}

} // namespace detail

/// The three phases of the RED collapse: demolish X_b2 via the transported blue
/// flow, collapse the (e(r) x b, e(r) x [r,b]) pairs, then the normal red
/// collapse down to Delta2 x (xi0 = -1). Replays every step and checks the
/// spine is reached exactly.
inline CollapseSchedule verify_red_collapse(const DoubledComplex& d) {
    TwoComplex k = d.restricted(d.red_space_faces());
    CollapseSchedule sched;

    // bullet 1: X_b2 via the blue duality transported to the b side
    std::set<int> b_handles;
    for (int e : d.base.B0.spots) b_handles.insert(d.b_edge.at(e));
    auto phase1 = detail::ordered_removal(d.restricted(d.b_side_faces), d.b_side_faces, b_handles,
                                          "transported eta.B");
    for (auto [h, f] : phase1.steps) sched.steps.push_back(FreePair{1, h, f});

    // bullet 2: pairs (e(r) x b, e(r) x [r,b])
    for (const auto& [eid, c] : d.case_tag)
        if (c == RbCase::I || c == RbCase::IV)
            sched.steps.push_back(FreePair{1, d.b_edge.at(eid), d.rb_face.at(eid)});

    // bullet 3: normal red collapse of X02[new] x r onto the bottom delta.
    // Handles are the extended h's: R0 minus the promoted bottom reds.
    std::set<int> red_handles;
    for (int e : d.base.R0.spots) {
        bool promoted_bottom = false;
        for (const auto& [orig, be] : d.base.bottom_edge)
            if (be == e) promoted_bottom = true;
        if (!promoted_bottom) red_handles.insert(d.r_edge.at(e));
    }
    std::set<int> r_movable;
    std::set<int> bottom_faces_r;
    for (int f : d.base.delta_bottom_faces) bottom_faces_r.insert(d.r_face_of.at(f));
    for (int f : d.r_side_faces)
        if (!bottom_faces_r.count(f)) r_movable.insert(f);
    auto phase3 = detail::ordered_removal(d.restricted(r_movable), r_movable, red_handles, "C.h");
    for (auto [h, f] : phase3.steps) sched.steps.push_back(FreePair{1, h, f});

    // spine: Delta2 x (xi0=-1) on the r side
    CellSet spine;
    for (int f : bottom_faces_r) spine.faces.insert(f);
    for (const auto& [e, be] : d.base.bottom_edge) spine.edges.insert(d.r_edge.at(be));
    for (const auto& [v, bv] : d.base.bottom_vertex) spine.vertices.insert(d.r_vertex.at(bv));

    TwoComplex cur = replay_schedule(k, sched);
    detail::peel_to(cur, spine, sched);
    // exactness re-check on a fresh replay
    TwoComplex final = replay_schedule(d.restricted(d.red_space_faces()), sched);
    if (!(CellSet::all_of(final).vertices == spine.vertices &&
          CellSet::all_of(final).edges == spine.edges && CellSet::all_of(final).faces == spine.faces))
        throw structural_error("verify_red_collapse: spine not reached exactly");
    return sched;
}

/// The four BLUE bullets: every r-side cell is an extended gamma1 and is
/// dropped by decree; then (e(b) x r, e(b) x [r,b]) pairs, the transported
/// collapse of X_b2, the (e(r) x b, e(r) x [r,b]) pairs, and a peel to the
/// surviving tree (Gamma(infinity)[new] - B0 on the r side).
inline CollapseSchedule verify_blue_collapse(const DoubledComplex& d) {
    TwoComplex k = d.restricted(d.blue_space_faces());
    CollapseSchedule sched;

    // bullet 2: (e(b) x r, band face) for every b-carrying edge, bottom ones
    // (BIS) included
    for (const auto& [eid, c] : d.case_tag)
        if (c == RbCase::II || c == RbCase::III || c == RbCase::Bis)
            sched.steps.push_back(FreePair{1, d.r_edge.at(eid), d.rb_face.at(eid)});

    // bullet 3: X_b2 by the blue order
    std::set<int> b_handles;
    for (int e : d.base.B0.spots) b_handles.insert(d.b_edge.at(e));
    auto phase3 = detail::ordered_removal(d.restricted(d.b_side_faces), d.b_side_faces, b_handles,
                                          "eta.B on the b side");
    for (auto [h, f] : phase3.steps) sched.steps.push_back(FreePair{1, h, f});

    // bullet 4: (e(r) x b, band face)
    for (const auto& [eid, c] : d.case_tag)
        if (c == RbCase::I || c == RbCase::IV)
            sched.steps.push_back(FreePair{1, d.b_edge.at(eid), d.rb_face.at(eid)});

    // survivor: the Property-P tree of (Gamma[new], B0) on the r side
    CellSet spine;
    for (int v : d.base.k.skeleton.vertices) spine.vertices.insert(d.r_vertex.at(v));
    for (const auto& [eid, e] : d.base.k.skeleton.edges)
        if (!d.base.B0.contains(eid)) spine.edges.insert(d.r_edge.at(eid));

    TwoComplex cur = replay_schedule(k, sched);
    detail::peel_to(cur, spine, sched);
    TwoComplex final = replay_schedule(d.restricted(d.blue_space_faces()), sched);
    if (!(CellSet::all_of(final).vertices == spine.vertices &&
          CellSet::all_of(final).edges == spine.edges && final.faces.empty()))
        throw structural_error("verify_blue_collapse: surviving tree not reached exactly");
    // and it is a tree
    Graph survivor;
    for (int v : spine.vertices) survivor.add_vertex(v);
    for (int e : spine.edges) survivor.add_edge(e, final.skeleton.edge(e).u, final.skeleton.edge(e).v);
    if (!is_tree(survivor)) throw structural_error("verify_blue_collapse: survivor is not a tree");
    return sched;
}

struct PunchlineReport {
    bool gamma_bottom_in_gamma1 = false; // punchline A
    bool arrows_coincide = false;        // punchline B
    bool no_band_face_on_delta = false;  // punchline C
    std::vector<std::string> violations;

    bool all() const { return gamma_bottom_in_gamma1 && arrows_coincide && no_band_face_on_delta; }
};

/// The three punchline checks on the computed schedules.
inline PunchlineReport check_punchlines(const DoubledComplex& d, const CollapseSchedule& red,
                                        const CollapseSchedule& blue) {
    PunchlineReport rep;
    // A: every bottom Gamma face is blue-gamma1 (dropped by the blue decree)
    rep.gamma_bottom_in_gamma1 = true;
    for (int f : d.base.delta_bottom_faces) {
        if (d.base.blue.at(f) != FaceLabel::Gamma1) {
            rep.gamma_bottom_in_gamma1 = false;
            rep.violations.push_back("bottom Gamma face " + std::to_string(f) + " not gamma1");
        }
        if (d.blue_space_faces().count(d.r_face_of.at(f))) {
            rep.gamma_bottom_in_gamma1 = false;
            rep.violations.push_back("bottom Gamma face survives the blue decree");
        }
    }
    // B: faces carrying both a red and a blue arrow use the same free edge
    std::map<int, int> red_arrow, blue_arrow;
    for (const auto& s : red.steps)
        if (s.dim == 1) red_arrow[s.coface] = s.cell;
    for (const auto& s : blue.steps)
        if (s.dim == 1) blue_arrow[s.coface] = s.cell;
    rep.arrows_coincide = true;
    for (const auto& [f, e] : red_arrow) {
        auto it = blue_arrow.find(f);
        if (it != blue_arrow.end() && it->second != e) {
            rep.arrows_coincide = false;
            rep.violations.push_back("face " + std::to_string(f) + " has crossing arrows");
        }
    }
    // C: no band piece of the RED space shares an edge with Delta2 x (-1) x r
    // (the BIS erasure is exactly what guarantees this)
    std::set<int> delta_edges;
    for (const auto& [e, be] : d.base.bottom_edge) delta_edges.insert(d.r_edge.at(be));
    auto red_faces = d.red_space_faces();
    rep.no_band_face_on_delta = true;
    for (const auto& [eid, f] : d.rb_face) {
        if (!red_faces.count(f)) continue;
        for (const auto& s : d.k.face(f))
            if (delta_edges.count(s.edge)) {
                rep.no_band_face_on_delta = false;
                rep.violations.push_back("red-space band face over edge " + std::to_string(eid) +
                                         " touches the bottom delta");
            }
    }
    return rep;
}

/// The two extended matrices of the double: C.h and eta.B1, both expected
/// easy id + nilpotent.
struct DoubleMatrices {
    IntersectionMatrix red;  // extended C x extended h
    IntersectionMatrix blue; // extended eta x B1
};

inline DoubleMatrices double_matrices(const DoubledComplex& d) {
    DoubleMatrices out;
    // extended h = R1 minus the promoted bottom reds at -1 (r side)
    std::set<int> ext_h;
    for (int e : d.R1.spots) ext_h.insert(e);
    for (const auto& [orig, be] : d.base.bottom_edge) ext_h.erase(d.r_edge.at(be));
    // extended C curves: the red space faces minus the Gamma's (the
    // Delta2-handles pair with the promoted reds, not with the h's)
    for (int f : d.red_space_faces()) {
        if (d.k.label(f) == FaceLabel::Gamma) continue;
        out.red.curves.push_back(f);
        for (int h : ext_h) {
            std::size_t n = d.k.multiplicity_in_face(h, f);
            if (n) out.red.set_entry(f, h, n);
        }
    }
    for (int h : ext_h) out.red.handles.push_back(h);

    std::set<int> b1;
    for (int e : d.B1.spots) b1.insert(e);
    for (int f : d.blue_space_faces()) {
        out.blue.curves.push_back(f);
        for (int h : b1) {
            std::size_t n = d.k.multiplicity_in_face(h, f);
            if (n) out.blue.set_entry(f, h, n);
        }
    }
    for (int h : b1) out.blue.handles.push_back(h);
    return out;
}

inline Json double_to_json(const DoubledComplex& d) {
    Json j;
    j["complex"] = complex_to_json(d.k, &d.R1, &d.B1);
    j["caseTags"] = Json::object();
    for (const auto& [e, c] : d.case_tag) j["caseTags"][std::to_string(e)] = to_string(c);
    Json reg;
    reg["deleted"] = Json::array();
    for (const auto& c : d.deleted_curves) {
        Json w = Json::array();
        for (const auto& s : c.walk) w.push_back(s.signed_id());
        reg["deleted"].push_back({{"name", c.name}, {"walk", w}});
    }
    reg["veryTrivial"] = Json::array();
    for (int e : d.very_trivial_b) reg["veryTrivial"].push_back(e);
    reg["rSideFaces"] = Json::array();
    for (int f : d.r_side_faces) reg["rSideFaces"].push_back(f);
    reg["bSideFaces"] = Json::array();
    for (int f : d.b_side_faces) reg["bSideFaces"].push_back(f);
    j["registry"] = reg;
    return j;
}

} // namespace gsckit
