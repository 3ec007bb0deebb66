// Acceptance suite: every criterion runs at its stated size and tolerance and
// prints one pass/fail line. The whole suite is wired into ctest.

#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gsckit/graph.hpp"
#include "gsckit/complex2.hpp"
#include "gsckit/flowmatrix.hpp"
#include "gsckit/colour.hpp"
#include "gsckit/balancing.hpp"
#include "gsckit/gps.hpp"
#include "gsckit/doubling.hpp"
#include "gsckit/lava.hpp"
#include "gsckit/generate.hpp"

#include "toys.hpp"

using namespace gsckit;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void verdict(int n, const char* what, bool ok, double secs, double budget) {
    std::printf("[%s] criterion %d: %s (%.2fs, budget %.0fs)\n", ok ? "PASS" : "FAIL", n, what,
                secs, budget);
    std::fflush(stdout);
}

} // namespace

TEST_CASE("criterion 1: colour-change soundness, 500 seeded graphs") {
    Timer t;
    Rng rng(101);
    bool ok = true;
    for (int i = 0; i < 500 && ok; ++i) {
        auto inst = random_property_p_pair(rng, 12);
        ColourChangeTrace trace;
        try {
            trace = run_colour_change(inst.g, inst.red, inst.blue);
        } catch (const std::exception&) {
            ok = false;
            break;
        }
        // every intermediate R(j) gets the brute-force tree check in the
        // replay, and the final set must be B
        auto v = verify_trace(inst.g, inst.red, inst.blue, trace);
        if (!v.ok) ok = false;
        SpotSet r = inst.red;
        for (const auto& s : trace.steps) {
            r.spots.erase(s.r_spot);
            r.spots.insert(s.b_spot);
            if (!is_tree(delete_spots(inst.g, r))) ok = false;
        }
        if (r.spots != inst.blue.spots) ok = false;
    }
    bool in_time = t.seconds() < 30.0;
    verdict(1, "colour-change soundness", ok && in_time, t.seconds(), 30);
    CHECK(ok);
    CHECK(in_time);
}

TEST_CASE("criterion 2: witness law, independent recount") {
    Timer t;
    Rng rng(202);
    bool ok = true;
    auto crossings = [](const Walk& w, int edge) {
        std::size_t n = 0;
        for (const auto& s : w)
            if (s.edge == edge) ++n;
        return n;
    };
    for (int i = 0; i < 300 && ok; ++i) {
        auto inst = random_property_p_pair(rng, 12);
        auto trace = run_colour_change(inst.g, inst.red, inst.blue);
        SpotSet r = inst.red;
        for (const auto& cell : trace.steps) {
            if (crossings(cell.cycle, cell.r_spot) != 1) ok = false;
            if (crossings(cell.cycle, cell.b_spot) != 1) ok = false;
            for (int other : r.spots)
                if (other != cell.r_spot && crossings(cell.cycle, other) != 0) ok = false;
            r.spots.erase(cell.r_spot);
            r.spots.insert(cell.b_spot);
        }
    }
    verdict(2, "witness crossing counts, recounted independently", ok, t.seconds(), 30);
    CHECK(ok);
}

TEST_CASE("criterion 3: balancing, 200 seeded instances") {
    Timer t;
    Rng rng(303);
    bool ok = true;
    for (int i = 0; i < 200 && ok; ++i) {
        std::size_t chi = i % 4;
        BalancingInstance inst;
        try {
            inst = random_balancing_instance(rng, chi);
        } catch (const std::exception&) {
            ok = false;
            break;
        }
        if (compute_chi(inst) != chi) { ok = false; break; }
        BalanceOutcome out;
        try {
            out = balance(inst, id_red_order(inst));
        } catch (const std::exception&) {
            ok = false;
            break;
        }
        if (out.records.size() != chi) ok = false;
        Graph sub = out.balanced.subgraph();
        if (!is_tree(delete_spots(out.balanced.g, out.balanced.red))) ok = false;
        if (!is_tree(delete_spots(out.balanced.g, out.balanced.blue))) ok = false;
        if (!is_tree(delete_spots(sub, out.balanced.red_in_sub()))) ok = false;
        if (!is_tree(delete_spots(sub, out.balanced.blue_in_sub()))) ok = false;
        std::size_t nr = out.balanced.red_in_sub().spots.size();
        std::size_t nb = out.balanced.blue_in_sub().spots.size();
        if (nr != nb || nr != sub.betti1()) ok = false;
    }
    bool in_time = t.seconds() < 30.0;
    verdict(3, "balancing slides and the final balance laws", ok && in_time, t.seconds(), 30);
    CHECK(ok);
    CHECK(in_time);
}

TEST_CASE("criterion 4: GSC oracle equivalence") {
    Timer t;
    bool ok = true;
    std::size_t cases = 0;
    // exhaustive paired corpus up to 6 faces
    for (std::size_t n = 1; n <= 6 && ok; ++n) {
        std::size_t budget = n <= 3 ? 3 : 2;
        for (const auto& xi : enumerate_xi_matrices(n, budget)) {
            auto pc = make_paired_complex(xi);
            auto cert = gsc_certificate(pc.k, pc.spots);
            auto res = collapse_to_spine(pc.k, pc.spine);
            if (res.status == CollapseStatus::BoundExceeded) { ok = false; break; }
            if (cert.gsc != res.found()) { ok = false; break; }
            ++cases;
        }
    }
    // plus 100 random 7-8 face cases
    Rng rng(404);
    for (int i = 0; i < 100 && ok; ++i) {
        std::size_t n = 7 + rng.below(2);
        auto pc = make_paired_complex(random_xi_matrix(rng, n));
        auto cert = gsc_certificate(pc.k, pc.spots);
        auto res = collapse_to_spine(pc.k, pc.spine);
        if (res.status == CollapseStatus::BoundExceeded || cert.gsc != res.found()) ok = false;
        ++cases;
    }
    bool in_time = t.seconds() < 120.0;
    std::printf("        (%zu corpus cases)\n", cases);
    verdict(4, "gsc_certificate == collapse_to_spine", ok && in_time, t.seconds(), 120);
    CHECK(ok);
    CHECK(in_time);
}

TEST_CASE("criterion 5: classifier sanity") {
    Timer t;
    bool ok = true;
    auto wh = whitehead_type_matrix(5);
    auto cls = classify(wh);
    if (cls.verdict == MatrixClass::Easy) ok = false;
    // cyclic matrices report NON_COMMUTATIVE with a verifiable cycle
    IntersectionMatrix cyc;
    for (int i = 1; i <= 2; ++i) {
        cyc.curves.push_back(i);
        cyc.handles.push_back(100 + i);
    }
    cyc.set_entry(1, 101, 1);
    cyc.set_entry(1, 102, 1);
    cyc.set_entry(2, 101, 1);
    cyc.set_entry(2, 102, 1);
    auto rep = detect_degenerate(cyc);
    if (rep.ok || rep.cycle.size() < 3 || rep.cycle.front() != rep.cycle.back()) ok = false;
    auto wh_rep = detect_degenerate(wh);
    if (wh_rep.ok) ok = false;
    // the cycle witness is checkable against the entries
    if (!wh_rep.ok) {
        auto pairing = wh.pairing;
        for (std::size_t i = 0; i + 1 < wh_rep.cycle.size(); ++i)
            if (wh.entry(wh_rep.cycle[i], pairing.at(wh_rep.cycle[i + 1])) == 0) ok = false;
    }
    verdict(5, "whitehead-type refused; cycles witnessed", ok, t.seconds(), 5);
    CHECK(ok);
}

TEST_CASE("criterion 6: GPS validity") {
    Timer t;
    bool ok = true;
    const std::array<int, 6> box = {0, 6, 0, 6, 0, 6};
    auto g3 = build_gps3(box, Rat(1, 8));
    auto rep3 = verify_definition5(g3);
    if (!rep3.all()) ok = false;
    auto g4 = build_gps4(box, {Rat(0), Rat(1), Rat(2), Rat(3), Rat(4)}, Rat(1, 8));
    auto rep4 = verify_definition5(g4);
    if (!rep4.all()) ok = false;
    // blue flow: replayable schedule reaching the barrier spine
    for (const GpsComplex* g : {&g3, &g4}) {
        auto flow = blue_flow(*g, g->bounds);
        TwoComplex k = g->k;
        for (int fid : flow.gamma1_faces) {
            k.faces.erase(fid);
            k.labels.erase(fid);
        }
        try {
            replay_schedule_inplace(k, flow.schedule);
        } catch (const std::exception&) {
            ok = false;
            break;
        }
        if (k.skeleton.vertices != flow.spine.vertices) ok = false;
        std::set<int> eids;
        for (const auto& [id, e] : k.skeleton.edges) eids.insert(id);
        if (eids != flow.spine.edges) ok = false;
    }
    // ideal eps = 0 fails the genericity check
    auto gid = build_gps3(box, Rat(0));
    auto repid = verify_definition5(gid);
    if (repid.b) ok = false;
    bool in_time = t.seconds() < 10.0;
    verdict(6, "structure checks a)-f), blue flow, ideal refusal", ok && in_time, t.seconds(), 10);
    CHECK(ok);
    CHECK(in_time);
}

TEST_CASE("criterion 7: doubling dual collapses on three toys") {
    Timer t;
    bool ok = true;
    for (const auto& toy : toys::all()) {
        try {
            auto nc = build_new(toy.x2, toy.delta_faces, toy.R_old, toy.B_old);
            auto d = build_double(nc);
            auto red = verify_red_collapse(d);   // throws unless the bottom delta is reached exactly
            auto blue = verify_blue_collapse(d); // throws unless a tree survives
            auto rep = check_punchlines(d, red, blue);
            if (!rep.all()) ok = false;
            auto mats = double_matrices(d);
            if (classify(mats.red).verdict != MatrixClass::Easy) ok = false;
            if (classify(mats.blue).verdict != MatrixClass::Easy) ok = false;
        } catch (const std::exception&) {
            ok = false;
        }
    }
    bool in_time = t.seconds() < 10.0;
    verdict(7, "red to Delta2x(-1), blue to a tree, punchlines, easy matrices", ok && in_time,
            t.seconds(), 10);
    CHECK(ok);
    CHECK(in_time);
}

TEST_CASE("criterion 8: homology conservation over a 1000-step fuzz run") {
    Timer t;
    Rng rng(808);
    bool ok = true;
    std::size_t steps = 0;
    while (steps < 1000 && ok) {
        TwoComplex k = random_complex(rng, 7, 4);
        auto betti = gf2_homology_ranks(k);
        for (int moves = 0; moves < 30 && ok; ++moves) {
            bool bisect = rng.chance(1, 3) && !k.faces.empty();
            if (bisect) {
                std::vector<int> fids;
                for (const auto& [fid, w] : k.faces) fids.push_back(fid);
                int fid = fids[rng.below(fids.size())];
                std::size_t len = k.face(fid).size();
                if (len < 2) continue;
                ChordPos a{rng.below(len), rng.chance(1, 2)};
                ChordPos b{rng.below(len), rng.chance(1, 2)};
                try {
                    k = bisect_face(k, fid, a, b);
                } catch (const input_error&) {
                    continue; // coincident chord ends
                }
            } else {
                auto fp = free_faces(k);
                if (fp.empty()) break;
                k = elementary_collapse(k, fp[rng.below(fp.size())]);
            }
            ++steps;
            if (!(gf2_homology_ranks(k) == betti)) ok = false;
        }
    }
    std::printf("        (%zu steps)\n", steps);
    verdict(8, "GF(2) betti numbers invariant under collapse and bisection", ok, t.seconds(), 60);
    CHECK(ok);
    CHECK(steps >= 1000);
}

TEST_CASE("criterion 9: lamination combinatorics at depths 1-6") {
    Timer t;
    Rng rng(909);
    bool ok = true;
    for (int trial = 0; trial < 20 && ok; ++trial) {
        auto m = random_easy_matrix(rng, 2 + rng.below(6));
        auto sg = build_state_graph(m);
        for (int state : sg.states) {
            std::vector<std::vector<Interval>> fams;
            for (std::size_t d = 1; d <= 6; ++d) fams.push_back(transversal_intervals(sg, state, d));
            for (const auto& fam : fams)
                for (std::size_t i = 0; i < fam.size(); ++i)
                    for (std::size_t j = i + 1; j < fam.size(); ++j)
                        if (!(fam[i].disjoint(fam[j]) || fam[i].contains(fam[j]) ||
                              fam[j].contains(fam[i])))
                            ok = false;
            for (std::size_t d = 1; d < fams.size(); ++d)
                for (const auto& deep : fams[d]) {
                    bool inside = false;
                    for (const auto& sh : fams[d - 1])
                        if (sh.contains(deep)) {
                            inside = true;
                            if (!(deep.length() < sh.length())) ok = false;
                        }
                    if (!inside) ok = false;
                }
            // weight law
            TrainTrack::Point probe{state, sg.interval_length.at(state) * Rat(7, 13)};
            auto w = weight_of(sg, probe);
            for (std::size_t i = 0; i < w.occurrences.size(); ++i)
                if (w.out_degree(static_cast<int>(i)) > 1) ok = false;
        }
    }
    bool in_time = t.seconds() < 10.0;
    verdict(9, "laminar, refining, shrinking; weights have one exit", ok && in_time, t.seconds(),
            10);
    CHECK(ok);
    CHECK(in_time);
}
