#include <doctest.h>

#include "gsckit/colour.hpp"
#include "gsckit/generate.hpp"

using namespace gsckit;

namespace {

Graph cycle(int n) {
    Graph g;
    for (int v = 1; v <= n; ++v) g.add_vertex(v);
    for (int v = 1; v <= n; ++v) g.add_edge(v, v, v % n + 1);
    return g;
}

SpotSet spot(Colour c, std::initializer_list<int> ids) {
    SpotSet s;
    s.colour = c;
    s.spots = ids;
    return s;
}

} // namespace

TEST_CASE("one step on C4") {
    Graph g = cycle(4);
    SpotSet R = spot(Colour::Red, {1});
    SpotSet B = spot(Colour::Blue, {3});
    auto trace = run_colour_change(g, R, B);
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.steps[0].r_spot == 1);
    CHECK(trace.steps[0].b_spot == 3);
    // the witness is the whole 4-cycle
    CHECK(trace.steps[0].cycle.size() == 4);
    CHECK(trace.phi.at(1) == 3);
    CHECK(verify_trace(g, R, B, trace).ok);
}

TEST_CASE("R equals B gives the empty trace") {
    Graph g = cycle(4);
    SpotSet R = spot(Colour::Red, {2});
    SpotSet B = spot(Colour::Blue, {2});
    auto trace = run_colour_change(g, R, B);
    CHECK(trace.steps.empty());
    CHECK(trace.phi.at(2) == 2);
    CHECK(verify_trace(g, R, B, trace).ok);
}

TEST_CASE("theta graph with a shared spot") {
    Graph g;
    g.add_vertex(1);
    g.add_vertex(2);
    g.add_edge(1, 1, 2);
    g.add_edge(2, 1, 2);
    g.add_edge(3, 1, 2);
    SpotSet R = spot(Colour::Red, {1, 2});
    SpotSet B = spot(Colour::Blue, {2, 3});
    auto trace = run_colour_change(g, R, B);
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.steps[0].r_spot == 1);
    CHECK(trace.steps[0].b_spot == 3);
    CHECK(trace.steps[0].cycle.size() == 2); // e1 . e3
    CHECK(trace.phi.at(2) == 2);             // mute on the intersection
    CHECK(verify_trace(g, R, B, trace).ok);
}

TEST_CASE("a finished state refuses further steps") {
    Graph g = cycle(4);
    ColourChangeState s;
    s.g = g;
    s.r_current = spot(Colour::Red, {2});
    s.b = spot(Colour::Blue, {2});
    CHECK_THROWS_AS(colour_change_step(s), input_error);
}

TEST_CASE("precondition failures are input errors") {
    Graph g = cycle(4);
    CHECK_THROWS_AS(run_colour_change(g, spot(Colour::Red, {}), spot(Colour::Blue, {1})),
                    input_error);
}

TEST_CASE("witness tampering is caught") {
    Graph g = cycle(4);
    SpotSet R = spot(Colour::Red, {1});
    SpotSet B = spot(Colour::Blue, {3});
    auto trace = run_colour_change(g, R, B);

    // swap the recorded spots: r lands outside R, b outside B
    auto bad = trace;
    bad.steps[0].r_spot = 3;
    bad.steps[0].b_spot = 1;
    CHECK_FALSE(verify_trace(g, R, B, bad).ok);

    auto bad2 = trace;
    bad2.steps[0].cycle.clear();
    bad2.steps[0].cycle.push_back(WalkStep{1, 1});
    CHECK_FALSE(verify_trace(g, R, B, bad2).ok);
}

TEST_CASE("witness crossing a third spot is rejected") {
    // C4 plus the diagonal (1,3): betti 2, two spots per colour
    Graph g = cycle(4);
    g.add_edge(5, 1, 3);
    SpotSet R = spot(Colour::Red, {1, 3});
    SpotSet B = spot(Colour::Blue, {2, 4});
    auto trace = run_colour_change(g, R, B);
    REQUIRE(verify_trace(g, R, B, trace).ok);
    REQUIRE(trace.steps.size() == 2);
    REQUIRE(trace.steps[0].r_spot == 1);
    REQUIRE(trace.steps[0].b_spot == 2);
    // tamper: the outer square crosses r(1) and b(1) once each but also the
    // other red spot
    auto bad = trace;
    Walk square;
    for (int e = 1; e <= 4; ++e) square.push_back(WalkStep{e, 1});
    bad.steps[0].cycle = square;
    auto verdict = verify_trace(g, R, B, bad);
    CHECK_FALSE(verdict.ok);
    CHECK(verdict.failed_step == 1);
}

TEST_CASE("a 2-step trace that breaks when reordered exists") {
    // search small instances for a trace whose swap fails verification
    Rng rng(99);
    bool found = false;
    for (int trial = 0; trial < 400 && !found; ++trial) {
        auto inst = random_property_p_pair(rng, 6);
        ColourChangeTrace trace;
        try {
            trace = run_colour_change(inst.g, inst.red, inst.blue);
        } catch (const std::exception&) {
            continue;
        }
        if (trace.steps.size() != 2) continue;
        auto swapped = trace;
        std::swap(swapped.steps[0], swapped.steps[1]);
        std::swap(swapped.steps[0].j, swapped.steps[1].j);
        if (!verify_trace(inst.g, inst.red, inst.blue, swapped).ok) found = true;
    }
    CHECK(found);
}

TEST_CASE("random graphs terminate with R = B, all checks green") {
    Rng rng(123);
    for (int trial = 0; trial < 120; ++trial) {
        auto inst = random_property_p_pair(rng, 12);
        auto trace = run_colour_change(inst.g, inst.red, inst.blue);
        std::set<int> rminusb;
        for (int e : inst.red.spots)
            if (!inst.blue.contains(e)) rminusb.insert(e);
        CHECK(trace.steps.size() == rminusb.size());
        CHECK(verify_trace(inst.g, inst.red, inst.blue, trace).ok);
        // phi bijective, id on R∩B
        std::set<int> image;
        for (const auto& [r, b] : trace.phi) {
            CHECK(inst.red.contains(r));
            CHECK(inst.blue.contains(b));
            image.insert(b);
            if (inst.blue.contains(r) && inst.red.contains(r)) CHECK(r == b);
        }
        CHECK(image.size() == inst.blue.spots.size());
    }
}

TEST_CASE("choice independence: random admissible b choices still finish") {
    Rng rng(321);
    for (int trial = 0; trial < 60; ++trial) {
        auto inst = random_property_p_pair(rng, 10);
        auto chooser = [&rng](const ColourChangeState& s) -> std::optional<int> {
            std::vector<int> remaining;
            for (int be : s.b.spots)
                if (!s.r_current.contains(be)) remaining.push_back(be);
            if (remaining.empty()) return std::nullopt;
            return remaining[rng.below(remaining.size())];
        };
        auto trace = run_colour_change(inst.g, inst.red, inst.blue, chooser);
        CHECK(verify_trace(inst.g, inst.red, inst.blue, trace).ok);
    }
}

TEST_CASE("trace json round trip") {
    Graph g = cycle(4);
    SpotSet R = spot(Colour::Red, {1});
    SpotSet B = spot(Colour::Blue, {3});
    auto trace = run_colour_change(g, R, B);
    auto j = trace.to_json();
    auto t2 = ColourChangeTrace::from_json(j);
    CHECK(verify_trace(g, R, B, t2).ok);
    CHECK(t2.to_json() == j);
}
