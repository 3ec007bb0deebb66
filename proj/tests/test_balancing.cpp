#include <doctest.h>

#include "gsckit/balancing.hpp"
#include "gsckit/generate.hpp"

using namespace gsckit;

namespace {

// Hand-built chi = 1 instance: sub = path 1-2-3 with a blue spot in the
// middle; exterior bridge 1-4-3 carrying one red.
BalancingInstance chi1_instance() {
    BalancingInstance inst;
    Graph g;
    for (int v : {1, 2, 3, 4}) g.add_vertex(v);
    int e12 = g.add_edge_auto(1, 2);
    int e23 = g.add_edge_auto(2, 3);
    int e14 = g.add_edge_auto(1, 4);
    int e43 = g.add_edge_auto(4, 3);
    inst.g = g;
    inst.sub_vertices = {1, 2, 3};
    inst.sub_edges = {e12, e23};
    inst.blue.colour = Colour::Blue;
    inst.blue.spots = {e23};
    inst.red.colour = Colour::Red;
    inst.red.spots = {e43};
    return inst;
}

} // namespace

TEST_CASE("chi counts components minus one") {
    auto inst = chi1_instance();
    CHECK(compute_chi(inst) == 1);

    // sub - B connected: chi = 0
    BalancingInstance flat = inst;
    flat.blue.spots = {};
    flat.red.spots = {};
    // without spots the bridge closes a cycle; remove it to keep Property P
    flat.g.edges.erase(3);
    flat.g.edges.erase(4);
    flat.g.vertices.erase(4);
    CHECK(compute_chi(flat) == 0);
}

TEST_CASE("find_geodetic_arc picks the clean shortest path") {
    auto inst = chi1_instance();
    auto arc = find_geodetic_arc(inst);
    REQUIRE(arc.size() == 2);
    CHECK(arc == std::vector<int>{3, 4}); // 1-4 then 4-3
}

TEST_CASE("find_geodetic_arc refuses chi = 0") {
    auto inst = chi1_instance();
    auto out = balance(inst, id_red_order(inst));
    CHECK_THROWS_AS(find_geodetic_arc(out.balanced), input_error);
}

TEST_CASE("a red-free arc is a structural violation") {
    auto inst = chi1_instance();
    std::vector<int> fake_arc = {3, 4};
    BalancingInstance tampered = inst;
    tampered.red.spots = {2}; // move red inside sub so the arc misses R
    // the tampered instance fails validation before the claim is reached
    CHECK_THROWS(slide_balance_step(tampered, fake_arc, id_red_order(tampered)));
}

TEST_CASE("equal-length arcs break ties lexicographically") {
    // two clean bridges of equal length; the lower edge-id path wins
    BalancingInstance inst;
    Graph g;
    for (int v : {1, 2, 3, 4, 5}) g.add_vertex(v);
    int e12 = g.add_edge_auto(1, 2); // blue
    int e23 = g.add_edge_auto(2, 3); // blue
    int a1 = g.add_edge_auto(1, 4);
    int a2 = g.add_edge_auto(4, 3); // red
    int b1 = g.add_edge_auto(1, 5);
    int b2 = g.add_edge_auto(5, 2); // red
    inst.g = g;
    inst.sub_vertices = {1, 2, 3};
    inst.sub_edges = {e12, e23};
    inst.blue.colour = Colour::Blue;
    inst.blue.spots = {e12, e23};
    inst.red.colour = Colour::Red;
    inst.red.spots = {a2, b2};
    inst.validate();
    REQUIRE(compute_chi(inst) == 2);
    auto arc = find_geodetic_arc(inst);
    CHECK(arc == std::vector<int>{a1, a2});
    auto out = balance(inst, id_red_order(inst));
    CHECK(out.records.size() == 2);
    (void)b1;
}

TEST_CASE("a missing red order is an input error") {
    auto inst = chi1_instance();
    auto arc = find_geodetic_arc(inst);
    std::map<int, int> empty_order;
    CHECK_THROWS_AS(slide_balance_step(inst, arc, empty_order), input_error);
}

TEST_CASE("slide on chi = 1 balances both colours") {
    auto inst = chi1_instance();
    auto arc = find_geodetic_arc(inst);
    auto [next, rec] = slide_balance_step(inst, arc, id_red_order(inst));
    CHECK(compute_chi(next) == 0);
    Graph sub = next.subgraph();
    CHECK(is_tree(delete_spots(sub, next.red_in_sub())));
    CHECK(is_tree(delete_spots(sub, next.blue_in_sub())));
    // mute slide here: the arc carries exactly one red
    CHECK(rec.xs.empty());
    CHECK(!rec.rerouted_edge.has_value());
}

TEST_CASE("slide with passive spots reroutes y") {
    // arc 1-4-5-3 carrying two reds; a blue rescue edge 5-2 keeps the middle
    // segment attached in g - R
    BalancingInstance inst;
    Graph g;
    for (int v : {1, 2, 3, 4, 5}) g.add_vertex(v);
    int e12 = g.add_edge_auto(1, 2);
    int e23 = g.add_edge_auto(2, 3);
    int e14 = g.add_edge_auto(1, 4);
    int e45 = g.add_edge_auto(4, 5);
    int e53 = g.add_edge_auto(5, 3);
    int e52 = g.add_edge_auto(5, 2);
    (void)e14;
    inst.g = g;
    inst.sub_vertices = {1, 2, 3};
    inst.sub_edges = {static_cast<int>(e12), static_cast<int>(e23)};
    inst.blue.colour = Colour::Blue;
    inst.blue.spots = {e23, e52};
    inst.red.colour = Colour::Red;
    inst.red.spots = {e45, e53};
    inst.validate();

    auto arc = find_geodetic_arc(inst);
    REQUIRE(arc.size() == 3);
    auto order = id_red_order(inst);
    auto [next, rec] = slide_balance_step(inst, arc, order);
    CHECK(rec.y == e53); // higher id
    CHECK(rec.xs == std::vector<int>{e45});
    REQUIRE(rec.rerouted_edge.has_value());
    CHECK(next.red.contains(*rec.rerouted_edge));
    CHECK_FALSE(next.g.has_edge(e53));
    CHECK(compute_chi(next) == 0);
    // the passive spot stays ambient, outside the new sub
    CHECK_FALSE(next.sub_edges.count(e45));
}

TEST_CASE("balance runs chi slides and lands on the balance laws") {
    Rng rng(2025);
    for (std::size_t chi = 0; chi <= 3; ++chi) {
        for (int rep = 0; rep < 8; ++rep) {
            auto inst = random_balancing_instance(rng, chi);
            auto out = balance(inst, id_red_order(inst));
            CHECK(out.records.size() == chi);
            Graph sub = out.balanced.subgraph();
            CHECK(is_tree(delete_spots(out.balanced.g, out.balanced.red)));
            CHECK(is_tree(delete_spots(out.balanced.g, out.balanced.blue)));
            CHECK(is_tree(delete_spots(sub, out.balanced.red_in_sub())));
            CHECK(is_tree(delete_spots(sub, out.balanced.blue_in_sub())));
            std::size_t nr = out.balanced.red_in_sub().spots.size();
            std::size_t nb = out.balanced.blue_in_sub().spots.size();
            CHECK(nr == nb);
            CHECK(nr == sub.betti1());
            // slides never touch B
            for (const auto& rec : out.records)
                for (int e : rec.arc) CHECK_FALSE(out.balanced.blue.contains(e));
        }
    }
}

TEST_CASE("promotion report counts the slid handles") {
    Rng rng(7311);
    for (std::size_t chi = 0; chi <= 3; ++chi) {
        auto inst = random_balancing_instance(rng, chi);
        auto out = balance(inst, id_red_order(inst));
        auto rep = promotion_report(inst, out);
        CHECK(rep.promoted.size() == chi);
        CHECK(rep.M == rep.n + chi);
        for (int e : rep.promoted) CHECK(out.balanced.red.contains(e));
        auto j = rep.to_json();
        CHECK(j.at("promoted").size() == chi);
    }
}

TEST_CASE("slide record json") {
    auto inst = chi1_instance();
    auto arc = find_geodetic_arc(inst);
    auto [next, rec] = slide_balance_step(inst, arc, id_red_order(inst));
    auto j = rec.to_json();
    CHECK(j.at("y").get<int>() == rec.y);
    CHECK(j.at("arc").size() == arc.size());
}
