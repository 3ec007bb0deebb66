#pragma once

// Shared doubling toy inputs: a square, two glued squares, and an
// annulus-like Delta2 (with the eta cap its blue structure needs).

#include "gsckit/doubling.hpp"

namespace toys {

struct Toy {
    gsckit::TwoComplex x2;
    std::set<int> delta_faces;
    gsckit::SpotSet R_old, B_old;
};

inline Toy square() {
    using namespace gsckit;
    Toy t;
    for (int v : {1, 2, 3, 4}) t.x2.skeleton.add_vertex(v);
    t.x2.skeleton.add_edge(1, 1, 2);
    t.x2.skeleton.add_edge(2, 2, 3);
    t.x2.skeleton.add_edge(3, 3, 4);
    t.x2.skeleton.add_edge(4, 4, 1);
    t.x2.add_face(1, {WalkStep{1, 1}, WalkStep{2, 1}, WalkStep{3, 1}, WalkStep{4, 1}},
                  FaceLabel::Gamma);
    t.delta_faces = {1};
    t.R_old.colour = Colour::Red;
    t.R_old.spots = {1};
    t.B_old.colour = Colour::Blue;
    t.B_old.spots = {3};
    return t;
}

inline Toy two_squares() {
    using namespace gsckit;
    Toy t;
    for (int v = 1; v <= 6; ++v) t.x2.skeleton.add_vertex(v);
    t.x2.skeleton.add_edge(1, 1, 2);
    t.x2.skeleton.add_edge(2, 2, 3);
    t.x2.skeleton.add_edge(3, 3, 4);
    t.x2.skeleton.add_edge(4, 4, 1);
    t.x2.skeleton.add_edge(5, 2, 5);
    t.x2.skeleton.add_edge(6, 5, 6);
    t.x2.skeleton.add_edge(7, 6, 3);
    t.x2.add_face(1, {WalkStep{1, 1}, WalkStep{2, 1}, WalkStep{3, 1}, WalkStep{4, 1}},
                  FaceLabel::Gamma);
    t.x2.add_face(2, {WalkStep{5, 1}, WalkStep{6, 1}, WalkStep{7, 1}, WalkStep{2, -1}},
                  FaceLabel::Gamma);
    t.delta_faces = {1, 2};
    t.R_old.colour = Colour::Red;
    t.R_old.spots = {1, 5};
    t.B_old.colour = Colour::Blue;
    t.B_old.spots = {3, 6};
    return t;
}

inline Toy annulus() {
    using namespace gsckit;
    Toy t;
    for (int v = 1; v <= 8; ++v) t.x2.skeleton.add_vertex(v);
    int o1 = 1, o2 = 2, o3 = 3, o4 = 4;
    t.x2.skeleton.add_edge(o1, 1, 2);
    t.x2.skeleton.add_edge(o2, 2, 3);
    t.x2.skeleton.add_edge(o3, 3, 4);
    t.x2.skeleton.add_edge(o4, 4, 1);
    int i1 = 5, i2 = 6, i3 = 7, i4 = 8;
    t.x2.skeleton.add_edge(i1, 5, 6);
    t.x2.skeleton.add_edge(i2, 6, 7);
    t.x2.skeleton.add_edge(i3, 7, 8);
    t.x2.skeleton.add_edge(i4, 8, 5);
    int r1 = 9, r2 = 10, r3 = 11, r4 = 12;
    t.x2.skeleton.add_edge(r1, 1, 5);
    t.x2.skeleton.add_edge(r2, 2, 6);
    t.x2.skeleton.add_edge(r3, 3, 7);
    t.x2.skeleton.add_edge(r4, 4, 8);
    auto quad = [&](int a, int rb, int bI, int ra) {
        return Walk{WalkStep{a, 1}, WalkStep{rb, 1}, WalkStep{bI, -1}, WalkStep{ra, -1}};
    };
    t.x2.add_face(1, quad(o1, r2, i1, r1), FaceLabel::Gamma);
    t.x2.add_face(2, quad(o2, r3, i2, r2), FaceLabel::Gamma);
    t.x2.add_face(3, quad(o3, r4, i3, r3), FaceLabel::Gamma);
    t.x2.add_face(4, quad(o4, r1, i4, r4), FaceLabel::Gamma);
    // the hole cycle needs its own eta cell (red-wise a gamma0)
    t.x2.add_face(5, {WalkStep{i1, 1}, WalkStep{i2, 1}, WalkStep{i3, 1}, WalkStep{i4, 1}},
                  FaceLabel::Gamma0);
    t.delta_faces = {1, 2, 3, 4};
    t.R_old.colour = Colour::Red;
    t.R_old.spots = {o1, o2, o3, o4, i1};
    t.B_old.colour = Colour::Blue;
    t.B_old.spots = {o1, i1, i2, i3, i4};
    return t;
}

inline std::vector<Toy> all() { return {square(), two_squares(), annulus()}; }

} // namespace toys
