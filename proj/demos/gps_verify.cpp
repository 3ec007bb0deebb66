// Demo: build the standard GPS structure on a small box, run the structure
// checks, and run the blue collapsing flow down to the barrier frame.

#include <iostream>

#include "gsckit/gps.hpp"

using namespace gsckit;

int main() {
    auto g = build_gps3({0, 4, 0, 4, 0, 4}, Rat(1, 8));
    std::cout << "cells: " << g.coords.size() << " vertices, " << g.k.skeleton.edges.size()
              << " edges, " << g.k.faces.size() << " faces\n";
    auto rep = verify_definition5(g);
    std::cout << "checks: a=" << rep.a << " b=" << rep.b << " c=" << rep.c << " d=" << rep.d
              << " e=" << rep.e << " f=" << rep.f << "\n";
    auto flow = blue_flow(g, g.bounds);
    std::cout << "blue flow schedule: " << flow.schedule.steps.size() << " steps down to a frame of "
              << flow.spine.edges.size() << " edges\n";
    return 0;
}
