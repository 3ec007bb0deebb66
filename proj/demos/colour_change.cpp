// Demo: run the colour-changing process on a wheel-ish graph and print the
// per-step witnesses.

#include <iostream>

#include "gsckit/colour.hpp"

using namespace gsckit;

int main() {
    Graph g;
    for (int v = 1; v <= 5; ++v) g.add_vertex(v);
    // a 4-cycle with a hub
    g.add_edge(1, 1, 2);
    g.add_edge(2, 2, 3);
    g.add_edge(3, 3, 4);
    g.add_edge(4, 4, 1);
    g.add_edge(5, 1, 5);
    g.add_edge(6, 3, 5);

    SpotSet red{Colour::Red, {1, 6}};
    SpotSet blue{Colour::Blue, {3, 5}};

    auto trace = run_colour_change(g, red, blue);
    std::cout << "steps: " << trace.steps.size() << "\n";
    for (const auto& s : trace.steps) {
        std::cout << "  step " << s.j << ": r" << s.r_spot << " -> b" << s.b_spot << ", witness";
        for (const auto& st : s.cycle) std::cout << " " << st.signed_id();
        std::cout << "\n";
    }
    std::cout << "verified: " << (verify_trace(g, red, blue, trace).ok ? "yes" : "no") << "\n";
    std::cout << graph_to_dot(g, &red, &blue);
    return 0;
}
