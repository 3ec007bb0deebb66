#pragma once

#include <cstdint>
#include <vector>
#include <set>
#include <map>
#include <algorithm>
#include <numeric>

#include "gsckit/graph.hpp"
#include "gsckit/complex2.hpp"
#include "gsckit/flowmatrix.hpp"
#include "gsckit/balancing.hpp"

namespace gsckit {

/// splitmix64; the single source of randomness for every fuzz suite, so a
/// seed reproduces a run byte-for-byte.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n).
    std::size_t below(std::size_t n) { return n == 0 ? 0 : next() % n; }

    int range(int lo, int hi) { // inclusive
        return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1)));
    }

    bool chance(int num, int den) { return below(static_cast<std::size_t>(den)) < static_cast<std::size_t>(num); }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

    template <class T>
    const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

private:
    std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Graphs with Property-P pairs

struct PropertyPPair {
    Graph g;
    SpotSet red;
    SpotSet blue;
};

/// Random connected loop-free multigraph plus a spanning-tree complement for
/// each colour; both spot sets have Property P by construction.
inline PropertyPPair random_property_p_pair(Rng& rng, int max_vertices) {
    int n = rng.range(2, max_vertices);
    Graph g;
    for (int v = 1; v <= n; ++v) g.add_vertex(v);
    for (int v = 2; v <= n; ++v) g.add_edge_auto(rng.range(1, v - 1), v); // random tree
    int extra = rng.range(1, 4);
    for (int i = 0; i < extra; ++i) {
        int u = rng.range(1, n), v = rng.range(1, n);
        if (u == v) { v = u % n + 1; }
        g.add_edge_auto(u, v);
    }

    auto spanning_complement = [&](Colour c) {
        std::vector<int> ids;
        for (const auto& [id, e] : g.edges) ids.push_back(id);
        rng.shuffle(ids);
        std::map<int, int> dsu;
        for (int v : g.vertices) dsu[v] = v;
        auto find = [&](auto&& self, int x) -> int {
            return dsu[x] == x ? x : dsu[x] = self(self, dsu[x]);
        };
        SpotSet s;
        s.colour = c;
        for (int id : ids) {
            const auto& e = g.edge(id);
            int a = find(find, e.u), b = find(find, e.v);
            if (a == b) s.spots.insert(id);
            else dsu[a] = b;
        }
        return s;
    };
    PropertyPPair out;
    out.red = spanning_complement(Colour::Red);
    out.blue = spanning_complement(Colour::Blue);
    out.g = std::move(g);
    return out;
}

// ---------------------------------------------------------------------------
// Random 2-complexes for homology/collapse fuzz

/// Random complex: random connected graph plus faces glued along random
/// closed walks.
inline TwoComplex random_complex(Rng& rng, int max_vertices, int max_faces) {
    int n = rng.range(3, max_vertices);
    TwoComplex k;
    for (int v = 1; v <= n; ++v) k.skeleton.add_vertex(v);
    for (int v = 2; v <= n; ++v) k.skeleton.add_edge_auto(rng.range(1, v - 1), v);
    int extra = rng.range(1, 5);
    for (int i = 0; i < extra; ++i)
        k.skeleton.add_edge_auto(rng.range(1, n), rng.range(1, n));

    std::map<int, std::vector<std::pair<int, int>>> adj; // v -> (edge, other end)
    for (const auto& [id, e] : k.skeleton.edges) {
        adj[e.u].push_back({id, e.v});
        if (e.u != e.v) adj[e.v].push_back({id, e.u});
    }
    int faces = rng.range(0, max_faces);
    for (int f = 0; f < faces; ++f) {
        int start = rng.range(1, n);
        Walk w;
        int at = start;
        for (int len = 0; len < 24; ++len) {
            const auto& [eid, to] = adj[at][rng.below(adj[at].size())];
            const auto& e = k.skeleton.edge(eid);
            w.push_back(WalkStep{eid, e.u == at && e.v == to ? 1 : (e.v == at && e.u == to ? -1 : 1)});
            at = to;
            if (at == start && w.size() >= 2 && rng.chance(1, 2)) break;
        }
        if (at == start && !w.empty()) k.add_face_auto(w);
    }
    return k;
}

// ---------------------------------------------------------------------------
// Paired spot complexes (the GSC oracle-equivalence corpus)

/// A complex over a star skeleton: spot edge e_j parallel to tree edge t_j,
/// face f_j running once over its own fundamental cycle and xi[j][p] extra
/// times over cycle p. Diagonal crossings are 1 by construction.
struct PairedComplex {
    TwoComplex k;
    SpotSet spots;
    CellSet spine; // the star tree
};

inline PairedComplex make_paired_complex(const std::vector<std::vector<std::size_t>>& xi) {
    std::size_t n = xi.size();
    PairedComplex out;
    TwoComplex& k = out.k;
    k.skeleton.add_vertex(0);
    std::vector<int> tree_edge(n + 1), spot_edge(n + 1);
    for (std::size_t j = 1; j <= n; ++j) {
        k.skeleton.add_vertex(static_cast<int>(j));
        tree_edge[j] = k.skeleton.add_edge_auto(0, static_cast<int>(j));
        spot_edge[j] = k.skeleton.add_edge_auto(0, static_cast<int>(j));
        out.spots.spots.insert(spot_edge[j]);
    }
    out.spots.colour = Colour::Red;
    auto cycle = [&](std::size_t j, Walk& w) {
        w.push_back(WalkStep{spot_edge[j], 1});
        w.push_back(WalkStep{tree_edge[j], -1});
    };
    for (std::size_t j = 1; j <= n; ++j) {
        Walk w;
        cycle(j, w);
        for (std::size_t p = 1; p <= n; ++p)
            for (std::size_t c = 0; c < xi[j - 1][p - 1]; ++c)
                if (p != j) cycle(p, w);
        k.add_face_auto(std::move(w), FaceLabel::C);
    }
    out.spine.vertices = k.skeleton.vertices;
    for (std::size_t j = 1; j <= n; ++j) out.spine.edges.insert(tree_edge[j]);
    return out;
}

/// Exhaustive xi matrices: off-diagonal entries in {0, 1, 2} with at most
/// `budget` nonzero off-diagonal cells.
inline std::vector<std::vector<std::vector<std::size_t>>>
enumerate_xi_matrices(std::size_t n, std::size_t budget) {
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t p = 0; p < n; ++p)
            if (j != p) cells.push_back({j, p});
    std::vector<std::vector<std::vector<std::size_t>>> out;
    std::vector<std::vector<std::size_t>> xi(n, std::vector<std::size_t>(n, 0));
    auto rec = [&](auto&& self, std::size_t i, std::size_t used) -> void {
        if (i == cells.size()) {
            out.push_back(xi);
            return;
        }
        auto [j, p] = cells[i];
        for (std::size_t v = 0; v <= 2; ++v) {
            if (v > 0 && used == budget) break;
            xi[j][p] = v;
            self(self, i + 1, used + (v > 0 ? 1 : 0));
        }
        xi[j][p] = 0;
    };
    rec(rec, 0, 0);
    return out;
}

inline std::vector<std::vector<std::size_t>> random_xi_matrix(Rng& rng, std::size_t n) {
    std::vector<std::vector<std::size_t>> xi(n, std::vector<std::size_t>(n, 0));
    int nonzero = rng.range(1, static_cast<int>(n));
    for (int i = 0; i < nonzero; ++i) {
        std::size_t j = rng.below(n), p = rng.below(n);
        if (j != p) xi[j][p] = static_cast<std::size_t>(rng.range(1, 2));
    }
    return xi;
}

// ---------------------------------------------------------------------------
// Balancing instances

/// Builds an instance with the requested chi: a base tree sub with red
/// extras, blue spots splitting sub - B into chi+1 components, and chi
/// exterior bridge paths each carrying one red spot.
inline BalancingInstance random_balancing_instance(Rng& rng, std::size_t chi) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        int m = rng.range(static_cast<int>(chi) + 2, static_cast<int>(chi) + 5);
        Graph g;
        BalancingInstance inst;
        for (int v = 1; v <= m; ++v) {
            g.add_vertex(v);
            inst.sub_vertices.insert(v);
        }
        std::vector<int> tree_edges;
        for (int v = 2; v <= m; ++v) tree_edges.push_back(g.add_edge_auto(rng.range(1, v - 1), v));
        for (int e : tree_edges) inst.sub_edges.insert(e);

        // red extras inside sub (each closes a cycle; a companion blue goes on
        // a tree edge of its fundamental cycle to keep sub - B a forest)
        int nr = rng.range(0, 2);
        std::set<int> blue, red;
        bool ok = true;
        for (int i = 0; i < nr && ok; ++i) {
            int u = rng.range(1, m), v = rng.range(1, m);
            if (u == v) v = u % m + 1;
            Graph tree_only;
            for (int x : g.vertices) tree_only.add_vertex(x);
            for (int e : tree_edges) tree_only.add_edge(e, g.edge(e).u, g.edge(e).v);
            auto fc = tree_only.tree_path(u, v);
            int extra = g.add_edge_auto(u, v);
            inst.sub_edges.insert(extra);
            red.insert(extra);
            std::vector<int> candidates;
            for (int e : fc)
                if (!blue.count(e)) candidates.push_back(e);
            if (candidates.empty()) { ok = false; break; }
            blue.insert(candidates[rng.below(candidates.size())]);
        }
        if (!ok) continue;
        // chi extra blues on tree edges
        {
            std::vector<int> candidates;
            for (int e : tree_edges)
                if (!blue.count(e)) candidates.push_back(e);
            if (candidates.size() < chi) continue;
            rng.shuffle(candidates);
            for (std::size_t i = 0; i < chi; ++i) blue.insert(candidates[i]);
        }
        inst.red.colour = Colour::Red;
        inst.red.spots = red;
        inst.blue.colour = Colour::Blue;
        inst.blue.spots = blue;
        inst.g = g;

        // sub - B components; bail if the counts came out wrong (red extras
        // can merge cycles)
        {
            Graph subcut = delete_spots(inst.subgraph(), inst.blue_in_sub());
            if (subcut.components().size() != chi + 1) continue;
            if (!is_property_p(inst.subgraph(), inst.red_in_sub())) continue;
        }

        // chi exterior bridge paths joining distinct components, one red each
        Graph subcut = delete_spots(inst.subgraph(), inst.blue_in_sub());
        auto comps = subcut.components();
        int next_v = m + 1;
        for (std::size_t i = 0; i + 1 < comps.size(); ++i) {
            int a = *comps[i].begin();
            int b = *comps[i + 1].begin();
            int len = rng.range(2, 3);
            int prev = a;
            std::vector<int> path_edges;
            for (int s = 1; s < len; ++s) {
                inst.g.add_vertex(next_v);
                path_edges.push_back(inst.g.add_edge_auto(prev, next_v));
                prev = next_v++;
            }
            path_edges.push_back(inst.g.add_edge_auto(prev, b));
            inst.red.spots.insert(path_edges[rng.below(path_edges.size())]);
        }
        // optional hanging exterior decoration
        int deco = rng.range(0, 2);
        for (int i = 0; i < deco; ++i) {
            inst.g.add_vertex(next_v);
            inst.g.add_edge_auto(rng.range(1, m), next_v);
            ++next_v;
        }
        try {
            inst.validate();
            if (compute_chi(inst) != chi) continue;
        } catch (const std::exception&) {
            continue;
        }
        return inst;
    }
    throw structural_error("random_balancing_instance: generation failed");
}

/// Edge-id order as the RED order (the h-indexing).
inline std::map<int, int> id_red_order(const BalancingInstance& inst) {
    std::map<int, int> out;
    int rank = 0;
    for (int e : inst.red.spots) out[e] = ++rank;
    return out;
}

// ---------------------------------------------------------------------------
// EASY matrices for lava

inline IntersectionMatrix random_easy_matrix(Rng& rng, std::size_t n, std::size_t max_mult = 2) {
    IntersectionMatrix m;
    for (std::size_t i = 1; i <= n; ++i) {
        m.curves.push_back(static_cast<int>(i));
        m.handles.push_back(static_cast<int>(100 + i));
        m.set_entry(static_cast<int>(i), static_cast<int>(100 + i), 1);
        m.pairing[static_cast<int>(i)] = static_cast<int>(100 + i);
    }
    // strictly lower-triangular extras: curve j crosses handles of smaller
    // states only
    for (std::size_t j = 2; j <= n; ++j)
        for (std::size_t p = 1; p < j; ++p)
            if (rng.chance(2, 5))
                m.set_entry(static_cast<int>(j), static_cast<int>(100 + p),
                            static_cast<std::size_t>(rng.range(1, static_cast<int>(max_mult))));
    return m;
}

/// The folded Whitehead-type truncation: each curve crosses its own handle
/// once and the next handle twice, cyclically. Refused by classify; the
/// collapse oracle agrees.
inline IntersectionMatrix whitehead_type_matrix(std::size_t n) {
    IntersectionMatrix m;
    for (std::size_t i = 1; i <= n; ++i) {
        m.curves.push_back(static_cast<int>(i));
        m.handles.push_back(static_cast<int>(100 + i));
        m.set_entry(static_cast<int>(i), static_cast<int>(100 + i), 1);
        m.pairing[static_cast<int>(i)] = static_cast<int>(100 + i);
    }
    for (std::size_t i = 1; i <= n; ++i) {
        std::size_t nxt = i % n + 1;
        m.set_entry(static_cast<int>(i), static_cast<int>(100 + nxt), 2);
    }
    return m;
}

} // namespace gsckit
