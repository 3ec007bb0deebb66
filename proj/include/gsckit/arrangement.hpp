#pragma once

#include <map>
#include <set>
#include <vector>
#include <array>
#include <algorithm>
#include <optional>

#include "gsckit/rational.hpp"
#include "gsckit/errors.hpp"

namespace gsckit {

/// Exact 2d arrangement of axis-parallel segments; extracts the bounded
/// faces as counterclockwise boundary walks. Inputs may overlap collinearly;
/// they are merged per carrier line before splitting.
class PlanarArrangement {
public:
    using Pt = std::pair<Rat, Rat>; // (u, v)

    struct Face {
        std::vector<int> edges; // indices into edges(), sign by orientation
        std::vector<int> dirs;  // +1 along (lo->hi), -1 reversed
    };

    void add_segment(Pt a, Pt b) {
        if (a == b) {
            split_points_.push_back(a);
            return;
        }
        if (a.first != b.first && a.second != b.second)
            throw input_error("arrangement: segment is not axis-parallel");
        if (b < a) std::swap(a, b);
        segments_.push_back({a, b});
    }

    void add_split_point(Pt p) { split_points_.push_back(p); }

    const std::vector<Pt>& vertices() const { return verts_; }
    const std::vector<std::pair<int, int>>& edges() const { return atomic_; }
    const std::vector<Face>& faces() const { return faces_; }

    void build() {
        // carrier lines: horizontal (v = c) and vertical (u = c)
        std::map<Rat, std::vector<std::pair<Rat, Rat>>> horiz, vert; // c -> u/v spans
        for (const auto& [a, b] : segments_) {
            if (a.second == b.second) horiz[a.second].push_back({a.first, b.first});
            else vert[a.first].push_back({a.second, b.second});
        }
        auto merge = [](std::vector<std::pair<Rat, Rat>>& spans) {
            std::sort(spans.begin(), spans.end(), [](const auto& x, const auto& y) {
                if (x.first != y.first) return x.first < y.first;
                return x.second < y.second;
            });
            std::vector<std::pair<Rat, Rat>> out;
            for (const auto& s : spans) {
                if (!out.empty() && s.first <= out.back().second) {
                    if (s.second > out.back().second) out.back().second = s.second;
                } else
                    out.push_back(s);
            }
            spans = out;
        };
        for (auto& [c, spans] : horiz) merge(spans);
        for (auto& [c, spans] : vert) merge(spans);

        // split positions per carrier
        std::map<Rat, std::set<Rat>> hcut, vcut;
        for (const auto& [hv, hspans] : horiz)
            for (const auto& hs : hspans) {
                hcut[hv].insert(hs.first);
                hcut[hv].insert(hs.second);
            }
        for (const auto& [vu, vspans] : vert)
            for (const auto& vs : vspans) {
                vcut[vu].insert(vs.first);
                vcut[vu].insert(vs.second);
            }
        for (const auto& [hv, hspans] : horiz)
            for (const auto& hs : hspans)
                for (const auto& [vu, vspans] : vert) {
                    if (vu < hs.first || vu > hs.second) continue;
                    for (const auto& vs : vspans)
                        if (vs.first <= hv && hv <= vs.second) {
                            hcut[hv].insert(vu);
                            vcut[vu].insert(hv);
                        }
                }
        for (const auto& p : split_points_) {
            for (const auto& [hv, hspans] : horiz)
                if (hv == p.second)
                    for (const auto& hs : hspans)
                        if (hs.first <= p.first && p.first <= hs.second) hcut[hv].insert(p.first);
            for (const auto& [vu, vspans] : vert)
                if (vu == p.first)
                    for (const auto& vs : vspans)
                        if (vs.first <= p.second && p.second <= vs.second) vcut[vu].insert(p.second);
        }

        auto vid = [&](const Pt& p) {
            auto it = vindex_.find(p);
            if (it != vindex_.end()) return it->second;
            int id = static_cast<int>(verts_.size());
            verts_.push_back(p);
            vindex_[p] = id;
            return id;
        };

        std::set<std::pair<int, int>> seen;
        auto emit = [&](const Pt& a, const Pt& b) {
            int ia = vid(a), ib = vid(b);
            auto key = std::minmax(ia, ib);
            if (seen.insert({key.first, key.second}).second)
                atomic_.push_back({std::min(ia, ib), std::max(ia, ib)});
        };
        for (const auto& [hv, hspans] : horiz)
            for (const auto& hs : hspans) {
                std::vector<Rat> cs;
                for (const Rat& c : hcut[hv])
                    if (hs.first <= c && c <= hs.second) cs.push_back(c);
                for (std::size_t i = 0; i + 1 < cs.size(); ++i)
                    emit({cs[i], hv}, {cs[i + 1], hv});
            }
        for (const auto& [vu, vspans] : vert)
            for (const auto& vs : vspans) {
                std::vector<Rat> cs;
                for (const Rat& c : vcut[vu])
                    if (vs.first <= c && c <= vs.second) cs.push_back(c);
                for (std::size_t i = 0; i + 1 < cs.size(); ++i)
                    emit({vu, cs[i]}, {vu, cs[i + 1]});
            }

        extract_faces();
    }

private:
    // directions: 0 = +u, 1 = +v, 2 = -u, 3 = -v
    int dir_of(int from, int to) const {
        const Pt& a = verts_[from];
        const Pt& b = verts_[to];
        if (a.second == b.second) return b.first > a.first ? 0 : 2;
        return b.second > a.second ? 1 : 3;
    }

    void extract_faces() {
        // outgoing half-edges per vertex by direction
        std::map<std::pair<int, int>, int> out; // (vertex, dir) -> edge index
        for (std::size_t i = 0; i < atomic_.size(); ++i) {
            auto [a, b] = atomic_[i];
            out[{a, dir_of(a, b)}] = static_cast<int>(i);
            out[{b, dir_of(b, a)}] = static_cast<int>(i);
        }
        // half-edge = (edge index, orientation +1 from lo vertex / -1)
        std::set<std::pair<int, int>> visited;
        for (std::size_t start = 0; start < atomic_.size(); ++start)
            for (int orient : {1, -1}) {
                if (visited.count({static_cast<int>(start), orient})) continue;
                Face face;
                Rat area2(0); // twice the signed area
                int e = static_cast<int>(start);
                int o = orient;
                while (true) {
                    if (!visited.insert({e, o}).second) break;
                    face.edges.push_back(e);
                    face.dirs.push_back(o);
                    int tail = o > 0 ? atomic_[e].first : atomic_[e].second;
                    int head = o > 0 ? atomic_[e].second : atomic_[e].first;
                    area2 += verts_[tail].first * verts_[head].second -
                             verts_[head].first * verts_[tail].second;
                    // next: first clockwise from the reverse direction
                    int back = dir_of(head, tail);
                    int next_e = -1, next_o = 0;
                    for (int k = 1; k <= 4; ++k) {
                        int d = ((back - k) % 4 + 4) % 4;
                        auto it = out.find({head, d});
                        if (it == out.end()) continue;
                        next_e = it->second;
                        next_o = atomic_[next_e].first == head ? 1 : -1;
                        break;
                    }
                    if (next_e < 0) throw structural_error("arrangement: dangling half-edge");
                    e = next_e;
                    o = next_o;
                    if (e == static_cast<int>(start) && o == orient) break;
                }
                if (area2 > Rat(0)) faces_.push_back(std::move(face));
            }
    }

    std::vector<std::pair<Pt, Pt>> segments_;
    std::vector<Pt> split_points_;
    std::vector<Pt> verts_;
    std::map<Pt, int> vindex_;
    std::vector<std::pair<int, int>> atomic_;
    std::vector<Face> faces_;
};

} // namespace gsckit
