#pragma once

// Helpers shared by the unit tests and the acceptance binary. Everything
// here recomputes quantities by direct means rather than through the
// library's caches.

#include "vsep/error.hpp"
#include "vsep/generators.hpp"
#include "vsep/sampling.hpp"
#include "vsep/separators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <vector>

namespace oracle {

using namespace vsep;

// Plane graph from a straight-line drawing; rotations follow the angles.
inline std::shared_ptr<const PlaneGraph> drawn(const std::vector<std::pair<double, double>>& xy,
                                               const std::vector<std::array<int, 2>>& edges,
                                               const std::vector<int>& weights = {}) {
    const int n = static_cast<int>(xy.size());
    std::vector<PlaneGraph::Edge> es;
    std::vector<std::vector<int>> rot(n);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [u, v] = edges[e];
        es.push_back({u, v, Length(Rational(weights.empty() ? 1 : weights[e]))});
        rot[u].push_back(static_cast<int>(e));
        rot[v].push_back(static_cast<int>(e));
    }
    for (int v = 0; v < n; ++v) {
        auto angle = [&](int e) {
            int w = edges[e][0] == v ? edges[e][1] : edges[e][0];
            return std::atan2(xy[w].second - xy[v].second, xy[w].first - xy[v].first);
        };
        std::sort(rot[v].begin(), rot[v].end(), [&](int a, int b) { return angle(a) > angle(b); });
    }
    return std::make_shared<const PlaneGraph>(PlaneGraph::build(n, std::move(es), rot));
}

// Octahedron: outer triangle 0,1,2 and inner triangle 3,4,5 with v+3
// antipodal to v.
inline std::shared_ptr<const PlaneGraph> octahedron(const std::vector<int>& weights = {}) {
    std::vector<std::pair<double, double>> xy{{0, 10}, {-10, -8}, {10, -8}, {0, -3}, {3, 2}, {-3, 2}};
    std::vector<std::array<int, 2>> e{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3},
                                      {3, 1}, {3, 2}, {4, 0}, {4, 2}, {5, 0}, {5, 1}};
    return drawn(xy, e, weights);
}

inline std::shared_ptr<const PlaneGraph> triangle() {
    return drawn({{0, 0}, {1, 0}, {0, 1}}, {{0, 1}, {1, 2}, {2, 0}});
}

// Minimum length over all simple paths u..v (finite edges only).
inline Length brute_distance(const PlaneGraph& g, int u, int v) {
    if (u == v) return Length(Rational(0));
    Length best = Length::infinity();
    std::vector<char> used(g.vertex_count(), 0);
    std::function<void(int, Length)> go = [&](int x, Length len) {
        if (x == v) {
            if (len < best) best = len;
            return;
        }
        used[x] = 1;
        for (int h : g.embedding().rot[x]) {
            int e = h >> 1;
            if (!g.is_finite(e)) continue;
            int y = g.embedding().head(h);
            if (!used[y]) go(y, len + g.edge(e).w);
        }
        used[x] = 0;
    };
    go(u, Length(Rational(0)));
    return best;
}

// Objects strictly closer than p at some vertex of the path from x to p.
inline Mask conflict_oracle(const Context& ctx, int x, int p) {
    const auto& fam = ctx.family;
    Mask out = 0;
    for (int w : ctx.metric->path_to_object(x, p))
        for (int q = 0; q < fam.size(); ++q)
            if (q != p && ctx.metric->spf(q).key[w] < ctx.metric->spf(p).key[w]) out |= bit(q);
    return out;
}

// Ban(S) from its three clauses, with intersections read off vertex sets.
inline Mask banned_oracle(const Context& ctx, const Separator& s) {
    const auto& fam = ctx.family;
    const int r = static_cast<int>(s.size());
    Mask out = 0;
    for (int i = 0; i < r; ++i) {
        int p = s[i].site;
        std::set<int> pv(fam[p].vertices.begin(), fam[p].vertices.end());
        for (int q = 0; q < fam.size(); ++q)
            for (int v : fam[q].vertices)
                if (pv.count(v)) out |= bit(q);
        out |= conflict_oracle(ctx, s[i].u, p);
        out |= conflict_oracle(ctx, s[i].v, s[(i + 1) % r].site);
    }
    return out;
}

// Components of the intersection graph on `pool`, by pairwise vertex-set
// intersection and a plain search.
inline std::vector<Mask> components_oracle(const ObjectFamily& fam, Mask pool) {
    std::vector<Mask> out;
    Mask left = pool;
    auto meet = [&](int a, int b) {
        const auto& va = fam[a].vertices;
        const auto& vb = fam[b].vertices;
        for (int x : va)
            if (std::binary_search(vb.begin(), vb.end(), x)) return true;
        return false;
    };
    while (left) {
        int s = __builtin_ctzll(left);
        Mask comp = bit(s);
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (Mask r = left & ~comp; r; r &= r - 1) {
                int b = __builtin_ctzll(r);
                if (meet(a, b)) {
                    comp |= bit(b);
                    stack.push_back(b);
                }
            }
        }
        out.push_back(comp);
        left &= ~comp;
    }
    return out;
}

inline std::vector<int> all_ids(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

inline Rational mask_weight(const std::vector<Rational>& w, Mask m) {
    Rational s(0);
    for (; m; m &= m - 1) s += w[__builtin_ctzll(m)];
    return s;
}

}  // namespace oracle
