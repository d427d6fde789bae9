#include "vsep/generators.hpp"

#include "vsep/error.hpp"

#include <algorithm>
#include <map>

namespace vsep {

namespace {

int index_of(const std::vector<int>& r, int x) {
    return static_cast<int>(std::find(r.begin(), r.end(), x) - r.begin());
}

void insert_after(std::vector<int>& r, int after, int x) {
    r.insert(r.begin() + index_of(r, after) + 1, x);
}

int next_in_face(const std::vector<std::vector<int>>& rot, int a, int b) {
    const auto& r = rot[b];
    return r[(index_of(r, a) + 1) % r.size()];
}

}  // namespace

PlaneGraph random_triangulation(int n, std::mt19937_64& rng, int max_weight, int flips) {
    if (n < 3) throw Error(Errc::InvalidArgument, "triangulation needs at least 3 vertices");
    std::vector<std::vector<int>> rot(n);
    rot[0] = {1, 2};
    rot[1] = {2, 0};
    rot[2] = {0, 1};
    auto faces = [&](int count) {
        std::vector<std::array<int, 3>> out;
        std::map<std::pair<int, int>, char> seen;
        for (int a = 0; a < count; ++a)
            for (int b : rot[a]) {
                if (seen[{a, b}]) continue;
                int c = next_in_face(rot, a, b);
                seen[{a, b}] = seen[{b, c}] = seen[{c, a}] = 1;
                out.push_back({a, b, c});
            }
        return out;
    };
    for (int x = 3; x < n; ++x) {
        auto fs = faces(x);
        auto f = fs[std::uniform_int_distribution<std::size_t>(0, fs.size() - 1)(rng)];
        int a = f[0], b = f[1], c = f[2];
        rot[x] = {b, a, c};
        insert_after(rot[a], c, x);
        insert_after(rot[b], a, x);
        insert_after(rot[c], b, x);
    }
    if (flips < 0) flips = 2 * n;
    for (int t = 0; t < flips && n >= 4; ++t) {
        int a = std::uniform_int_distribution<int>(0, n - 1)(rng);
        int b = rot[a][std::uniform_int_distribution<std::size_t>(0, rot[a].size() - 1)(rng)];
        if (rot[a].size() <= 3 || rot[b].size() <= 3) continue;
        int c = next_in_face(rot, a, b);
        int d = next_in_face(rot, b, a);
        if (c == d || std::find(rot[c].begin(), rot[c].end(), d) != rot[c].end()) continue;
        rot[a].erase(rot[a].begin() + index_of(rot[a], b));
        rot[b].erase(rot[b].begin() + index_of(rot[b], a));
        insert_after(rot[c], b, d);
        insert_after(rot[d], a, c);
    }
    std::vector<PlaneGraph::Edge> edges;
    std::map<std::pair<int, int>, int> id;
    std::uniform_int_distribution<int> wd(1, max_weight);
    for (int u = 0; u < n; ++u)
        for (int v : rot[u])
            if (u < v) {
                id[{u, v}] = static_cast<int>(edges.size());
                edges.push_back({u, v, Length(Rational(wd(rng)))});
            }
    std::vector<std::vector<int>> erot(n);
    for (int u = 0; u < n; ++u)
        for (int v : rot[u]) erot[u].push_back(id[{std::min(u, v), std::max(u, v)}]);
    return PlaneGraph::build(n, std::move(edges), erot);
}

std::vector<std::vector<int>> random_vertex_sets(const PlaneGraph& g, int count, int max_size, bool disjoint,
                                                 std::mt19937_64& rng) {
    const int n = g.vertex_count();
    const auto& emb = g.embedding();
    std::vector<char> used(n, 0);
    std::vector<std::vector<int>> out;
    for (int tries = 0; static_cast<int>(out.size()) < count && tries < 50 * count; ++tries) {
        int s = std::uniform_int_distribution<int>(0, n - 1)(rng);
        if (disjoint && used[s]) continue;
        int target = std::uniform_int_distribution<int>(1, std::max(1, max_size))(rng);
        std::vector<int> set{s};
        std::vector<char> in(n, 0);
        in[s] = 1;
        while (static_cast<int>(set.size()) < target) {
            std::vector<int> frontier;
            for (int v : set)
                for (int h : emb.rot[v]) {
                    int w = emb.head(h);
                    if (!g.is_finite(h >> 1) || in[w] || (disjoint && used[w])) continue;
                    frontier.push_back(w);
                }
            if (frontier.empty()) break;
            int w = frontier[std::uniform_int_distribution<std::size_t>(0, frontier.size() - 1)(rng)];
            in[w] = 1;
            set.push_back(w);
        }
        if (disjoint)
            for (int v : set) used[v] = 1;
        std::sort(set.begin(), set.end());
        out.push_back(std::move(set));
    }
    return out;
}

std::vector<Rational> random_weights(int count, int lo, int hi, std::mt19937_64& rng) {
    std::vector<Rational> out;
    std::uniform_int_distribution<int> d(lo, hi);
    for (int i = 0; i < count; ++i) out.emplace_back(d(rng));
    return out;
}

ObjectFamily make_family(std::shared_ptr<const PlaneGraph> g, const std::vector<std::vector<int>>& sets,
                         const std::vector<Rational>& weights) {
    std::vector<GraphObject> objs;
    for (std::size_t i = 0; i < sets.size(); ++i)
        objs.push_back(ObjectFamily::make_object(*g, static_cast<int>(i), weights[i], sets[i]));
    return ObjectFamily(std::move(g), std::move(objs));
}

}  // namespace vsep
