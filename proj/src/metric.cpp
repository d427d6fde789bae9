#include "vsep/metric.hpp"

#include "vsep/error.hpp"

#include <algorithm>
#include <queue>

namespace vsep {

PathKey PathKey::extended(int edge, const Length& w) const {
    PathKey k;
    k.length = length + w;
    k.edges = edges + 1;
    k.ids.reserve(ids.size() + 1);
    auto it = std::upper_bound(ids.begin(), ids.end(), edge);
    k.ids.insert(k.ids.end(), ids.begin(), it);
    k.ids.push_back(edge);
    k.ids.insert(k.ids.end(), it, ids.end());
    return k;
}

std::strong_ordering operator<=>(const PathKey& a, const PathKey& b) {
    if (auto c = a.length <=> b.length; c != 0) return c;
    if (auto c = a.edges <=> b.edges; c != 0) return c;
    return std::lexicographical_compare_three_way(a.ids.begin(), a.ids.end(), b.ids.begin(), b.ids.end());
}

bool operator==(const PathKey& a, const PathKey& b) {
    return a.edges == b.edges && a.ids == b.ids && a.length == b.length;
}

std::vector<int> ShortestPathTree::path_to_source(int v) const {
    std::vector<int> out{v};
    while (parent[v] >= 0) {
        v = parent[v];
        out.push_back(v);
    }
    return out;
}

ShortestPathTree dijkstra(const PlaneGraph& g, const std::vector<int>& sources, const std::vector<char>& edge_allowed) {
    const int n = g.vertex_count();
    ShortestPathTree t;
    t.key.assign(n, PathKey{});
    t.parent.assign(n, -1);
    t.parent_edge.assign(n, -1);
    t.source.assign(n, -1);
    std::vector<char> reached(n, 0), done(n, 0);
    std::vector<int> version(n, 0);
    struct Entry {
        PathKey key;
        int v;
        int ver;
    };
    auto cmp = [](const Entry& a, const Entry& b) { return a.key > b.key; };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> pq(cmp);
    for (int s : sources) {
        if (s < 0 || s >= n) throw Error(Errc::InvalidArgument, "source out of range");
        if (reached[s]) continue;
        reached[s] = 1;
        t.key[s] = PathKey{Length(), 0, {}};
        t.source[s] = s;
        pq.push({t.key[s], s, 0});
    }
    const auto& emb = g.embedding();
    while (!pq.empty()) {
        Entry cur = pq.top();
        pq.pop();
        int v = cur.v;
        if (done[v] || cur.ver != version[v]) continue;
        done[v] = 1;
        for (int h : emb.rot[v]) {
            int e = h >> 1;
            if (!edge_allowed.empty() && !edge_allowed[e]) continue;
            int w = emb.head(h);
            if (done[w]) continue;
            PathKey k = t.key[v].extended(e, g.edge(e).w);
            if (!reached[w] || k < t.key[w]) {
                reached[w] = 1;
                t.key[w] = k;
                t.parent[w] = v;
                t.parent_edge[w] = e;
                t.source[w] = t.source[v];
                pq.push({std::move(k), w, ++version[w]});
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (!reached[v]) t.key[v] = PathKey{Length::infinity(), 0, {}};
    return t;
}

const ShortestPathTree& ShortestPathOracle::tree_from(int u) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(u);
        if (it != cache_.end()) return *it->second;
    }
    auto t = std::make_shared<const ShortestPathTree>(dijkstra(*g_, {u}));
    std::lock_guard<std::mutex> lock(mu_);
    return *cache_.emplace(u, std::move(t)).first->second;
}

std::pair<std::vector<int>, PathKey> ShortestPathOracle::shortest_path(int u, int v) const {
    if (u < 0 || v < 0 || u >= g_->vertex_count() || v >= g_->vertex_count())
        throw Error(Errc::InvalidArgument, "vertex out of range");
    const auto& t = tree_from(u);
    if (t.source[v] < 0) throw Error(Errc::Unreachable, "no path");
    auto p = t.path_to_source(v);
    std::reverse(p.begin(), p.end());
    return {p, t.key[v]};
}

}  // namespace vsep
