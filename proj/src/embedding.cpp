#include "vsep/embedding.hpp"

#include "vsep/error.hpp"

#include <numeric>

namespace vsep {

int Embedding::cw_next(int h) const {
    const auto& r = rot[tail(h)];
    int i = pos[h] + 1;
    return r[i == static_cast<int>(r.size()) ? 0 : i];
}

int Embedding::cw_prev(int h) const {
    const auto& r = rot[tail(h)];
    int i = pos[h];
    return r[i == 0 ? r.size() - 1 : i - 1];
}

void Embedding::finalize() {
    const int H = 2 * edge_count();
    pos.assign(H, -1);
    if (static_cast<int>(rot.size()) != n) throw Error(Errc::Internal, "rotation count differs from vertex count");
    for (int v = 0; v < n; ++v) {
        for (int i = 0; i < static_cast<int>(rot[v].size()); ++i) {
            int h = rot[v][i];
            if (h < 0 || h >= H || tail(h) != v || pos[h] != -1)
                throw Error(Errc::Internal, "inconsistent rotation at vertex " + std::to_string(v));
            pos[h] = i;
        }
    }
    for (int h = 0; h < H; ++h)
        if (pos[h] == -1) throw Error(Errc::Internal, "half-edge missing from rotation");
    face_left.assign(H, -1);
    faces.clear();
    for (int h = 0; h < H; ++h) {
        if (face_left[h] != -1) continue;
        int f = static_cast<int>(faces.size());
        faces.emplace_back();
        int x = h;
        do {
            face_left[x] = f;
            faces.back().push_back(x);
            x = face_next(x);
        } while (x != h);
    }
    // an isolated vertex forms one face on its own
    if (H == 0 && n == 1) faces.emplace_back();
}

bool Embedding::connected() const {
    if (n == 0) return true;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int comps = n;
    for (const auto& e : ends) {
        int a = find(e[0]), b = find(e[1]);
        if (a != b) {
            parent[a] = b;
            --comps;
        }
    }
    return comps == 1;
}

Regions compute_regions(const Embedding& emb, const std::vector<int>& k_edges) {
    Regions out;
    const int H = 2 * emb.edge_count();
    std::vector<char> in_k(emb.edge_count(), 0);
    out.on_k.assign(emb.n, 0);
    for (int e : k_edges) {
        in_k[e] = 1;
        out.on_k[emb.ends[e][0]] = 1;
        out.on_k[emb.ends[e][1]] = 1;
    }
    out.vertex_region.assign(emb.n, -1);
    out.half_face.assign(H, -1);
    if (k_edges.empty()) {
        out.face_count = 1;
        std::fill(out.vertex_region.begin(), out.vertex_region.end(), 0);
        return out;
    }
    // K must be connected for its faces to be disks.
    {
        std::vector<int> parent(emb.n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int e : k_edges) parent[find(emb.ends[e][0])] = find(emb.ends[e][1]);
        int root = find(emb.ends[k_edges[0]][0]);
        for (int e : k_edges)
            if (find(emb.ends[e][0]) != root) throw Error(Errc::Internal, "region curve is disconnected");
    }
    auto k_cw_next = [&](int h) {
        int x = h;
        do {
            x = emb.cw_next(x);
        } while (!in_k[x >> 1]);
        return x;
    };
    for (int e : k_edges) {
        for (int h : {2 * e, 2 * e + 1}) {
            if (out.half_face[h] != -1) continue;
            int f = out.face_count++;
            int x = h;
            do {
                out.half_face[x] = f;
                x = k_cw_next(x ^ 1);
            } while (x != h);
        }
    }
    // flood the complement; each component is located from one edge into K
    for (int s = 0; s < emb.n; ++s) {
        if (out.on_k[s] || out.vertex_region[s] != -1) continue;
        std::vector<int> comp{s};
        out.vertex_region[s] = -2;
        int region = -1;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            int v = comp[i];
            for (int h : emb.rot[v]) {
                if (in_k[h >> 1]) continue;
                int w = emb.head(h);
                if (out.on_k[w]) {
                    int from_k = h ^ 1;
                    int b = k_cw_next(from_k);
                    int r = out.half_face[b];
                    if (region == -1) region = r;
                    else if (region != r) throw Error(Errc::Internal, "inconsistent region location");
                } else if (out.vertex_region[w] == -1) {
                    out.vertex_region[w] = -2;
                    comp.push_back(w);
                }
            }
        }
        if (region == -1) throw Error(Errc::Internal, "component not adjacent to curve");
        for (int v : comp) out.vertex_region[v] = region;
    }
    return out;
}

}  // namespace vsep
