#pragma once

#include <array>
#include <vector>

namespace vsep {

// Combinatorial sphere embedding of a multigraph. Half-edge 2e runs
// ends[e][0] -> ends[e][1] and 2e+1 runs back. rot[v] lists the half-edges
// leaving v in clockwise order. A face lies to the left of each of its
// half-edges: face_next(h) is the clockwise successor of twin(h) at head(h).
struct Embedding {
    int n = 0;
    std::vector<std::array<int, 2>> ends;
    std::vector<std::vector<int>> rot;

    // Filled by finalize().
    std::vector<int> pos;
    std::vector<int> face_left;
    std::vector<std::vector<int>> faces;

    int edge_count() const { return static_cast<int>(ends.size()); }
    int face_count() const { return static_cast<int>(faces.size()); }
    static int twin(int h) { return h ^ 1; }
    static int edge_of(int h) { return h >> 1; }
    int tail(int h) const { return ends[h >> 1][h & 1]; }
    int head(int h) const { return ends[h >> 1][(h & 1) ^ 1]; }
    int cw_next(int h) const;
    int cw_prev(int h) const;
    int face_next(int h) const { return cw_next(h ^ 1); }
    // Half-edge of edge e leaving v (for a loop, the first one).
    int half_from(int e, int v) const { return ends[e][0] == v ? 2 * e : 2 * e + 1; }

    // Validates that every half-edge appears exactly once in the rotation of
    // its tail, then traces faces. Throws Error(Internal) on inconsistency.
    void finalize();
    bool connected() const;
};

// Faces of a connected subgraph K (edge ids of emb) in the restricted
// rotation system, and the K-face containing every vertex not on K.
struct Regions {
    int face_count = 0;
    std::vector<int> vertex_region;  // -1 for vertices of K
    std::vector<int> half_face;      // K-face left of each K half-edge, -1 elsewhere
    std::vector<char> on_k;          // vertex lies on K
};

Regions compute_regions(const Embedding& emb, const std::vector<int>& k_edges);

}  // namespace vsep
