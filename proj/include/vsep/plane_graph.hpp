#pragma once

#include "vsep/embedding.hpp"
#include "vsep/numeric.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vsep {

// A simple, connected, edge-weighted graph with a fixed spherical embedding.
// Weights are positive lengths or infinity; infinite edges only serve to
// triangulate and are never preferred by shortest paths.
class PlaneGraph {
public:
    struct Edge {
        int u = 0;
        int v = 0;
        Length w;
    };

    PlaneGraph() = default;

    // rotations[v] lists the ids of the edges at v in clockwise order.
    static PlaneGraph build(int n, std::vector<Edge> edges, const std::vector<std::vector<int>>& rotations);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int face_count() const { return emb_.face_count(); }
    const Edge& edge(int e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool is_finite(int e) const { return !edges_[e].w.is_inf(); }
    const Embedding& embedding() const { return emb_; }
    std::vector<std::vector<int>> rotations() const;

    // Corners of face f in traversal order: (vertex, edge leaving it along f).
    std::vector<std::pair<int, int>> face_corners(int f) const;
    std::vector<int> face_vertices(int f) const;
    int find_edge(int u, int v) const;
    int other_end(int e, int x) const { return edges_[e].u == x ? edges_[e].v : edges_[e].u; }
    bool is_triangulated() const;

    // Adds infinite-weight chords until every face is a triangle. Graphs with
    // fewer than three vertices are returned unchanged.
    PlaneGraph triangulate() const;

    std::string to_text() const;
    static PlaneGraph parse(std::string_view text);

private:
    void finish();

    int n_ = 0;
    std::vector<Edge> edges_;
    Embedding emb_;
    std::unordered_map<long long, int> edge_index_;
};

// Dual multigraph: node f per face, arc e per primal edge joining the faces on
// both sides. Dual half-edge h has tail face_left(h); rotations follow the
// face traversal backwards, so tracing its faces recovers the vertices.
struct DualGraph {
    Embedding emb;
    int node_count() const { return emb.n; }
    int arc_count() const { return emb.edge_count(); }
};

DualGraph dual_graph(const PlaneGraph& g);

// Token of a curve drawn on the embedding: a vertex, or a passage through the
// interior of a face from one of its corners to another.
struct FaceCurveToken {
    enum class Kind { Vertex, FaceTransit };
    Kind kind = Kind::Vertex;
    int vertex = -1;
    int face = -1;
    int entry = -1;
    int exit = -1;

    static FaceCurveToken at(int v) { return {Kind::Vertex, v, -1, -1, -1}; }
    static FaceCurveToken transit(int f, int a, int b) { return {Kind::FaceTransit, -1, f, a, b}; }
};

// Barycentric subdivision of a triangulated graph: vertex v keeps its id, edge
// e gets a midpoint n+e and face f a centre n+E+f. Midpoints connect to the
// two endpoints and both face centres; centres connect to their corners and
// edge midpoints. Every curve built from tree paths and face transits is a
// walk in this graph, so sides of curves are read off its regions.
class Subdivision {
public:
    explicit Subdivision(const PlaneGraph& g);

    const Embedding& embedding() const { return emb_; }
    int primal_vertices() const { return n_; }
    int mid(int e) const { return n_ + e; }
    int centre(int f) const { return n_ + m_ + f; }
    bool is_primal(int x) const { return x < n_; }
    int sd_edge(int a, int b) const;  // -1 when absent

    // Sd vertex walk of a closed token curve, without the closing repeat.
    std::vector<int> walk_of(const std::vector<FaceCurveToken>& curve, const PlaneGraph& g) const;
    // Sd edges of a closed vertex walk.
    std::vector<int> edges_of_closed_walk(const std::vector<int>& walk) const;
    // Sd vertices of a primal vertex path (inserting edge midpoints).
    std::vector<int> refine_path(const std::vector<int>& path, const PlaneGraph& g) const;

private:
    int n_ = 0;
    int m_ = 0;
    Embedding emb_;
    std::unordered_map<long long, int> index_;
};

}  // namespace vsep
