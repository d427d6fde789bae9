#pragma once

#include "vsep/metric.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace vsep {

using Mask = std::uint64_t;
inline constexpr int kMaskBits = 64;
inline Mask bit(int i) { return Mask{1} << i; }

// Connected vertex set of the finite-weight subgraph with a weight.
struct GraphObject {
    int id = 0;
    Rational weight;
    std::vector<int> vertices;    // sorted
    std::vector<int> edges;       // finite edges with both ends in the object
    int root = -1;                // smallest vertex
    std::vector<int> tree_edges;  // shortest-path tree of the object from root
};

class ObjectFamily {
public:
    ObjectFamily() = default;
    ObjectFamily(std::shared_ptr<const PlaneGraph> g, std::vector<GraphObject> objects);

    // Validates and builds one object (throws EmptyObject / InvalidObject).
    static GraphObject make_object(const PlaneGraph& g, int id, const Rational& weight, std::vector<int> vertices);

    int size() const { return static_cast<int>(objs_.size()); }
    const GraphObject& operator[](int i) const { return objs_[i]; }
    const std::vector<GraphObject>& objects() const { return objs_; }
    const PlaneGraph& graph() const { return *g_; }
    const std::shared_ptr<const PlaneGraph>& graph_ptr() const { return g_; }

    bool intersects(int p, int q) const { return adj_[p][q] != 0; }
    // Objects meeting p, p included. Needs size() <= 64.
    Mask closed_neighbourhood(int p) const;
    const std::vector<int>& owners(int v) const { return owners_[v]; }
    bool independent(const std::vector<int>& ids) const;
    bool independent(Mask m) const;
    Rational weight(const std::vector<int>& ids) const;
    Rational weight(Mask m) const;
    Rational total_weight() const;
    // Components of the intersection graph induced on `ids`.
    std::vector<std::vector<int>> components(const std::vector<int>& ids) const;
    std::vector<Mask> components(Mask m) const;
    Mask all() const;

    // Copy with a different weight per object.
    ObjectFamily reweighted(const std::vector<Rational>& w) const;
    // Family restricted to the listed objects (renumbered in order).
    ObjectFamily subfamily(const std::vector<int>& ids) const;

    std::string to_text() const;
    static ObjectFamily parse(std::string_view text, std::shared_ptr<const PlaneGraph> g);

private:
    void index();

    std::shared_ptr<const PlaneGraph> g_;
    std::vector<GraphObject> objs_;
    std::vector<std::vector<char>> adj_;
    std::vector<std::vector<int>> owners_;
    std::vector<Mask> nbr_;
};

// Distances from vertices to objects, strict-closeness ranks and the extended
// trees ET(p): the object's own tree plus the shortest-path parents of all
// outside vertices. ET(p) spans the graph and restricted to any Voronoi cell
// of p is that cell's tree.
class ObjectMetric {
public:
    explicit ObjectMetric(const ObjectFamily& fam);

    const ObjectFamily& family() const { return *fam_; }
    const ShortestPathTree& spf(int p) const { return spf_[p]; }
    const PathKey& key(int v, int p) const { return spf_[p].key[v]; }
    // Key of the nearest path from u into p and its endpoint in p.
    std::pair<PathKey, int> dist_to_object(int u, int p) const;
    // Dense rank of p among all objects by key at v (ties share a rank).
    int rank(int v, int p) const { return rank_[v][p]; }
    bool strict_closer(int w, int q, int p) const { return rank_[w][q] < rank_[w][p]; }

    int et_parent(int p, int v) const { return et_parent_[p][v]; }
    int et_parent_edge(int p, int v) const { return et_edge_[p][v]; }
    // Vertex sequence a..b along ET(p).
    std::vector<int> et_path(int p, int a, int b) const;
    // u .. nearest vertex of p along shortest-path parents.
    std::vector<int> path_to_object(int u, int p) const;
    // Objects strictly closer than p at some vertex of path_to_object(x, p).
    Mask conflicts(int x, int p) const { return conflict_[p][x]; }

private:
    const ObjectFamily* fam_;
    std::vector<ShortestPathTree> spf_;
    std::vector<std::vector<int>> rank_;
    std::vector<std::vector<int>> et_parent_, et_edge_, et_depth_;
    std::vector<std::vector<Mask>> conflict_;
};

}  // namespace vsep
