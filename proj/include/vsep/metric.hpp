#pragma once

#include "vsep/plane_graph.hpp"

#include <compare>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace vsep {

// Total order on paths: length, then edge count, then the sorted multiset of
// edge ids. Distinct simple paths between distinct endpoint pairs never tie,
// and the order is preserved when both paths are extended by the same edge.
struct PathKey {
    Length length;
    int edges = 0;
    std::vector<int> ids;

    PathKey extended(int edge, const Length& w) const;
    friend std::strong_ordering operator<=>(const PathKey& a, const PathKey& b);
    friend bool operator==(const PathKey& a, const PathKey& b);
};

// Multi-source shortest-path forest under PathKey order.
struct ShortestPathTree {
    std::vector<PathKey> key;
    std::vector<int> parent;       // -1 at sources
    std::vector<int> parent_edge;  // -1 at sources
    std::vector<int> source;

    // v, parent(v), ..., source(v)
    std::vector<int> path_to_source(int v) const;
};

// edge_allowed may be empty (all edges allowed).
ShortestPathTree dijkstra(const PlaneGraph& g, const std::vector<int>& sources,
                          const std::vector<char>& edge_allowed = {});

class ShortestPathOracle {
public:
    explicit ShortestPathOracle(std::shared_ptr<const PlaneGraph> g) : g_(std::move(g)) {}
    // Vertex sequence u..v and its key.
    std::pair<std::vector<int>, PathKey> shortest_path(int u, int v) const;
    const ShortestPathTree& tree_from(int u) const;

private:
    std::shared_ptr<const PlaneGraph> g_;
    mutable std::mutex mu_;
    mutable std::unordered_map<int, std::shared_ptr<const ShortestPathTree>> cache_;
};

}  // namespace vsep
