#pragma once

#include "vsep/objects.hpp"

#include <random>
#include <vector>

namespace vsep {

// Random triangulation on n >= 3 vertices: stacked insertions followed by
// random edge flips. Weights are integers in [1, max_weight].
PlaneGraph random_triangulation(int n, std::mt19937_64& rng, int max_weight = 20, int flips = -1);

// Random connected vertex sets of the finite subgraph with 1..max_size
// vertices. With `disjoint`, no two sets share a vertex (fewer may be
// returned when the graph runs out of room).
std::vector<std::vector<int>> random_vertex_sets(const PlaneGraph& g, int count, int max_size, bool disjoint,
                                                 std::mt19937_64& rng);

// Integer weights in [lo, hi].
std::vector<Rational> random_weights(int count, int lo, int hi, std::mt19937_64& rng);

ObjectFamily make_family(std::shared_ptr<const PlaneGraph> g, const std::vector<std::vector<int>>& sets,
                         const std::vector<Rational>& weights);

}  // namespace vsep
