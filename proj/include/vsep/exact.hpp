#pragma once

#include "vsep/objects.hpp"

#include <optional>
#include <vector>

namespace vsep {

// Single-vertex weighted centres, client vertices and a covering radius.
struct MwdscInstance {
    std::shared_ptr<const PlaneGraph> graph;
    std::vector<int> centers;
    std::vector<Rational> weights;
    std::vector<int> clients;
    Rational radius{0};
};

struct OracleResult {
    bool feasible = true;
    Rational value{0};
    std::vector<int> solution;  // sorted ids
    long long count = 0;        // search nodes or subsets visited
};

// Maximum-weight independent subfamily of `pool` (default: all objects),
// lexicographically smallest id set among optima. Throws TooLarge above 24.
OracleResult exact_mwiso(const ObjectFamily& fam, std::optional<Mask> pool = std::nullopt);
// Same optimum by plain 2^N enumeration.
OracleResult exact_mwiso_unpruned(const ObjectFamily& fam);

// cover[q]: clients within the radius of centre q (bit i for clients[i]).
// Throws TooLarge above 64 clients.
std::vector<Mask> cover_masks(const MwdscInstance& inst);

// Minimum-weight subset of `pool` covering `need`, from cover masks.
OracleResult exact_cover(const std::vector<Mask>& cover, const std::vector<Rational>& weights, Mask pool, Mask need);

// Throws TooLarge above 20 centres.
OracleResult exact_mwdsc(const MwdscInstance& inst);

// Validates ranges, distinct centres and a nonnegative radius.
void validate(const MwdscInstance& inst);

}  // namespace vsep
