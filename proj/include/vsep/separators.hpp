#pragma once

#include "vsep/sampling.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace vsep {

// One record <p, u, f, v> of a Voronoi separator: the curve runs inside the
// cell tree of p, enters face f at corner u and leaves it at corner v.
struct SepEntry {
    int site = -1;
    int u = -1;
    int face = -1;
    int v = -1;
    friend bool operator==(const SepEntry&, const SepEntry&) = default;
    friend auto operator<=>(const SepEntry&, const SepEntry&) = default;
};
using Separator = std::vector<SepEntry>;

// Same curve traversed backwards.
Separator reversed(const Separator& s);

// Objects meeting some p_i or strictly closer than p_i somewhere on P_i or
// Q_{i-1} (the shortest paths from u_i and v_{i-1} to p_i).
Mask banned_set(const Context& ctx, const Separator& s);

// Perimeter as tokens: ET(p_i) path v_{i-1} .. u_i, then a transit of f_i.
std::vector<FaceCurveToken> perimeter_tokens(const Context& ctx, const Separator& s);

struct Perimeter {
    bool valid = false;
    std::vector<FaceCurveToken> tokens;
    std::vector<int> walk;  // closed walk in the subdivision
};
Perimeter perimeter(const Context& ctx, const Separator& s);

enum class Side : char { On = 0, Enc = 1, Exc = 2 };

// Side of every primal vertex; enc lies to the right of the walk (the curve
// runs clockwise around it). Throws InvalidArgument for an invalid perimeter.
std::vector<Side> classify_sides(const Context& ctx, const Perimeter& p);

// ---------------------------------------------------------------------------
// Nooses of the Voronoi diagram given by edge cuts.

// A noose read off the cut: ordered H vertices with the corners (and so the
// H faces) it uses before and after each. Empty when the cut is not a noose.
struct HNoose {
    std::vector<int> vertices;
    std::vector<int> corner_in;   // H half-edge whose preceding corner the curve enters by
    std::vector<int> corner_out;  // H half-edge whose preceding corner the curve leaves by
};
std::optional<HNoose> noose_of_cut(const Embedding& h, const std::vector<char>& in_cut);

// Separator of a noose; orientation is chosen so that the enclosed side holds
// the cut edges. Empty when the perimeter is not a simple closed curve.
std::optional<Separator> separator_of_cut(const Context& ctx, const VoronoiPartition& part, const VoronoiDiagram& d,
                                          const std::vector<char>& in_cut);

struct SphereCutDecomposition {
    int node_count = 0;
    std::vector<std::array<int, 2>> tree_edges;
    std::vector<int> leaf_edge;                 // node -> H edge, -1 for internal nodes
    std::vector<std::vector<char>> cut;         // per tree edge (a,b): H edges on b's side
    int width = 0;
    bool exhaustive = false;
};

// Decomposition of a connected bridgeless sub-multigraph of H given by its
// edge set. lift maps a cut of those edges to the cut of H whose noose is
// used (identity when the subgraph is all of H). Throws BridgePresent.
using CutLift = std::function<std::vector<char>(const std::vector<char>&)>;
SphereCutDecomposition sphere_cut_decomposition(const Embedding& h, const std::vector<char>& edges,
                                                const CutLift& lift = {}, int exhaustive_limit = 10);

// Bridges of a multigraph embedding.
std::vector<int> find_bridges(const Embedding& h);

// ---------------------------------------------------------------------------

struct MeasuredTree {
    int node_count = 0;
    std::vector<std::array<int, 2>> edges;
    // mu[t][0] = mu(a,b), mu[t][1] = mu(b,a) for edge t = (a,b)
    std::vector<std::array<Rational, 2>> mu;
    std::vector<char> leaf;
};

// Tree edge t with mu(a,b), mu(b,a) both in (W/4, 3W/4). Throws
// MeasureAxiomViolated naming S1, S2 or S3.
int balanced_edge(const MeasuredTree& t, const Rational& W);

struct SeparatorParams {
    Rational epsilon{1, 10};
    int s = 4;          // length cap 3s, weight cap W/s^2
    int ell = 16;       // sample size parameter
    std::uint64_t seed = 1;
    int max_attempts = 200;
    int rounds = 20;    // resampling rounds before giving up
    int exhaustive_limit = 10;
};

struct SeparatorReport {
    Separator sep;
    Mask banned = 0;
    std::vector<int> sample;
    int rounds = 0;
    bool fallback = false;       // found by scanning rather than the balanced edge
    bool bridged = false;
    int width = 0;
};

// Checks B1-B4 for S against D, F and W.
struct SeparatorCheck {
    bool b1 = false, b2 = false, b3 = false, b4 = false;
    bool ok() const { return b1 && b2 && b3 && b4; }
};
SeparatorCheck check_separator(const Context& ctx, Mask D, Mask F, const Rational& W, const Separator& s,
                               const std::vector<int>& important, const SeparatorParams& p);

SeparatorReport balanced_separator(const Context& ctx, Mask D, Mask F, const Rational& W,
                                   const SeparatorParams& p);

// ---------------------------------------------------------------------------
// Candidate families.

struct EnumerationParams {
    int max_len = 2;
    double budget = 1e12;  // cap on the projected raw candidate count
};

// Sum over r = 1..L of (|D| * |I| * 6)^r.
double projected_candidates(int objects, int faces, int max_len);

// Distinct banned sets over all candidates (restricted to D).
std::vector<Mask> enumerate_family_mwiso(const Context& ctx, Mask D, const std::vector<int>& important,
                                         const EnumerationParams& p);

// Calls fn for every syntactic candidate in a fixed order.
void for_each_candidate(const Context& ctx, Mask D, const std::vector<int>& important, int max_len,
                        const std::function<void(const Separator&)>& fn);

struct CoverSplit {
    Mask d1 = 0, d2 = 0;  // centres
    Mask c1 = 0, c2 = 0;  // clients
    Mask banned = 0;
};

// Split induced by one candidate; empty when its perimeter is invalid.
// Centres are the objects of D (single vertices); clients are vertex ids.
std::optional<CoverSplit> cover_split(const Context& ctx, Mask D, const std::vector<int>& clients, Mask C,
                                     const Separator& s);

// Distinct splits over all candidates.
std::vector<CoverSplit> enumerate_family_mwdsc(const Context& ctx, Mask D, const std::vector<int>& clients,
                                               Mask C, const std::vector<int>& important,
                                               const EnumerationParams& p);

}  // namespace vsep
