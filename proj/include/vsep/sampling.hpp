#pragma once

#include "vsep/voronoi.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace vsep {

// Deterministic generator for a (seed, stream) pair.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream);

// Exact draw of a Bernoulli variable with rational success probability in [0,1].
bool bernoulli(std::mt19937_64& rng, const Rational& q);

struct Spoke {
    int hvertex = -1;           // H vertex (branching face)
    int vertex = -1;            // corner of the face
    int site = -1;              // owner of the corner
    std::vector<int> path;      // corner .. site
    Mask conflicts = 0;         // objects strictly closer than site somewhere on path
};

struct Diamond {
    int hedge = -1;
    int left_site = -1;
    int right_site = -1;
    std::vector<int> walk;      // closed Sd walk
    std::vector<int> interior_vertices;  // primal vertices strictly inside
};

std::vector<Spoke> spokes(const Context& ctx, const VoronoiPartition& part, const VoronoiDiagram& d);
Diamond diamond(const Context& ctx, const VoronoiPartition& part, const VoronoiDiagram& d, int hedge);
std::vector<Diamond> diamonds(const Context& ctx, const VoronoiPartition& part, const VoronoiDiagram& d);

// Objects of `pool` lying entirely among `vertices` (given as a flag vector).
Mask objects_inside(const ObjectFamily& fam, Mask pool, const std::vector<char>& inside);

struct SampleStats {
    bool size_ok = false;
    bool light = false;
    Rational max_spoke{0};
    Rational max_diamond{0};
};

struct SampleResult {
    std::vector<int> sample;
    bool direct = false;      // the whole family qualified without sampling
    int attempts = 0;
    Rational eta{0};
    SampleStats stats;
};

// eta = 10 ln(ell) W / ell with ln rounded up.
Rational sampling_threshold(const Rational& W, int ell);

// One sampling attempt: keep each p with probability w(p) ell / W.
SampleStats sample_attempt(const Context& ctx, Mask F, const Rational& W, int ell, std::mt19937_64& rng,
                           std::vector<int>& out);

// Samples S from the independent family F (w(p) <= W/ell for all p, ell >= 10)
// such that 4 <= |S| <= 2 ell and no spoke or diamond of the diagram of S
// carries F-weight above eta. Throws ExhaustedAttempts after max_attempts.
SampleResult sample_family(const Context& ctx, Mask F, const Rational& W, int ell, std::uint64_t seed,
                           int max_attempts = 200);

// Spoke and diamond weights of a fixed S against pool F.
SampleStats evaluate_sample(const Context& ctx, Mask F, const std::vector<int>& S, const Rational& W, int ell);

}  // namespace vsep
