#pragma once

#include "vsep/exact.hpp"
#include "vsep/separators.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace vsep {

enum class Problem { Mwiso, Mwdsc };
enum class Profile { Paper, Desk };

struct SchemeParams {
    Problem problem = Problem::Mwiso;
    Profile profile = Profile::Desk;
    Rational epsilon{1, 5};
    int N = 0;
    Rational M{0};
    int d_max = 3;
    Rational eps_hat{0};
    long long s = 2;
    long long heavy_cap = 1;
    long long sep_length_cap = 2;
    int brute_force_threshold = 8;
    double candidate_budget = std::numeric_limits<double>::infinity();
    bool span_reduction = true;
    std::uint64_t seed = 1;
    int threads = 1;  // span-reduced sub-instances solved concurrently

    // Schedule with d_max = c ln(MN), eps_hat = eps/d_max (MWISO, c = 10) or
    // eps/(2 d_max) (MWDSC, c = 20), s = 1000 (1/eps_hat) ln(1/eps_hat).
    static SchemeParams paper(Problem pb, const Rational& epsilon, int N);
    // Requires eps < 1/10 (MWISO) or eps < 1/20 (MWDSC).
    // Small fixed values keeping the structure of the recursion.
    static SchemeParams desk(Problem pb, const Rational& epsilon, int N);

    std::string echo() const;
};

// Subsets of `pool` with at most `cap` elements in order of size, then
// lexicographically; only independent ones when `independent`.
void heavy_split(const ObjectFamily& fam, Mask pool, long long cap, bool independent,
                 const std::function<void(Mask)>& fn);

// One sub-family per object p (in id order): weights in (w(p)/M, w(p)].
std::vector<Mask> span_reduce_mwiso(const ObjectFamily& fam, const Rational& epsilon);

struct SpanInstance {
    Mask members = 0;
    std::vector<Rational> weights;  // per centre id; only members are meaningful
};
// Per centre p: drop heavier centres and raise weights below w(p)/M to w(p)/M.
std::vector<SpanInstance> span_reduce_mwdsc(const std::vector<Rational>& weights, const Rational& epsilon);

Rational span(const std::vector<Rational>& weights);

enum class Mode { Exact, Qptas, Infeasible };
const char* mode_name(Mode m);

struct SolveStats {
    long long nodes = 0;
    int max_depth = 0;
    long long candidates = 0;
    long long brute_force = 0;
};

struct SolutionReport {
    Mode mode = Mode::Exact;
    std::vector<int> chosen;       // sorted ids
    Rational weight{0};
    bool partial = false;          // the candidate budget was exceeded
    std::string note;
    SolveStats stats;
    SchemeParams params;
    // certificate: independence flag, or for each client the covering centre id (-1 if uncovered)
    bool independent = true;
    std::vector<int> cover_witness;
};

// Input graph need not be triangulated; objects keep their ids.
SolutionReport solve_mwiso(const ObjectFamily& fam, const SchemeParams& params);
SolutionReport solve_mwdsc(const MwdscInstance& inst, const SchemeParams& params);

// Family moved onto the triangulation of its graph.
ObjectFamily on_triangulation(const ObjectFamily& fam);

}  // namespace vsep
