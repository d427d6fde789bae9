#pragma once

#include "vsep/schemes.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vsep {

// mwdsc v1: "radius <r>", "center <vertex> <weight>", "client <vertex>".
std::string mwdsc_to_text(const MwdscInstance& inst);
MwdscInstance parse_mwdsc(std::string_view text, std::shared_ptr<const PlaneGraph> g);

// solution v1
struct SolutionFile {
    Problem problem = Problem::Mwiso;
    Mode mode = Mode::Exact;
    Rational weight{0};
    std::vector<int> chosen;
    bool partial = false;
    std::string params;
    std::uint64_t seed = 0;
    std::vector<int> witness;  // MWDSC only: covering centre per client

    static SolutionFile from_report(Problem pb, const SolutionReport& r);
    static SolutionFile from_oracle(Problem pb, const OracleResult& r);
    std::string to_text() const;
    static SolutionFile parse(std::string_view text);
};

struct VerifyReport {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Recomputes feasibility and weight from the objects alone.
VerifyReport verify_mwiso(const ObjectFamily& fam, const SolutionFile& s);
// Recomputes distances with a fresh shortest-path search. An infeasible
// claim is accepted when all centres together leave some client uncovered.
VerifyReport verify_mwdsc(const MwdscInstance& inst, const SolutionFile& s);

// Random streams: stream 1 draws the triangulation, 2 the objects or
// centres, 3 the weights, 4 the clients and radius.
struct GeneratorConfig {
    std::uint64_t seed = 1;
    int n = 20;
    int objects = 8;
    int weight_min = 1;
    int weight_max = 10;
    int size_max = 3;
    bool disjoint = false;
    int clients = 10;
    int radius_min = 5;
    int radius_max = 30;
};

ObjectFamily generate_mwiso(const GeneratorConfig& cfg);
MwdscInstance generate_mwdsc(const GeneratorConfig& cfg);

}  // namespace vsep
