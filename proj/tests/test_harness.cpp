#include "oracles.hpp"

#include "vsep/harness.hpp"

#include <doctest.h>

using namespace vsep;

namespace {

std::shared_ptr<const PlaneGraph> small_graph(std::uint64_t seed, int n) {
    auto rng = make_rng(seed, 1);
    return std::make_shared<const PlaneGraph>(random_triangulation(n, rng));
}

}  // namespace

TEST_CASE("exact independent sets") {
    auto g = small_graph(1, 12);
    auto edgeless = make_family(g, {{0}, {1}, {2}, {3}}, {Rational(1), Rational(2), Rational(3), Rational(4)});
    // singletons may still be adjacent as vertices; objects only meet on shared vertices
    auto r = exact_mwiso(edgeless);
    CHECK(r.value == 10);
    CHECK(r.solution == std::vector<int>{0, 1, 2, 3});

    auto clique = make_family(g, {{5}, {5}, {5}}, {Rational(2), Rational(7), Rational(3)});
    auto c = exact_mwiso(clique);
    CHECK(c.value == 7);
    CHECK(c.solution == std::vector<int>{1});

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.n = 20;
        cfg.objects = 10;
        auto fam = generate_mwiso(cfg);
        auto a = exact_mwiso(fam);
        auto b = exact_mwiso_unpruned(fam);
        CHECK(a.value == b.value);
        CHECK(a.solution == b.solution);
        CHECK(fam.weight(a.solution) == a.value);
        CHECK(fam.independent(a.solution));
    }
}

TEST_CASE("exact covers") {
    MwdscInstance inst;
    inst.graph = small_graph(2, 12);
    inst.centers = {0, 1};
    inst.weights = {Rational(2), Rational(5)};
    inst.radius = Rational(1000);
    auto none = exact_mwdsc(inst);
    CHECK(none.feasible);
    CHECK(none.value == 0);
    CHECK(none.solution.empty());

    inst.clients = {3, 4, 5, 6};
    auto one = exact_mwdsc(inst);
    CHECK(one.value == 2);
    CHECK(one.solution == std::vector<int>{0});

    inst.radius = Rational(0);
    CHECK_FALSE(exact_mwdsc(inst).feasible);
}

TEST_CASE("generators are deterministic") {
    GeneratorConfig cfg;
    cfg.seed = 77;
    cfg.n = 6;
    cfg.objects = 4;
    auto a = generate_mwiso(cfg);
    auto b = generate_mwiso(cfg);
    CHECK(a.graph().to_text() == b.graph().to_text());
    CHECK(a.to_text() == b.to_text());
    CHECK(a.graph().vertex_count() == 6);
    CHECK(a.graph().is_triangulated());
    CHECK(a.size() >= 1);

    cfg.seed = 78;
    CHECK(generate_mwiso(cfg).graph().to_text() != a.graph().to_text());

    // overlapping objects are allowed unless disjoint is requested
    bool overlap = false;
    for (std::uint64_t seed = 1; seed <= 10 && !overlap; ++seed) {
        GeneratorConfig c2;
        c2.seed = seed;
        c2.n = 12;
        c2.objects = 8;
        auto f = generate_mwiso(c2);
        overlap = !f.independent(f.all());
    }
    CHECK(overlap);

    cfg.clients = 3;
    auto m1 = generate_mwdsc(cfg);
    auto m2 = generate_mwdsc(cfg);
    CHECK(mwdsc_to_text(m1) == mwdsc_to_text(m2));
    CHECK(m1.clients.size() == 3);
}

TEST_CASE("instance and solution text formats") {
    GeneratorConfig cfg;
    cfg.seed = 5;
    cfg.n = 15;
    auto inst = generate_mwdsc(cfg);
    auto text = mwdsc_to_text(inst);
    CHECK(mwdsc_to_text(parse_mwdsc(text, inst.graph)) == text);
    CHECK_THROWS_AS(parse_mwdsc("mwdsc v1\ncenter 0 1\n", inst.graph), Error);
    CHECK_THROWS_AS(parse_mwdsc("mwdsc v2\nradius 1\n", inst.graph), Error);

    SolutionFile s;
    s.problem = Problem::Mwdsc;
    s.mode = Mode::Qptas;
    s.weight = Rational(7, 2);
    s.chosen = {1, 4};
    s.partial = true;
    s.params = "problem=mwdsc profile=desk";
    s.seed = 9;
    s.witness = {1, 1, 4};
    auto st = s.to_text();
    auto back = SolutionFile::parse(st);
    CHECK(back.to_text() == st);
    CHECK(back.weight == Rational(7, 2));
    CHECK(back.witness == std::vector<int>{1, 1, 4});
    CHECK_THROWS_AS(SolutionFile::parse("solution v1\nmode maybe\n"), Error);
}

TEST_CASE("verification rejects bad solutions") {
    auto g = small_graph(3, 12);
    auto fam = make_family(g, {{0}, {0}, {1}}, {Rational(1), Rational(2), Rational(3)});
    SolutionFile s;
    s.chosen = {1, 2};
    s.weight = Rational(5);
    CHECK(verify_mwiso(fam, s).ok());
    s.weight = Rational(4);
    CHECK_FALSE(verify_mwiso(fam, s).ok());
    s.chosen = {0, 1};
    s.weight = Rational(3);
    CHECK_FALSE(verify_mwiso(fam, s).ok());
    s.chosen = {7};
    CHECK_FALSE(verify_mwiso(fam, s).ok());

    MwdscInstance inst;
    inst.graph = g;
    inst.centers = {0, 1};
    inst.weights = {Rational(1), Rational(1)};
    inst.clients = {0, 1};
    inst.radius = Rational(0);
    SolutionFile c;
    c.problem = Problem::Mwdsc;
    c.chosen = {0, 1};
    c.weight = Rational(2);
    c.witness = {0, 1};
    CHECK(verify_mwdsc(inst, c).ok());
    c.witness = {1, 1};
    CHECK_FALSE(verify_mwdsc(inst, c).ok());
    c.witness.clear();
    c.chosen = {0};
    c.weight = Rational(1);
    CHECK_FALSE(verify_mwdsc(inst, c).ok());
    c.mode = Mode::Infeasible;
    CHECK_FALSE(verify_mwdsc(inst, c).ok());
}
