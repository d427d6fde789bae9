#include "oracles.hpp"

#include <doctest.h>

using namespace vsep;

namespace {

std::shared_ptr<Context> disjoint_context(std::uint64_t seed, int n, int k, int size) {
    auto rng = make_rng(seed, 1);
    auto g = std::make_shared<const PlaneGraph>(random_triangulation(n, rng));
    auto sets = random_vertex_sets(*g, k, size, true, rng);
    return Context::make(make_family(g, sets, random_weights(static_cast<int>(sets.size()), 1, 4, rng)));
}

}  // namespace

TEST_CASE("spoke conflicts match direct key comparison") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        // sites are the first five objects; the rest compete
        auto rng = make_rng(seed, 2);
        auto g = std::make_shared<const PlaneGraph>(random_triangulation(30, rng));
        auto sets = random_vertex_sets(*g, 5, 2, true, rng);
        if (sets.size() < 5) continue;
        auto extra = random_vertex_sets(*g, 4, 2, false, rng);
        sets.insert(sets.end(), extra.begin(), extra.end());
        auto ctx = Context::make(make_family(g, sets, random_weights(static_cast<int>(sets.size()), 1, 4, rng)));
        auto part = voronoi_partition(*ctx, oracle::all_ids(5));
        auto d = voronoi_diagram(*ctx, part);
        for (const auto& sp : spokes(*ctx, part, d)) {
            Mask direct = 0;
            for (int w : sp.path)
                for (int q = 0; q < ctx->family.size(); ++q)
                    if (q != sp.site && ctx->metric->spf(q).key[w] < ctx->metric->spf(sp.site).key[w]) direct |= bit(q);
            CHECK(sp.conflicts == direct);
            CHECK(part.cell[sp.vertex] == sp.site);
        }
    }
}

TEST_CASE("diamond interiors are unions of regions of the curve") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        auto ctx = disjoint_context(seed, 25, 5, 2);
        if (ctx->family.size() < 4) continue;
        auto part = voronoi_partition(*ctx, oracle::all_ids(ctx->family.size()));
        auto d = voronoi_diagram(*ctx, part);
        const auto& sd = ctx->sd->embedding();
        for (const auto& dm : diamonds(*ctx, part, d)) {
            std::vector<char> on(sd.n, 0), inside(sd.n, 0);
            for (int x : dm.walk) on[x] = 1;
            for (int v : dm.interior_vertices) {
                CHECK_FALSE(on[v]);
                inside[v] = 1;
            }
            // flood fill the subdivision with the curve removed
            std::vector<int> comp(sd.n, -1);
            int c = 0;
            for (int s = 0; s < sd.n; ++s) {
                if (on[s] || comp[s] >= 0) continue;
                std::vector<int> stack{s};
                comp[s] = c;
                while (!stack.empty()) {
                    int x = stack.back();
                    stack.pop_back();
                    for (int h : sd.rot[x]) {
                        int y = sd.head(h);
                        if (!on[y] && comp[y] < 0) {
                            comp[y] = c;
                            stack.push_back(y);
                        }
                    }
                }
                ++c;
            }
            std::vector<int> in_count(c, 0), out_count(c, 0);
            for (int v = 0; v < ctx->graph->vertex_count(); ++v)
                if (!on[v]) (inside[v] ? in_count : out_count)[comp[v]]++;
            for (int i = 0; i < c; ++i) CHECK((in_count[i] == 0 || out_count[i] == 0));
        }
    }
}

TEST_CASE("light families are taken whole") {
    auto ctx = disjoint_context(5, 30, 6, 1);
    REQUIRE(ctx->family.size() >= 4);
    Mask F = ctx->family.all();
    Rational W = ctx->family.weight(F) * 10;
    auto r = sample_family(*ctx, F, W, 10, 1);
    CHECK(r.direct);
    CHECK(r.attempts == 0);
    CHECK(r.sample == oracle::all_ids(ctx->family.size()));
}

TEST_CASE("ell below ten is rejected") {
    auto ctx = disjoint_context(5, 30, 6, 1);
    try {
        sample_family(*ctx, ctx->family.all(), Rational(1000), 9, 1);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::PreconditionWeight);
    }
}

TEST_CASE("samples respect the size window and lightness") {
    auto rng = make_rng(9, 1);
    auto g = std::make_shared<const PlaneGraph>(random_triangulation(80, rng));
    auto sets = random_vertex_sets(*g, 30, 1, true, rng);
    auto ctx = Context::make(make_family(g, sets, std::vector<Rational>(sets.size(), Rational(1))));
    Mask F = ctx->family.all();
    Rational W = ctx->family.weight(F);
    auto r = sample_family(*ctx, F, W, 10, 7);
    CHECK_FALSE(r.direct);
    CHECK(r.sample.size() >= 4);
    CHECK(r.sample.size() <= 20);
    CHECK(r.stats.max_spoke <= r.eta);
    CHECK(r.stats.max_diamond <= r.eta);
    // the same seed reproduces the sample
    CHECK(sample_family(*ctx, F, W, 10, 7).sample == r.sample);
}

TEST_CASE("threshold uses an upper bound on the logarithm") {
    Rational eta = sampling_threshold(Rational(100), 10);
    CHECK(eta > Rational(230258, 1000));
    CHECK(eta < Rational(230259, 1000) + Rational(1, 1000));
}
