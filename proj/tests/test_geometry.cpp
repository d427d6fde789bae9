#include "oracles.hpp"

#include "vsep/geometry.hpp"

#include <doctest.h>

using namespace vsep;

namespace {

Point pt(int x, int y, int den = 1) { return {Rational(Rational(x) / den), Rational(Rational(y) / den)}; }

void check_distances(const CrossingGraph& cg, const std::vector<Point>& pts) {
    for (std::size_t a = 0; a < pts.size(); ++a) {
        auto t = dijkstra(*cg.graph, {cg.anchor[a]});
        for (std::size_t b = 0; b < pts.size(); ++b)
            CHECK(t.key[cg.anchor[b]].length == plane_distance(pts[a], pts[b], cg.metric));
    }
}

std::vector<Point> random_points(std::mt19937_64& rng, int k, int hi, int den) {
    std::set<Point> seen;
    std::vector<Point> out;
    std::uniform_int_distribution<int> c(0, hi);
    while (static_cast<int>(out.size()) < k) {
        Point p = pt(c(rng), c(rng), den);
        if (seen.insert(p).second) out.push_back(p);
    }
    return out;
}

}  // namespace

TEST_CASE("two points give one edge") {
    auto cg = crossing_graph({pt(0, 0), pt(3, 4)}, PlaneMetric::L2);
    CHECK(cg.graph->vertex_count() == 2);
    CHECK(cg.graph->edge_count() == 1);
    CHECK(cg.graph->edge(0).w == Length(Rational(5)));
}

TEST_CASE("unit square under d2 and d-inf") {
    std::vector<Point> sq{pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)};
    auto cg = crossing_graph(sq, PlaneMetric::L2);
    CHECK(cg.graph->vertex_count() == 5);
    int centre = -1;
    for (int v = 0; v < 5; ++v)
        if (cg.coords[v] == pt(1, 1, 2)) centre = v;
    REQUIRE(centre >= 0);
    CHECK(cg.graph->embedding().rot[centre].size() == 4);
    check_distances(cg, sq);

    auto ci = crossing_graph(sq, PlaneMetric::Linf);
    CHECK(ci.graph->vertex_count() == 5);
    for (int a = 0; a < 4; ++a) {
        auto t = dijkstra(*ci.graph, {ci.anchor[a]});
        for (int b = 0; b < 4; ++b)
            if (a != b) CHECK(t.key[ci.anchor[b]].length == Length(Rational(1)));
    }
}

TEST_CASE("crossing graphs preserve distances") {
    auto rng = make_rng(21, 1);
    for (int trial = 0; trial < 20; ++trial) {
        auto pts = random_points(rng, 5, 12, 2);
        for (auto m : {PlaneMetric::L2, PlaneMetric::Linf}) {
            auto cg = crossing_graph(pts, m);
            CHECK(cg.graph->vertex_count() <= 5 * 5 * 5 * 5);
            check_distances(cg, pts);
        }
    }
}

TEST_CASE("collinear points are merged along the line") {
    auto cg = crossing_graph({pt(0, 0), pt(1, 1), pt(2, 2), pt(0, 2)}, PlaneMetric::Linf);
    CHECK(cg.graph->vertex_count() == 4);
    check_distances(cg, {pt(0, 0), pt(1, 1), pt(2, 2), pt(0, 2)});
}

TEST_CASE("input errors") {
    CHECK_THROWS_AS(crossing_graph({pt(1, 1), pt(1, 1)}, PlaneMetric::L2), Error);
    try {
        crossing_graph({pt(1, 1), pt(2, 2), pt(1, 1)}, PlaneMetric::L2);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DuplicatePoints);
    }
    try {
        check_simple(Polygon{Rational(1), {pt(0, 0), pt(1, 1), pt(1, 0), pt(0, 1)}});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonSimplePolygon);
    }
    CHECK_THROWS_AS(check_simple(Polygon{Rational(1), {pt(0, 0), pt(1, 1)}}), Error);
}

TEST_CASE("polygon reduction examples") {
    Polygon a{Rational(1), {pt(0, 0), pt(1, 0), pt(0, 1)}};
    Polygon b{Rational(2), {pt(10, 10), pt(11, 10), pt(10, 11)}};
    auto far = reduce_polygons({a, b});
    CHECK_FALSE(far.family.intersects(0, 1));
    CHECK(far.family[0].vertices.size() >= 3);
    CHECK(far.family[1].vertices.size() >= 3);

    Polygon c{Rational(1), {pt(0, 0), pt(2, 0), pt(0, 2)}};
    Polygon d{Rational(1), {pt(2, 0), pt(4, 0), pt(4, 2)}};
    CHECK(reduce_polygons({c, d}).family.intersects(0, 1));

    Polygon outer{Rational(1), {pt(0, 0), pt(10, 0), pt(10, 10), pt(0, 10)}};
    Polygon inner{Rational(1), {pt(3, 3), pt(6, 3), pt(6, 6), pt(3, 6)}};
    auto nest = reduce_polygons({outer, inner});
    CHECK(nest.family.intersects(0, 1));
    const auto& ov = nest.family[0].vertices;
    for (int v : nest.family[1].vertices) CHECK(std::binary_search(ov.begin(), ov.end(), v));
}

TEST_CASE("polygon reduction matches geometric overlap") {
    auto rng = make_rng(22, 1);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<Polygon> polys;
        std::uniform_int_distribution<int> c(0, 12), s(1, 4), w(1, 9);
        for (int i = 0; i < 4; ++i) {
            int x = c(rng), y = c(rng), dx = s(rng), dy = s(rng);
            if (i % 2) polys.push_back({Rational(w(rng)), {pt(x, y), pt(x + dx, y), pt(x + dx, y + dy), pt(x, y + dy)}});
            else polys.push_back({Rational(w(rng)), {pt(x, y), pt(x + dx, y), pt(x, y + dy)}});
        }
        PolygonReduction red;
        try {
            red = reduce_polygons(polys);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::DuplicatePoints);
            continue;
        }
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) CHECK(red.family.intersects(i, j) == polygons_intersect(polys[i], polys[j]));
        CHECK(exact_mwiso(red.family).value == geometric_mwisp(polys).value);
    }
}

TEST_CASE("cover boundary cases") {
    // square of side 1 centred at the origin covers the corner (1/2, 1/2)
    auto r1 = reduce_cover(Shape::UnitSquare, {{Rational(1), pt(0, 0)}}, {pt(1, 1, 2)});
    CHECK(r1.instance.radius == Rational(1, 2));
    CHECK(exact_mwdsc(r1.instance).feasible);
    auto r2 = reduce_cover(Shape::UnitSquare, {{Rational(1), pt(0, 0)}}, {pt(51, 0, 100)});
    CHECK_FALSE(exact_mwdsc(r2.instance).feasible);
    // disk of diameter 1: (3/10, 2/5) lies on the boundary
    auto r3 = reduce_cover(Shape::UnitDisk, {{Rational(1), pt(0, 0)}}, {pt(3, 4, 10)});
    CHECK(exact_mwdsc(r3.instance).feasible);
    auto r4 = reduce_cover(Shape::UnitDisk, {{Rational(1), pt(0, 0)}}, {pt(31, 40, 100)});
    CHECK_FALSE(exact_mwdsc(r4.instance).feasible);
    // a client on top of a centre is covered at distance zero
    auto r5 = reduce_cover(Shape::UnitDisk, {{Rational(3), pt(0, 0)}, {Rational(1), pt(5, 5)}}, {pt(0, 0)});
    auto o5 = exact_mwdsc(r5.instance);
    CHECK(o5.feasible);
    CHECK(o5.value == 3);
    CHECK(o5.solution == std::vector<int>{0});
}

TEST_CASE("cover reduction matches geometric containment") {
    auto rng = make_rng(23, 1);
    for (int trial = 0; trial < 20; ++trial) {
        auto pts = random_points(rng, 13, 8, 4);
        std::vector<WeightedCenter> centers;
        std::uniform_int_distribution<int> w(1, 9);
        for (int i = 0; i < 5; ++i) centers.push_back({Rational(w(rng)), pts[i]});
        std::vector<Point> clients(pts.begin() + 5, pts.end());
        for (auto s : {Shape::UnitDisk, Shape::UnitSquare}) {
            auto red = reduce_cover(s, centers, clients);
            auto cover = cover_masks(red.instance);
            for (int q = 0; q < 5; ++q)
                for (int i = 0; i < 8; ++i)
                    CHECK(((cover[q] >> i & 1) != 0) == shape_covers(s, centers[q].c, clients[i]));
            auto a = exact_mwdsc(red.instance);
            auto b = geometric_cover(s, centers, clients);
            CHECK(a.feasible == b.feasible);
            if (a.feasible) CHECK(a.value == b.value);
        }
    }
}

TEST_CASE("geometry text round trip") {
    GeometryInput in;
    in.points = {pt(0, 0), pt(1, 3, 2)};
    in.polygons = {{Rational(2), {pt(0, 0), pt(1, 0), pt(0, 1)}}};
    in.disks = {{Rational(3), pt(1, 1, 4)}};
    in.squares = {{Rational(Rational(5) / 2), pt(2, 2)}};
    in.clients = {pt(7, 1, 3)};
    auto text = in.to_text();
    auto back = GeometryInput::parse(text);
    CHECK(back.to_text() == text);
    CHECK(back.clients[0] == pt(7, 1, 3));
    CHECK_THROWS_AS(GeometryInput::parse("geometry v1\ndisk 1 0\n"), Error);
}
