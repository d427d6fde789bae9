#pragma once

#include "vsep/exact.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace vsep {

struct Point {
    Rational x, y;
    friend bool operator==(const Point&, const Point&) = default;
    friend bool operator<(const Point& a, const Point& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }
};

enum class PlaneMetric { L2, Linf };
const char* metric_name(PlaneMetric m);

Length plane_distance(const Point& a, const Point& b, PlaneMetric m);

// All segments between input points, cut at their mutual crossings.
struct CrossingGraph {
    std::shared_ptr<const PlaneGraph> graph;
    std::vector<Point> coords;  // vertex -> position
    std::vector<int> anchor;    // input point -> vertex
    PlaneMetric metric = PlaneMetric::L2;
};

// Needs at least two pairwise distinct points (DuplicatePoints otherwise).
CrossingGraph crossing_graph(const std::vector<Point>& points, PlaneMetric m);

struct Polygon {
    Rational weight{1};
    std::vector<Point> pts;
};

// Throws NonSimplePolygon when fewer than three vertices, repeated vertices,
// or edges meeting anywhere except shared endpoints of consecutive edges.
void check_simple(const Polygon& p);

// Closed containment.
bool polygon_contains(const Polygon& p, const Point& q);
// Closed sets intersect.
bool polygons_intersect(const Polygon& a, const Polygon& b);

struct PolygonReduction {
    CrossingGraph cg;
    ObjectFamily family;
};
PolygonReduction reduce_polygons(const std::vector<Polygon>& polys);

enum class Shape { UnitDisk, UnitSquare };

struct WeightedCenter {
    Rational weight{1};
    Point c;
};

// A unit disk has diameter 1 and a unit square side 1, so both cover the
// points within distance 1/2 of the centre (d2 and d-inf respectively).
bool shape_covers(Shape s, const Point& centre, const Point& q);

struct CoverReduction {
    CrossingGraph cg;
    MwdscInstance instance;
};
CoverReduction reduce_cover(Shape s, const std::vector<WeightedCenter>& centers, const std::vector<Point>& clients);

// Exhaustive optima on the geometric side.
OracleResult geometric_mwisp(const std::vector<Polygon>& polys);
OracleResult geometric_cover(Shape s, const std::vector<WeightedCenter>& centers, const std::vector<Point>& clients);

struct GeometryInput {
    std::vector<Point> points;
    std::vector<Polygon> polygons;
    std::vector<WeightedCenter> disks;
    std::vector<WeightedCenter> squares;
    std::vector<Point> clients;

    std::string to_text() const;
    static GeometryInput parse(std::string_view text);
};

}  // namespace vsep
