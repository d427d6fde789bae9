#include "vsep/geometry.hpp"

#include "vsep/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace vsep {

namespace {

Rational cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

Rational abs_q(const Rational& q) { return sgn(q) < 0 ? Rational(-q) : q; }

// q on the closed segment ab (a != b).
bool on_segment(const Point& a, const Point& b, const Point& q) {
    if (sgn(cross(a, b, q)) != 0) return false;
    return std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= q.y &&
           q.y <= std::max(a.y, b.y);
}

bool segments_meet(const Point& a, const Point& b, const Point& c, const Point& d) {
    int d1 = sgn(cross(c, d, a)), d2 = sgn(cross(c, d, b));
    int d3 = sgn(cross(a, b, c)), d4 = sgn(cross(a, b, d));
    if (d1 * d2 < 0 && d3 * d4 < 0) return true;
    return on_segment(c, d, a) || on_segment(c, d, b) || on_segment(a, b, c) || on_segment(a, b, d);
}

// Single crossing point of two non-parallel closed segments.
std::optional<Point> crossing(const Point& a, const Point& b, const Point& c, const Point& d) {
    Rational den = (b.x - a.x) * (d.y - c.y) - (b.y - a.y) * (d.x - c.x);
    if (sgn(den) == 0) return std::nullopt;
    Rational t = ((c.x - a.x) * (d.y - c.y) - (c.y - a.y) * (d.x - c.x)) / den;
    Rational u = ((c.x - a.x) * (b.y - a.y) - (c.y - a.y) * (b.x - a.x)) / den;
    if (sgn(t) < 0 || t > 1 || sgn(u) < 0 || u > 1) return std::nullopt;
    return Point{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

// Counter-clockwise angular order of direction vectors starting at +x.
bool angle_less(const Point& a, const Point& b) {
    auto upper = [](const Point& d) { return sgn(d.y) > 0 || (sgn(d.y) == 0 && sgn(d.x) > 0); };
    bool ua = upper(a), ub = upper(b);
    if (ua != ub) return ua;
    return sgn(a.x * b.y - a.y * b.x) > 0;
}

std::vector<int> ids_of(Mask m) {
    std::vector<int> out;
    for (; m; m &= m - 1) out.push_back(__builtin_ctzll(m));
    return out;
}

}  // namespace

const char* metric_name(PlaneMetric m) { return m == PlaneMetric::L2 ? "d2" : "dinf"; }

Length plane_distance(const Point& a, const Point& b, PlaneMetric m) {
    Rational dx = abs_q(a.x - b.x), dy = abs_q(a.y - b.y);
    if (m == PlaneMetric::Linf) return Length(std::max(dx, dy));
    return Length::sqrt_of(dx * dx + dy * dy);
}

CrossingGraph crossing_graph(const std::vector<Point>& input, PlaneMetric m) {
    std::vector<Point> points = input;
    for (auto& p : points) {
        p.x.canonicalize();
        p.y.canonicalize();
    }
    if (points.size() < 2) throw Error(Errc::InvalidArgument, "a crossing graph needs at least two points");
    std::map<Point, int> index;
    std::vector<Point> coords;
    auto id_of = [&](const Point& p) {
        auto [it, fresh] = index.emplace(p, static_cast<int>(coords.size()));
        if (fresh) coords.push_back(p);
        return it->second;
    };
    for (const auto& p : points) {
        if (index.count(p)) throw Error(Errc::DuplicatePoints, "repeated point " + to_string(p.x) + " " + to_string(p.y));
        id_of(p);
    }
    const int k = static_cast<int>(points.size());
    std::vector<std::array<int, 2>> segs;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) segs.push_back({i, j});
    const int S = static_cast<int>(segs.size());
    std::vector<std::vector<int>> on(S);
    for (int s = 0; s < S; ++s)
        for (int x = 0; x < k; ++x)
            if (on_segment(points[segs[s][0]], points[segs[s][1]], points[x])) on[s].push_back(x);
    // A crossing on segment s is found from some segment not parallel to s.
    for (int s = 0; s < S; ++s)
        for (int t = s + 1; t < S; ++t) {
            auto q = crossing(points[segs[s][0]], points[segs[s][1]], points[segs[t][0]], points[segs[t][1]]);
            if (!q) continue;
            int v = id_of(*q);
            on[s].push_back(v);
            on[t].push_back(v);
        }
    const int n = static_cast<int>(coords.size());
    if (static_cast<double>(n) > static_cast<double>(k) * k * k * k)
        throw Error(Errc::Internal, "crossing graph exceeds |X|^4 vertices");
    std::set<std::pair<int, int>> pairs;
    for (int s = 0; s < S; ++s) {
        auto& vs = on[s];
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        const Point& a = points[segs[s][0]];
        const Point& b = points[segs[s][1]];
        Point dir{b.x - a.x, b.y - a.y};
        std::sort(vs.begin(), vs.end(), [&](int u, int v) {
            return (coords[u].x - a.x) * dir.x + (coords[u].y - a.y) * dir.y <
                   (coords[v].x - a.x) * dir.x + (coords[v].y - a.y) * dir.y;
        });
        for (std::size_t i = 0; i + 1 < vs.size(); ++i)
            pairs.insert({std::min(vs[i], vs[i + 1]), std::max(vs[i], vs[i + 1])});
    }
    std::vector<PlaneGraph::Edge> edges;
    std::vector<std::vector<int>> rot(n);
    for (auto [u, v] : pairs) {
        rot[u].push_back(static_cast<int>(edges.size()));
        rot[v].push_back(static_cast<int>(edges.size()));
        edges.push_back({u, v, plane_distance(coords[u], coords[v], m)});
    }
    for (int v = 0; v < n; ++v) {
        auto dir = [&](int e) {
            int w = edges[e].u == v ? edges[e].v : edges[e].u;
            return Point{coords[w].x - coords[v].x, coords[w].y - coords[v].y};
        };
        // clockwise
        std::sort(rot[v].begin(), rot[v].end(), [&](int e, int f) { return angle_less(dir(f), dir(e)); });
    }
    CrossingGraph cg;
    cg.graph = std::make_shared<const PlaneGraph>(PlaneGraph::build(n, std::move(edges), rot));
    cg.coords = std::move(coords);
    for (int i = 0; i < k; ++i) cg.anchor.push_back(i);
    cg.metric = m;
    return cg;
}

void check_simple(const Polygon& p) {
    const int n = static_cast<int>(p.pts.size());
    if (n < 3) throw Error(Errc::NonSimplePolygon, "a polygon needs at least three vertices");
    std::set<Point> seen(p.pts.begin(), p.pts.end());
    if (static_cast<int>(seen.size()) != n) throw Error(Errc::NonSimplePolygon, "repeated polygon vertex");
    auto at = [&](int i) { return p.pts[(i % n + n) % n]; };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Point &a = at(i), &b = at(i + 1), &c = at(j), &d = at(j + 1);
            bool next = j == i + 1, wrap = i == 0 && j == n - 1;
            if (next) {
                // share b == c; reject folding back along the same line
                if (sgn(cross(a, b, d)) == 0 && (on_segment(a, b, d) || on_segment(c, d, a)))
                    throw Error(Errc::NonSimplePolygon, "consecutive edges overlap");
            } else if (wrap) {
                // share a == d
                if (sgn(cross(c, d, b)) == 0 && (on_segment(c, d, b) || on_segment(a, b, c)))
                    throw Error(Errc::NonSimplePolygon, "consecutive edges overlap");
            } else if (segments_meet(a, b, c, d)) {
                throw Error(Errc::NonSimplePolygon, "edges " + std::to_string(i) + " and " + std::to_string(j) + " meet");
            }
        }
}

bool polygon_contains(const Polygon& p, const Point& q) {
    const int n = static_cast<int>(p.pts.size());
    bool inside = false;
    for (int i = 0; i < n; ++i) {
        const Point& a = p.pts[i];
        const Point& b = p.pts[(i + 1) % n];
        if (on_segment(a, b, q)) return true;
        if ((a.y > q.y) != (b.y > q.y)) {
            Rational x = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (q.x < x) inside = !inside;
        }
    }
    return inside;
}

bool polygons_intersect(const Polygon& a, const Polygon& b) {
    const int na = static_cast<int>(a.pts.size()), nb = static_cast<int>(b.pts.size());
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            if (segments_meet(a.pts[i], a.pts[(i + 1) % na], b.pts[j], b.pts[(j + 1) % nb])) return true;
    return polygon_contains(a, b.pts[0]) || polygon_contains(b, a.pts[0]);
}

PolygonReduction reduce_polygons(const std::vector<Polygon>& polys) {
    if (polys.empty()) throw Error(Errc::InvalidArgument, "no polygons");
    if (polys.size() > static_cast<std::size_t>(kMaskBits)) throw Error(Errc::TooLarge, "at most 64 polygons");
    std::set<Point> xs;
    for (const auto& p : polys) {
        check_simple(p);
        xs.insert(p.pts.begin(), p.pts.end());
    }
    PolygonReduction out;
    out.cg = crossing_graph(std::vector<Point>(xs.begin(), xs.end()), PlaneMetric::Linf);
    const auto& g = *out.cg.graph;
    const int n = g.vertex_count();
    std::vector<GraphObject> objs;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        std::vector<char> in(n, 0);
        std::vector<int> verts;
        for (int v = 0; v < n; ++v)
            if (polygon_contains(polys[i], out.cg.coords[v])) {
                in[v] = 1;
                verts.push_back(v);
            }
        if (verts.empty()) throw Error(Errc::EmptyObject, "polygon " + std::to_string(i) + " captures no vertex");
        // connectivity is asserted rather than assumed
        std::vector<char> seen(n, 0);
        std::vector<int> stack{verts[0]};
        seen[verts[0]] = 1;
        std::size_t reached = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++reached;
            for (int h : g.embedding().rot[v]) {
                int w = g.embedding().head(h);
                if (in[w] && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        if (reached != verts.size()) throw Error(Errc::Internal, "polygon " + std::to_string(i) + " captures a disconnected set");
        objs.push_back(ObjectFamily::make_object(g, static_cast<int>(i), polys[i].weight, std::move(verts)));
    }
    out.family = ObjectFamily(out.cg.graph, std::move(objs));
    return out;
}

bool shape_covers(Shape s, const Point& centre, const Point& q) {
    Rational dx = abs_q(centre.x - q.x), dy = abs_q(centre.y - q.y);
    const Rational half(1, 2);
    if (s == Shape::UnitSquare) return dx <= half && dy <= half;
    return dx * dx + dy * dy <= half * half;
}

CoverReduction reduce_cover(Shape s, const std::vector<WeightedCenter>& centers, const std::vector<Point>& clients) {
    std::set<Point> cs, us;
    for (const auto& c : centers)
        if (!cs.insert(c.c).second) throw Error(Errc::DuplicatePoints, "two shapes share a centre");
    for (const auto& q : clients)
        if (!us.insert(q).second) throw Error(Errc::DuplicatePoints, "repeated client");
    std::set<Point> xs = cs;
    xs.insert(us.begin(), us.end());
    if (xs.size() < 2) throw Error(Errc::InvalidArgument, "a cover instance needs at least two distinct points");
    CoverReduction out;
    std::vector<Point> xv(xs.begin(), xs.end());
    out.cg = crossing_graph(xv, s == Shape::UnitDisk ? PlaneMetric::L2 : PlaneMetric::Linf);
    auto vertex = [&](const Point& p) {
        return out.cg.anchor[std::lower_bound(xv.begin(), xv.end(), p) - xv.begin()];
    };
    auto& inst = out.instance;
    inst.graph = out.cg.graph;
    for (const auto& c : centers) {
        inst.centers.push_back(vertex(c.c));
        inst.weights.push_back(c.weight);
    }
    for (const auto& q : clients) inst.clients.push_back(vertex(q));
    inst.radius = Rational(1, 2);
    return out;
}

OracleResult geometric_mwisp(const std::vector<Polygon>& polys) {
    const int N = static_cast<int>(polys.size());
    if (N > 24) throw Error(Errc::TooLarge, "geometric MWISP oracle is capped at 24 polygons");
    std::vector<Mask> clash(N, 0);
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            if (polygons_intersect(polys[i], polys[j])) {
                clash[i] |= bit(j);
                clash[j] |= bit(i);
            }
    OracleResult res;
    Mask best = 0;
    for (Mask m = 0; m < (Mask{1} << N); ++m) {
        bool ok = true;
        Rational w(0);
        for (Mask r = m; r && ok; r &= r - 1) {
            int i = __builtin_ctzll(r);
            ok = (clash[i] & m) == 0;
            w += polys[i].weight;
        }
        if (!ok) continue;
        ++res.count;
        if (w > res.value || (w == res.value && ids_of(m) < ids_of(best))) {
            res.value = w;
            best = m;
        }
    }
    res.solution = ids_of(best);
    return res;
}

OracleResult geometric_cover(Shape s, const std::vector<WeightedCenter>& centers, const std::vector<Point>& clients) {
    if (clients.size() > static_cast<std::size_t>(kMaskBits)) throw Error(Errc::TooLarge, "at most 64 clients");
    std::vector<Mask> cover;
    std::vector<Rational> w;
    for (const auto& c : centers) {
        Mask m = 0;
        for (std::size_t i = 0; i < clients.size(); ++i)
            if (shape_covers(s, c.c, clients[i])) m |= bit(static_cast<int>(i));
        cover.push_back(m);
        w.push_back(c.weight);
    }
    const int N = static_cast<int>(centers.size());
    const Mask pool = N >= kMaskBits ? ~Mask{0} : (Mask{1} << N) - 1;
    const int C = static_cast<int>(clients.size());
    const Mask need = C >= kMaskBits ? ~Mask{0} : (Mask{1} << C) - 1;
    return exact_cover(cover, w, pool, need);
}

namespace {

Point point_at(const std::vector<std::string>& tok, std::size_t i) {
    if (i + 1 >= tok.size()) throw Error(Errc::ParseError, "missing coordinate on '" + tok[0] + "' line");
    return Point{parse_rational(tok[i]), parse_rational(tok[i + 1])};
}

}  // namespace

std::string GeometryInput::to_text() const {
    std::ostringstream out;
    out << "geometry v1\n";
    auto pt = [&](const Point& p) { out << " " << to_string(p.x) << " " << to_string(p.y); };
    for (const auto& p : points) {
        out << "point";
        pt(p);
        out << "\n";
    }
    for (const auto& p : polygons) {
        out << "polygon " << to_string(p.weight);
        for (const auto& q : p.pts) pt(q);
        out << "\n";
    }
    for (const auto& d : disks) {
        out << "disk " << to_string(d.weight);
        pt(d.c);
        out << "\n";
    }
    for (const auto& d : squares) {
        out << "square " << to_string(d.weight);
        pt(d.c);
        out << "\n";
    }
    for (const auto& q : clients) {
        out << "client";
        pt(q);
        out << "\n";
    }
    return out.str();
}

GeometryInput GeometryInput::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    bool header = false;
    GeometryInput g;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (!header) {
            if (tok.size() != 2 || tok[0] != "geometry" || tok[1] != "v1")
                throw Error(Errc::ParseError, "expected header 'geometry v1'");
            header = true;
            continue;
        }
        const auto& kind = tok[0];
        if (kind == "point" || kind == "client") {
            if (tok.size() != 3) throw Error(Errc::ParseError, "'" + kind + "' takes two coordinates");
            (kind == "point" ? g.points : g.clients).push_back(point_at(tok, 1));
        } else if (kind == "disk" || kind == "square") {
            if (tok.size() != 4) throw Error(Errc::ParseError, "'" + kind + "' takes a weight and two coordinates");
            (kind == "disk" ? g.disks : g.squares).push_back({parse_rational(tok[1]), point_at(tok, 2)});
        } else if (kind == "polygon") {
            if (tok.size() < 2 || tok.size() % 2 != 0)
                throw Error(Errc::ParseError, "'polygon' takes a weight and coordinate pairs");
            Polygon p;
            p.weight = parse_rational(tok[1]);
            for (std::size_t i = 2; i < tok.size(); i += 2) p.pts.push_back(point_at(tok, i));
            g.polygons.push_back(std::move(p));
        } else {
            throw Error(Errc::ParseError, "unknown line '" + kind + "'");
        }
    }
    if (!header) throw Error(Errc::ParseError, "missing header");
    return g;
}

}  // namespace vsep
