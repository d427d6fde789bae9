#include "vsep/plane_graph.hpp"

#include "vsep/error.hpp"

#include <algorithm>
#include <sstream>

namespace vsep {

namespace {

long long pair_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<long long>(a) << 32) | static_cast<unsigned>(b);
}

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

int parse_int(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw Error(Errc::ParseError, std::string("malformed ") + what + " '" + s + "'");
    }
}

}  // namespace

PlaneGraph PlaneGraph::build(int n, std::vector<Edge> edges, const std::vector<std::vector<int>>& rotations) {
    if (n < 1) throw Error(Errc::InvalidArgument, "graph needs at least one vertex");
    if (static_cast<int>(rotations.size()) != n) throw Error(Errc::ParseError, "rotation count differs from vertex count");
    PlaneGraph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    const int m = g.edge_count();
    for (int e = 0; e < m; ++e) {
        const auto& ed = g.edges_[e];
        if (ed.u < 0 || ed.u >= n || ed.v < 0 || ed.v >= n)
            throw Error(Errc::ParseError, "edge " + std::to_string(e) + " has an endpoint out of range");
        if (ed.u == ed.v) throw Error(Errc::NotSimple, "edge " + std::to_string(e) + " is a loop");
        if (!ed.w.is_inf() && ed.w.sign() <= 0)
            throw Error(Errc::NonPositiveWeight, "edge " + std::to_string(e) + " has non-positive weight");
        if (!g.edge_index_.emplace(pair_key(ed.u, ed.v), e).second)
            throw Error(Errc::NotSimple, "parallel edges between " + std::to_string(ed.u) + " and " + std::to_string(ed.v));
    }
    g.emb_.n = n;
    g.emb_.ends.resize(m);
    for (int e = 0; e < m; ++e) g.emb_.ends[e] = {g.edges_[e].u, g.edges_[e].v};
    g.emb_.rot.assign(n, {});
    std::vector<int> seen(2 * m, 0);
    for (int v = 0; v < n; ++v) {
        for (int e : rotations[v]) {
            if (e < 0 || e >= m) throw Error(Errc::ParseError, "rotation of " + std::to_string(v) + " names unknown edge");
            const auto& ed = g.edges_[e];
            if (ed.u != v && ed.v != v)
                throw Error(Errc::ParseError, "rotation of " + std::to_string(v) + " names non-incident edge " + std::to_string(e));
            int h = ed.u == v ? 2 * e : 2 * e + 1;
            if (seen[h]++) throw Error(Errc::ParseError, "edge " + std::to_string(e) + " repeated in rotation of " + std::to_string(v));
            g.emb_.rot[v].push_back(h);
        }
    }
    for (int h = 0; h < 2 * m; ++h)
        if (!seen[h]) throw Error(Errc::ParseError, "edge " + std::to_string(h / 2) + " missing from a rotation");
    if (!g.emb_.connected()) throw Error(Errc::Disconnected, "graph is not connected");
    g.emb_.finalize();
    if (n - m + g.emb_.face_count() != 2)
        throw Error(Errc::EulerViolation, "rotation system is not planar: V-E+F = " + std::to_string(n - m + g.emb_.face_count()));
    return g;
}

std::vector<std::vector<int>> PlaneGraph::rotations() const {
    std::vector<std::vector<int>> out(n_);
    for (int v = 0; v < n_; ++v)
        for (int h : emb_.rot[v]) out[v].push_back(h >> 1);
    return out;
}

std::vector<std::pair<int, int>> PlaneGraph::face_corners(int f) const {
    std::vector<std::pair<int, int>> out;
    for (int h : emb_.faces[f]) out.emplace_back(emb_.tail(h), h >> 1);
    return out;
}

std::vector<int> PlaneGraph::face_vertices(int f) const {
    std::vector<int> out;
    for (int h : emb_.faces[f]) out.push_back(emb_.tail(h));
    return out;
}

int PlaneGraph::find_edge(int u, int v) const {
    auto it = edge_index_.find(pair_key(u, v));
    return it == edge_index_.end() ? -1 : it->second;
}

bool PlaneGraph::is_triangulated() const {
    for (const auto& f : emb_.faces)
        if (f.size() != 3) return false;
    return true;
}

PlaneGraph PlaneGraph::triangulate() const {
    PlaneGraph g = *this;
    if (n_ < 3) return g;
    for (;;) {
        int target = -1;
        for (int f = 0; f < g.face_count(); ++f)
            if (g.emb_.faces[f].size() > 3) {
                target = f;
                break;
            }
        if (target < 0) break;
        const auto hf = g.emb_.faces[target];
        const int k = static_cast<int>(hf.size());
        auto t = [&](int i) { return g.emb_.tail(hf[((i % k) + k) % k]); };
        int ci = -1, cj = -1;
        for (int i = 0; i < k && ci < 0; ++i) {
            int a = t(i - 1), b = t(i + 1);
            if (a != b && g.find_edge(a, b) < 0) {
                ci = ((i - 1) % k + k) % k;
                cj = (i + 1) % k;
            }
        }
        for (int i = 0; i < k && ci < 0; ++i)
            for (int j = i + 2; j < k && ci < 0; ++j) {
                if (i == 0 && j == k - 1) continue;
                if (t(i) != t(j) && g.find_edge(t(i), t(j)) < 0) {
                    ci = i;
                    cj = j;
                }
            }
        if (ci < 0) throw Error(Errc::Internal, "no admissible chord in face");
        int a = t(ci), b = t(cj);
        int e = g.edge_count();
        g.edges_.push_back({a, b, Length::infinity()});
        g.edge_index_.emplace(pair_key(a, b), e);
        g.emb_.ends.push_back({a, b});
        auto& ra = g.emb_.rot[a];
        ra.insert(ra.begin() + g.emb_.pos[hf[ci]], 2 * e);
        auto& rb = g.emb_.rot[b];
        rb.insert(rb.begin() + g.emb_.pos[hf[cj]], 2 * e + 1);
        g.emb_.finalize();
    }
    if (g.n_ - g.edge_count() + g.face_count() != 2) throw Error(Errc::Internal, "triangulation broke Euler");
    return g;
}

std::string PlaneGraph::to_text() const {
    std::ostringstream out;
    out << "planar-graph v1\n";
    out << "vertices " << n_ << "\n";
    for (int e = 0; e < edge_count(); ++e)
        out << "edge " << e << " " << edges_[e].u << " " << edges_[e].v << " " << edges_[e].w.str() << "\n";
    auto rot = rotations();
    for (int v = 0; v < n_; ++v) {
        out << "rotation " << v << ":";
        for (int e : rot[v]) out << " " << e;
        out << "\n";
    }
    return out.str();
}

PlaneGraph PlaneGraph::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    bool header = false;
    int n = -1;
    std::vector<std::pair<int, Edge>> raw_edges;
    std::vector<std::vector<int>> rot;
    std::vector<char> rot_seen;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto tok = split_ws(line);
        if (tok.empty()) continue;
        if (!header) {
            if (tok.size() != 2 || tok[0] != "planar-graph" || tok[1] != "v1")
                throw Error(Errc::ParseError, "expected header 'planar-graph v1'");
            header = true;
            continue;
        }
        if (tok[0] == "vertices") {
            if (tok.size() != 2 || n >= 0) throw Error(Errc::ParseError, "bad vertices line");
            n = parse_int(tok[1], "vertex count");
            if (n < 1) throw Error(Errc::ParseError, "vertex count must be positive");
            rot.assign(n, {});
            rot_seen.assign(n, 0);
        } else if (tok[0] == "edge") {
            if (tok.size() != 5) throw Error(Errc::ParseError, "edge line needs id, endpoints and weight");
            Edge e;
            int id = parse_int(tok[1], "edge id");
            e.u = parse_int(tok[2], "endpoint");
            e.v = parse_int(tok[3], "endpoint");
            e.w = Length::parse(tok[4]);
            raw_edges.emplace_back(id, std::move(e));
        } else if (tok[0] == "rotation") {
            if (n < 0) throw Error(Errc::ParseError, "rotation before vertices line");
            std::string vs = tok.size() > 1 ? tok[1] : "";
            if (vs.empty() || vs.back() != ':') throw Error(Errc::ParseError, "rotation line needs '<v>:'");
            vs.pop_back();
            int v = parse_int(vs, "vertex");
            if (v < 0 || v >= n) throw Error(Errc::ParseError, "rotation vertex out of range");
            if (rot_seen[v]++) throw Error(Errc::ParseError, "duplicate rotation for vertex " + vs);
            for (std::size_t i = 2; i < tok.size(); ++i) rot[v].push_back(parse_int(tok[i], "edge id"));
        } else {
            throw Error(Errc::ParseError, "unknown line '" + tok[0] + "'");
        }
    }
    if (!header) throw Error(Errc::ParseError, "missing header");
    if (n < 0) throw Error(Errc::ParseError, "missing vertices line");
    std::vector<Edge> edges(raw_edges.size());
    std::vector<char> have(raw_edges.size(), 0);
    for (auto& [id, e] : raw_edges) {
        if (id < 0 || id >= static_cast<int>(edges.size()) || have[id])
            throw Error(Errc::ParseError, "edge ids must be 0..E-1 without repeats");
        have[id] = 1;
        edges[id] = std::move(e);
    }
    return build(n, std::move(edges), rot);
}

DualGraph dual_graph(const PlaneGraph& g) {
    const auto& emb = g.embedding();
    DualGraph d;
    d.emb.n = emb.face_count();
    d.emb.ends.resize(emb.edge_count());
    for (int e = 0; e < emb.edge_count(); ++e) d.emb.ends[e] = {emb.face_left[2 * e], emb.face_left[2 * e + 1]};
    d.emb.rot.assign(d.emb.n, {});
    for (int f = 0; f < emb.face_count(); ++f) d.emb.rot[f].assign(emb.faces[f].rbegin(), emb.faces[f].rend());
    d.emb.finalize();
    return d;
}

Subdivision::Subdivision(const PlaneGraph& g) {
    if (g.vertex_count() < 3 || !g.is_triangulated()) throw Error(Errc::InvalidArgument, "subdivision needs a triangulated graph");
    const auto& pe = g.embedding();
    n_ = g.vertex_count();
    m_ = g.edge_count();
    const int F = g.face_count();
    emb_.n = n_ + m_ + F;
    auto add = [&](int a, int b) {
        int id = static_cast<int>(emb_.ends.size());
        if (!index_.emplace(pair_key(a, b), id).second) throw Error(Errc::Internal, "repeated subdivision edge");
        emb_.ends.push_back({a, b});
    };
    for (int e = 0; e < m_; ++e) {
        add(g.edge(e).u, mid(e));
        add(mid(e), g.edge(e).v);
    }
    for (int f = 0; f < F; ++f)
        for (int h : pe.faces[f]) {
            add(centre(f), pe.tail(h));
            add(centre(f), mid(h >> 1));
        }
    auto half = [&](int a, int b) {
        int id = index_.at(pair_key(a, b));
        return emb_.ends[id][0] == a ? 2 * id : 2 * id + 1;
    };
    emb_.rot.assign(emb_.n, {});
    for (int v = 0; v < n_; ++v) {
        const auto& r = pe.rot[v];
        for (std::size_t j = 0; j < r.size(); ++j) {
            int hn = r[(j + 1) % r.size()];
            emb_.rot[v].push_back(half(v, mid(r[j] >> 1)));
            emb_.rot[v].push_back(half(v, centre(pe.face_left[hn])));
        }
    }
    for (int e = 0; e < m_; ++e) {
        int x = g.edge(e).u, y = g.edge(e).v, me = mid(e);
        emb_.rot[me] = {half(me, y), half(me, centre(pe.face_left[2 * e + 1])), half(me, x),
                        half(me, centre(pe.face_left[2 * e]))};
    }
    for (int f = 0; f < F; ++f) {
        const auto& hf = pe.faces[f];
        int c = centre(f);
        for (int i = static_cast<int>(hf.size()) - 1; i >= 0; --i) {
            emb_.rot[c].push_back(half(c, mid(hf[i] >> 1)));
            emb_.rot[c].push_back(half(c, pe.tail(hf[i])));
        }
    }
    emb_.finalize();
    if (emb_.n - emb_.edge_count() + emb_.face_count() != 2) throw Error(Errc::Internal, "subdivision is not planar");
}

int Subdivision::sd_edge(int a, int b) const {
    auto it = index_.find(pair_key(a, b));
    return it == index_.end() ? -1 : it->second;
}

std::vector<int> Subdivision::refine_path(const std::vector<int>& path, const PlaneGraph& g) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i > 0) {
            int e = g.find_edge(path[i - 1], path[i]);
            if (e < 0) throw Error(Errc::Internal, "path step is not an edge");
            out.push_back(mid(e));
        }
        out.push_back(path[i]);
    }
    return out;
}

std::vector<int> Subdivision::walk_of(const std::vector<FaceCurveToken>& curve, const PlaneGraph& g) const {
    std::vector<int> out;
    int last = -1;
    auto go_to = [&](int v) {
        if (last == v) return;
        if (last >= 0) {
            int e = g.find_edge(last, v);
            if (e < 0) throw Error(Errc::Internal, "curve step is not an edge");
            out.push_back(mid(e));
        }
        out.push_back(v);
        last = v;
    };
    for (const auto& t : curve) {
        if (t.kind == FaceCurveToken::Kind::Vertex) {
            go_to(t.vertex);
        } else {
            go_to(t.entry);
            out.push_back(centre(t.face));
            out.push_back(t.exit);
            last = t.exit;
        }
    }
    if (!out.empty() && last != out.front()) {
        int e = g.find_edge(last, out.front());
        if (e < 0) throw Error(Errc::Internal, "curve does not close");
        out.push_back(mid(e));
    } else if (out.size() > 1 && last == out.front()) {
        out.pop_back();
    }
    return out;
}

std::vector<int> Subdivision::edges_of_closed_walk(const std::vector<int>& walk) const {
    std::vector<int> out;
    if (walk.size() < 2) return out;
    for (std::size_t i = 0; i < walk.size(); ++i) {
        int e = sd_edge(walk[i], walk[(i + 1) % walk.size()]);
        if (e < 0) throw Error(Errc::Internal, "walk step is not a subdivision edge");
        out.push_back(e);
    }
    return out;
}

}  // namespace vsep
