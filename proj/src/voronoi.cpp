#include "vsep/voronoi.hpp"

#include "vsep/error.hpp"

#include <algorithm>
#include <set>

namespace vsep {

Context::~Context() = default;

std::shared_ptr<Context> Context::make(ObjectFamily fam) {
    auto ctx = std::make_shared<Context>();
    ctx->graph = fam.graph_ptr();
    if (ctx->graph->vertex_count() < 3 || !ctx->graph->is_triangulated())
        throw Error(Errc::InvalidArgument, "context needs a triangulated graph");
    ctx->family = std::move(fam);
    ctx->metric = std::make_unique<ObjectMetric>(ctx->family);
    ctx->sd = std::make_unique<Subdivision>(*ctx->graph);
    ctx->singular = std::make_unique<SingularFaces>(*ctx);
    return ctx;
}

VoronoiPartition voronoi_partition(const Context& ctx, std::vector<int> sites) {
    std::sort(sites.begin(), sites.end());
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
    for (int p : sites)
        if (p < 0 || p >= ctx.family.size()) throw Error(Errc::InvalidArgument, "site out of range");
    if (!ctx.family.independent(sites)) throw Error(Errc::NotIndependent, "sites are not pairwise disjoint");
    if (sites.empty()) throw Error(Errc::FamilyTooSmall, "no sites");
    VoronoiPartition part;
    part.sites = sites;
    const int n = ctx.graph->vertex_count();
    part.cell.assign(n, -1);
    const auto& m = *ctx.metric;
    for (int v = 0; v < n; ++v) {
        int best = sites[0];
        bool tie = false;
        for (std::size_t i = 1; i < sites.size(); ++i) {
            int r = m.rank(v, sites[i]), rb = m.rank(v, best);
            if (r < rb) {
                best = sites[i];
                tie = false;
            } else if (r == rb) {
                tie = true;
            }
        }
        if (tie) throw Error(Errc::Internal, "tie between disjoint sites");
        part.cell[v] = best;
    }
    return part;
}

int VoronoiDiagram::corner_before(const PlaneGraph& g, int hh) const {
    int a = first_crossed[h.cw_prev(hh)], b = first_crossed[hh];
    const auto& ea = g.edge(a);
    const auto& eb = g.edge(b);
    if (ea.u == eb.u || ea.u == eb.v) return ea.u;
    if (ea.v == eb.u || ea.v == eb.v) return ea.v;
    throw Error(Errc::Internal, "corner edges do not meet");
}

VoronoiDiagram voronoi_diagram(const Context& ctx, const VoronoiPartition& part) {
    const int k = static_cast<int>(part.sites.size());
    if (k < 4) throw Error(Errc::FamilyTooSmall, "Voronoi diagram needs at least four sites");
    const auto& g = *ctx.graph;
    const auto& pe = g.embedding();
    const auto& m = *ctx.metric;
    const int n = g.vertex_count();
    const int E = g.edge_count();
    const int F = g.face_count();
    VoronoiDiagram d;
    d.tree_edge.assign(E, 0);
    for (int v = 0; v < n; ++v) {
        int p = part.cell[v];
        int par = m.et_parent(p, v);
        if (par < 0) continue;
        if (part.cell[par] != p) throw Error(Errc::Internal, "cell tree leaves its cell");
        d.tree_edge[m.et_parent_edge(p, v)] = 1;
    }
    // prune dangling dual arcs
    std::vector<int> deg(F, 0);
    std::vector<char> alive(E, 0);
    for (int e = 0; e < E; ++e)
        if (!d.tree_edge[e]) {
            alive[e] = 1;
            ++deg[pe.face_left[2 * e]];
            ++deg[pe.face_left[2 * e + 1]];
        }
    std::vector<int> leaves;
    for (int f = 0; f < F; ++f)
        if (deg[f] == 1) leaves.push_back(f);
    while (!leaves.empty()) {
        int f = leaves.back();
        leaves.pop_back();
        if (deg[f] != 1) continue;
        for (int hh : pe.faces[f]) {
            int e = hh >> 1;
            if (!alive[e]) continue;
            alive[e] = 0;
            int other = pe.face_left[hh ^ 1];
            --deg[f];
            if (--deg[other] == 1) leaves.push_back(other);
        }
    }
    d.vertex_of_face.assign(F, -1);
    for (int f = 0; f < F; ++f) {
        if (deg[f] == 3) {
            d.vertex_of_face[f] = static_cast<int>(d.branch_face.size());
            d.branch_face.push_back(f);
        } else if (deg[f] != 0 && deg[f] != 2) {
            throw Error(Errc::Internal, "unexpected dual degree");
        }
    }
    const int V = static_cast<int>(d.branch_face.size());
    std::vector<char> used(E, 0);
    std::vector<int> half_first;  // first crossed edge per half-edge
    for (int x = 0; x < V; ++x) {
        int f = d.branch_face[x];
        for (int hh : pe.faces[f]) {
            int e0 = hh >> 1;
            if (!alive[e0] || used[e0]) continue;
            std::vector<int> faces{f}, crossed;
            int cur = f, e = e0;
            for (;;) {
                used[e] = 1;
                crossed.push_back(e);
                int nxt = pe.face_left[2 * e] == cur ? pe.face_left[2 * e + 1] : pe.face_left[2 * e];
                faces.push_back(nxt);
                if (d.vertex_of_face[nxt] >= 0) break;
                int next_e = -1;
                for (int h2 : pe.faces[nxt])
                    if (alive[h2 >> 1] && (h2 >> 1) != e) next_e = h2 >> 1;
                if (next_e < 0) throw Error(Errc::Internal, "broken Voronoi chain");
                cur = nxt;
                e = next_e;
            }
            d.h.ends.push_back({x, d.vertex_of_face[faces.back()]});
            half_first.push_back(crossed.front());
            half_first.push_back(crossed.back());
            d.crossed.push_back(std::move(crossed));
            d.chain.push_back(std::move(faces));
        }
    }
    for (int e = 0; e < E; ++e)
        if (alive[e] && !used[e]) throw Error(Errc::Internal, "Voronoi cycle without branching face");
    d.h.n = V;
    d.h.rot.assign(V, {});
    d.first_crossed = half_first;
    for (int hh = 0; hh < 2 * d.h.edge_count(); ++hh) d.h.rot[d.h.tail(hh)].push_back(hh);
    for (int x = 0; x < V; ++x) {
        const auto& fb = pe.faces[d.branch_face[x]];
        auto order = [&](int hh) {
            int e = d.first_crossed[hh];
            for (int i = 0; i < 3; ++i)
                if ((fb[i] >> 1) == e) return 2 - i;
            throw Error(Errc::Internal, "half-edge does not leave its face");
        };
        std::sort(d.h.rot[x].begin(), d.h.rot[x].end(), [&](int a, int b) { return order(a) < order(b); });
    }
    d.h.finalize();
    if (d.h.face_count() != k || V != 2 * k - 4 || d.h.edge_count() != 3 * k - 6)
        throw Error(Errc::Internal, "Voronoi diagram has wrong counts");
    d.face_object.assign(k, -1);
    for (int hh = 0; hh < 2 * d.h.edge_count(); ++hh) {
        int site = part.cell[d.corner_before(g, hh)];
        int& slot = d.face_object[d.h.face_left[hh]];
        if (slot == -1) slot = site;
        else if (slot != site) throw Error(Errc::Internal, "Voronoi face meets two cells");
    }
    for (int fh = 0; fh < k; ++fh) {
        if (!d.object_face.emplace(d.face_object[fh], fh).second)
            throw Error(Errc::Internal, "site owns two Voronoi faces");
    }
    return d;
}

namespace {

int owner_among(const ObjectMetric& m, int v, std::initializer_list<int> tuple) {
    int best = -1;
    for (int p : tuple)
        if (best < 0 || m.rank(v, p) < m.rank(v, best)) best = p;
    return best;
}

void require_independent(const ObjectFamily& fam, std::vector<int> t) {
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end() || !fam.independent(t))
        throw Error(Errc::NotIndependent, "tuple is not independent");
}

}  // namespace

SingularFaces::CurveRegions SingularFaces::regions_for(const std::vector<int>& sd_edges, int faces_expected,
                                                       int centre) const {
    CurveRegions out;
    auto reg = compute_regions(ctx_.sd->embedding(), sd_edges);
    out.valid = reg.face_count == faces_expected;
    if (centre >= 0) out.face_region = reg.vertex_region[centre];
    const auto& fam = ctx_.family;
    out.object_region.assign(fam.size(), -1);
    for (int q = 0; q < fam.size(); ++q) {
        int r = -2;
        for (int v : fam[q].vertices) {
            int rv = reg.vertex_region[v];
            if (rv < 0 || (r != -2 && rv != r)) {
                r = -1;
                break;
            }
            r = rv;
        }
        out.object_region[q] = r < 0 ? -1 : r;
    }
    return out;
}

const SingularFaces::CurveRegions& SingularFaces::cycle_regions(int p, int e) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cycle_cache_.find({p, e});
        if (it != cycle_cache_.end()) return *it->second;
    }
    const auto& g = *ctx_.graph;
    int a = g.edge(e).u, b = g.edge(e).v;
    auto path = ctx_.metric->et_path(p, a, b);
    auto entry = std::make_unique<CurveRegions>();
    if (path.size() > 2) {
        auto walk = ctx_.sd->refine_path(path, g);
        walk.push_back(ctx_.sd->mid(e));
        *entry = regions_for(ctx_.sd->edges_of_closed_walk(walk), 2, -1);
    }
    std::lock_guard<std::mutex> lock(mu_);
    return *cycle_cache_.emplace(std::make_pair(p, e), std::move(entry)).first->second;
}

const SingularFaces::CurveRegions& SingularFaces::face_tree_regions(int p, int f) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = tree_cache_.find({p, f});
        if (it != tree_cache_.end()) return *it->second;
    }
    const auto& g = *ctx_.graph;
    const auto& sd = *ctx_.sd;
    auto vs = g.face_vertices(f);
    std::set<int> edges;
    auto add_path = [&](const std::vector<int>& path) {
        auto w = sd.refine_path(path, g);
        for (std::size_t i = 0; i + 1 < w.size(); ++i) edges.insert(sd.sd_edge(w[i], w[i + 1]));
    };
    for (int i = 0; i < 3; ++i) {
        add_path({vs[i], vs[(i + 1) % 3]});
        add_path(ctx_.metric->et_path(p, vs[i], vs[(i + 1) % 3]));
    }
    auto entry = std::make_unique<CurveRegions>(
        regions_for(std::vector<int>(edges.begin(), edges.end()), 4, sd.centre(f)));
    std::lock_guard<std::mutex> lock(mu_);
    return *tree_cache_.emplace(std::make_pair(p, f), std::move(entry)).first->second;
}

std::vector<int> SingularFaces::type1(int p1, int p2, int p3) const {
    require_independent(ctx_.family, {p1, p2, p3});
    const auto& g = *ctx_.graph;
    const auto& m = *ctx_.metric;
    std::vector<int> out;
    for (int f = 0; f < g.face_count(); ++f) {
        auto vs = g.face_vertices(f);
        int a = owner_among(m, vs[0], {p1, p2, p3}), b = owner_among(m, vs[1], {p1, p2, p3}),
            c = owner_among(m, vs[2], {p1, p2, p3});
        if (a != b && b != c && a != c) out.push_back(f);
    }
    return out;
}

std::vector<int> SingularFaces::type2(int p1, int p2, int p3) const {
    require_independent(ctx_.family, {p1, p2, p3});
    const auto& g = *ctx_.graph;
    const auto& m = *ctx_.metric;
    std::vector<int> out;
    for (int f = 0; f < g.face_count(); ++f) {
        auto vs = g.face_vertices(f);
        int own[3];
        for (int i = 0; i < 3; ++i) own[i] = owner_among(m, vs[i], {p1, p2, p3});
        for (int i = 0; i < 3; ++i) {
            int a = vs[(i + 1) % 3], b = vs[(i + 2) % 3];
            if (own[i] != p1 || own[(i + 1) % 3] != p2 || own[(i + 2) % 3] != p2) continue;
            const auto& cr = cycle_regions(p2, g.find_edge(a, b));
            if (!cr.valid) continue;
            int r1 = cr.object_region[p1], r3 = cr.object_region[p3];
            if (r1 >= 0 && r3 >= 0 && r1 != r3) out.push_back(f);
        }
    }
    return out;
}

std::vector<int> SingularFaces::type3(int p0, int p1, int p2, int p3) const {
    require_independent(ctx_.family, {p0, p1, p2, p3});
    const auto& g = *ctx_.graph;
    const auto& m = *ctx_.metric;
    std::vector<int> out;
    for (int f = 0; f < g.face_count(); ++f) {
        auto vs = g.face_vertices(f);
        bool all = true;
        for (int v : vs) all = all && owner_among(m, v, {p0, p1, p2, p3}) == p0;
        if (!all) continue;
        const auto& cr = face_tree_regions(p0, f);
        if (!cr.valid) continue;
        int r1 = cr.object_region[p1], r2 = cr.object_region[p2], r3 = cr.object_region[p3];
        if (r1 < 0 || r2 < 0 || r3 < 0) continue;
        if (r1 == r2 || r1 == r3 || r2 == r3) continue;
        if (r1 == cr.face_region || r2 == cr.face_region || r3 == cr.face_region) continue;
        out.push_back(f);
    }
    return out;
}

std::vector<int> SingularFaces::important_faces(const std::vector<int>& sites) const {
    const auto& g = *ctx_.graph;
    const auto& m = *ctx_.metric;
    const auto& fam = ctx_.family;
    const int k = static_cast<int>(sites.size());
    std::vector<int> out;
    auto beats = [&](int v, int a, int b) { return m.rank(v, a) < m.rank(v, b); };
    for (int f = 0; f < g.face_count(); ++f) {
        auto vs = g.face_vertices(f);
        bool hit = false;
        // three corners in three cells
        for (int i = 0; i < k && !hit; ++i) {
            int a = sites[i];
            for (int j = 0; j < k && !hit; ++j) {
                int b = sites[j];
                if (j == i || fam.intersects(a, b) || !beats(vs[0], a, b) || !beats(vs[1], b, a)) continue;
                for (int l = 0; l < k && !hit; ++l) {
                    int c = sites[l];
                    if (l == i || l == j || fam.intersects(a, c) || fam.intersects(b, c)) continue;
                    if (beats(vs[0], a, c) && beats(vs[1], b, c) && beats(vs[2], c, a) && beats(vs[2], c, b))
                        hit = true;
                }
            }
        }
        // one corner in p1, an edge in p2, separating p1 from p3
        for (int i = 0; i < 3 && !hit; ++i) {
            int v1 = vs[i], a = vs[(i + 1) % 3], b = vs[(i + 2) % 3];
            int e = g.find_edge(a, b);
            for (int j = 0; j < k && !hit; ++j) {
                int p2 = sites[j];
                std::vector<int> p1s, p3s;
                for (int l = 0; l < k; ++l) {
                    int q = sites[l];
                    if (l == j || fam.intersects(q, p2)) continue;
                    if (!beats(a, p2, q) || !beats(b, p2, q)) continue;
                    p3s.push_back(q);
                    if (beats(v1, q, p2)) p1s.push_back(q);
                }
                if (p1s.empty() || p3s.size() < 2) continue;
                const CurveRegions* cr = nullptr;
                for (int p1 : p1s) {
                    for (int p3 : p3s) {
                        if (p3 == p1 || fam.intersects(p1, p3) || !beats(v1, p1, p3)) continue;
                        if (!cr) cr = &cycle_regions(p2, e);
                        if (!cr->valid) break;
                        int r1 = cr->object_region[p1], r3 = cr->object_region[p3];
                        if (r1 >= 0 && r3 >= 0 && r1 != r3) {
                            hit = true;
                            break;
                        }
                    }
                    if (hit || (cr && !cr->valid)) break;
                }
            }
        }
        // whole face in p0, three objects in the three outer regions
        for (int i = 0; i < k && !hit; ++i) {
            int p0 = sites[i];
            std::vector<int> cand;
            for (int j = 0; j < k; ++j) {
                int q = sites[j];
                if (j == i || fam.intersects(p0, q)) continue;
                if (beats(vs[0], p0, q) && beats(vs[1], p0, q) && beats(vs[2], p0, q)) cand.push_back(q);
            }
            if (cand.size() < 3) continue;
            const auto& cr = face_tree_regions(p0, f);
            if (!cr.valid) continue;
            std::set<int> regions;
            for (int q : cand) {
                int r = cr.object_region[q];
                if (r >= 0 && r != cr.face_region) regions.insert(r);
            }
            if (regions.size() >= 3) hit = true;
        }
        if (hit) out.push_back(f);
    }
    return out;
}

std::vector<int> SingularFaces::important_faces_by_tuples(const std::vector<int>& sites) const {
    const auto& fam = ctx_.family;
    std::set<int> out;
    const int k = static_cast<int>(sites.size());
    auto add = [&](const std::vector<int>& fs) { out.insert(fs.begin(), fs.end()); };
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            if (b == a || fam.intersects(sites[a], sites[b])) continue;
            for (int c = 0; c < k; ++c) {
                if (c == a || c == b || fam.intersects(sites[a], sites[c]) || fam.intersects(sites[b], sites[c]))
                    continue;
                if (a < b && b < c) add(type1(sites[a], sites[b], sites[c]));
                add(type2(sites[a], sites[b], sites[c]));
                for (int d = 0; d < k; ++d) {
                    if (d == a || d == b || d == c) continue;
                    if (fam.intersects(sites[d], sites[a]) || fam.intersects(sites[d], sites[b]) ||
                        fam.intersects(sites[d], sites[c]))
                        continue;
                    if (a < b && b < c) add(type3(sites[d], sites[a], sites[b], sites[c]));
                }
            }
        }
    return {out.begin(), out.end()};
}

}  // namespace vsep
