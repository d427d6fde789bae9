#include "vsep/separators.hpp"

#include "vsep/error.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace vsep {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

bool on_face(const PlaneGraph& g, int f, int v) {
    for (int x : g.face_vertices(f))
        if (x == v) return true;
    return false;
}

std::vector<int> flatten(const Separator& s) {
    std::vector<int> out;
    for (const auto& e : s) out.insert(out.end(), {e.site, e.u, e.face, e.v});
    return out;
}

// Entries are well-formed: objects in range and pairwise disjoint, u != v and
// both corners of f.
bool well_formed(const Context& ctx, const Separator& s) {
    const auto& g = *ctx.graph;
    const auto& fam = ctx.family;
    if (s.empty()) return false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& e = s[i];
        if (e.site < 0 || e.site >= fam.size() || e.face < 0 || e.face >= g.face_count()) return false;
        if (e.u == e.v || !on_face(g, e.face, e.u) || !on_face(g, e.face, e.v)) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (s[j].site == e.site || fam.intersects(s[j].site, e.site)) return false;
    }
    return true;
}

struct SideWeights {
    Rational enc{0}, exc{0}, crossed{0};
};

SideWeights side_weights(const ObjectFamily& fam, const std::vector<Side>& sides, Mask F) {
    SideWeights out;
    for (Mask r = F; r; r &= r - 1) {
        int q = __builtin_ctzll(r);
        bool all_enc = true, all_exc = true;
        for (int v : fam[q].vertices) {
            all_enc = all_enc && sides[v] == Side::Enc;
            all_exc = all_exc && sides[v] == Side::Exc;
        }
        if (all_enc) out.enc += fam[q].weight;
        else if (all_exc) out.exc += fam[q].weight;
        else out.crossed += fam[q].weight;
    }
    return out;
}

// A noose of H turned into a separator with its side weights.
struct Evaluated {
    Separator sep;
    SideWeights w;
    int width = 0;
};

std::optional<Evaluated> evaluate_cut(const Context& ctx, const VoronoiPartition& part, const VoronoiDiagram& d,
                                      const std::vector<char>& cut, Mask F) {
    auto sep = separator_of_cut(ctx, part, d, cut);
    if (!sep) return std::nullopt;
    auto per = perimeter(ctx, *sep);
    if (!per.valid) return std::nullopt;
    Evaluated ev;
    ev.sep = std::move(*sep);
    ev.w = side_weights(ctx.family, classify_sides(ctx, per), F);
    ev.width = static_cast<int>(ev.sep.size());
    return ev;
}

}  // namespace

Separator reversed(const Separator& s) {
    const int r = static_cast<int>(s.size());
    Separator out;
    for (int j = 0; j < r; ++j) {
        int i = r - 1 - j;
        out.push_back({s[(i + 1) % r].site, s[i].v, s[i].face, s[i].u});
    }
    return out;
}

Mask banned_set(const Context& ctx, const Separator& s) {
    const auto& fam = ctx.family;
    const auto& m = *ctx.metric;
    const int r = static_cast<int>(s.size());
    Mask out = 0;
    for (int i = 0; i < r; ++i) {
        out |= fam.closed_neighbourhood(s[i].site);
        out |= m.conflicts(s[i].u, s[i].site);
        out |= m.conflicts(s[i].v, s[(i + 1) % r].site);
    }
    return out;
}

std::vector<FaceCurveToken> perimeter_tokens(const Context& ctx, const Separator& s) {
    const int r = static_cast<int>(s.size());
    std::vector<FaceCurveToken> out;
    for (int i = 0; i < r; ++i) {
        int prev_v = s[(i + r - 1) % r].v;
        for (int x : ctx.metric->et_path(s[i].site, prev_v, s[i].u)) out.push_back(FaceCurveToken::at(x));
        out.push_back(FaceCurveToken::transit(s[i].face, s[i].u, s[i].v));
    }
    return out;
}

Perimeter perimeter(const Context& ctx, const Separator& s) {
    Perimeter out;
    if (!well_formed(ctx, s)) return out;
    std::set<int> faces;
    for (const auto& e : s)
        if (!faces.insert(e.face).second) return out;
    out.tokens = perimeter_tokens(ctx, s);
    out.walk = ctx.sd->walk_of(out.tokens, *ctx.graph);
    if (out.walk.size() < 3) return out;
    std::vector<int> sorted = out.walk;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return out;
    out.valid = true;
    return out;
}

std::vector<Side> classify_sides(const Context& ctx, const Perimeter& p) {
    if (!p.valid) throw Error(Errc::InvalidArgument, "perimeter is not a simple closed curve");
    const auto& sd = *ctx.sd;
    const auto& se = sd.embedding();
    auto reg = compute_regions(se, sd.edges_of_closed_walk(p.walk));
    if (reg.face_count != 2) throw Error(Errc::Internal, "simple closed walk without two sides");
    int e0 = sd.sd_edge(p.walk[0], p.walk[1]);
    int h0 = se.half_from(e0, p.walk[0]);
    int enc = reg.half_face[Embedding::twin(h0)];
    const int n = ctx.graph->vertex_count();
    std::vector<Side> out(n, Side::On);
    for (int v = 0; v < n; ++v) {
        int rv = reg.vertex_region[v];
        if (rv >= 0) out[v] = rv == enc ? Side::Enc : Side::Exc;
    }
    return out;
}

std::optional<HNoose> noose_of_cut(const Embedding& h, const std::vector<char>& in_cut) {
    const int H = 2 * h.edge_count();
    std::vector<char> mixed(H, 0);
    std::vector<std::vector<int>> at_vertex(h.n), at_face(h.face_count());
    int total = 0;
    for (int hh = 0; hh < H; ++hh) {
        if (in_cut[h.cw_prev(hh) >> 1] == in_cut[hh >> 1]) continue;
        mixed[hh] = 1;
        ++total;
        at_vertex[h.tail(hh)].push_back(hh);
        at_face[h.face_left[hh]].push_back(hh);
    }
    if (total == 0) return std::nullopt;
    for (const auto& v : at_vertex)
        if (!v.empty() && v.size() != 2) return std::nullopt;
    for (const auto& f : at_face)
        if (!f.empty() && f.size() != 2) return std::nullopt;
    auto other = [](const std::vector<int>& pair, int x) { return pair[0] == x ? pair[1] : pair[0]; };
    HNoose out;
    int start = static_cast<int>(std::find(mixed.begin(), mixed.end(), 1) - mixed.begin());
    int c = start, seen = 0;
    do {
        int x = h.tail(c);
        int c_out = other(at_vertex[x], c);
        out.vertices.push_back(x);
        out.corner_in.push_back(c);
        out.corner_out.push_back(c_out);
        seen += 2;
        c = other(at_face[h.face_left[c_out]], c_out);
    } while (c != start && seen <= total);
    if (c != start || seen != total) return std::nullopt;
    return out;
}

std::optional<Separator> separator_of_cut(const Context& ctx, const VoronoiPartition& part, const VoronoiDiagram& d,
                                          const std::vector<char>& in_cut) {
    auto noose = noose_of_cut(d.h, in_cut);
    if (!noose) return std::nullopt;
    const auto& g = *ctx.graph;
    Separator s;
    for (std::size_t i = 0; i < noose->vertices.size(); ++i) {
        int cin = noose->corner_in[i], cout = noose->corner_out[i];
        s.push_back({d.face_object[d.h.face_left[cin]], d.corner_before(g, cin),
                     d.branch_face[noose->vertices[i]], d.corner_before(g, cout)});
        if (part.cell[s.back().u] != s.back().site) throw Error(Errc::Internal, "noose corner outside its cell");
    }
    auto per = perimeter(ctx, s);
    if (!per.valid) return std::nullopt;
    int cut_edge = static_cast<int>(std::find(in_cut.begin(), in_cut.end(), 1) - in_cut.begin());
    const auto& sd = *ctx.sd;
    auto reg = compute_regions(sd.embedding(), sd.edges_of_closed_walk(per.walk));
    if (reg.face_count != 2) return std::nullopt;
    int e0 = sd.sd_edge(per.walk[0], per.walk[1]);
    int enc = reg.half_face[Embedding::twin(sd.embedding().half_from(e0, per.walk[0]))];
    int probe = reg.vertex_region[sd.mid(d.first_crossed[2 * cut_edge])];
    if (probe < 0) throw Error(Errc::Internal, "crossed edge on a perimeter");
    if (probe != enc) s = reversed(s);
    return s;
}

std::vector<int> find_bridges(const Embedding& h) {
    const int n = h.n;
    std::vector<int> disc(n, -1), low(n, 0), out;
    int timer = 0;
    // iterative DFS keeping the entering edge id
    for (int root = 0; root < n; ++root) {
        if (disc[root] >= 0) continue;
        std::vector<std::tuple<int, int, std::size_t>> stack{{root, -1, 0}};
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            auto& [v, in_edge, idx] = stack.back();
            if (idx < h.rot[v].size()) {
                int hh = h.rot[v][idx++];
                int e = hh >> 1;
                if (e == in_edge) continue;
                int w = h.head(hh);
                if (disc[w] < 0) {
                    disc[w] = low[w] = timer++;
                    stack.emplace_back(w, e, 0);
                } else {
                    low[v] = std::min(low[v], disc[w]);
                }
            } else {
                int vv = v, ee = in_edge;
                stack.pop_back();
                if (!stack.empty()) {
                    int parent = std::get<0>(stack.back());
                    low[parent] = std::min(low[parent], low[vv]);
                    if (low[vv] > disc[parent]) out.push_back(ee);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SphereCutDecomposition sphere_cut_decomposition(const Embedding& h, const std::vector<char>& edges,
                                                const CutLift& lift, int exhaustive_limit) {
    std::vector<int> es;
    for (int e = 0; e < h.edge_count(); ++e)
        if (edges[e]) es.push_back(e);
    const int m = static_cast<int>(es.size());
    if (m == 0) throw Error(Errc::InvalidArgument, "decomposition of an empty edge set");
    {
        // the subgraph must be bridgeless
        Embedding sub;
        std::vector<int> id(h.n, -1);
        for (int e : es)
            for (int x : h.ends[e])
                if (id[x] < 0) id[x] = sub.n++;
        sub.rot.assign(sub.n, {});
        for (int e : es) sub.ends.push_back({id[h.ends[e][0]], id[h.ends[e][1]]});
        for (int v = 0; v < h.n; ++v)
            for (int hh : h.rot[v]) {
                int e = hh >> 1;
                if (!edges[e]) continue;
                int local = static_cast<int>(std::lower_bound(es.begin(), es.end(), e) - es.begin());
                sub.rot[id[v]].push_back(2 * local + (hh & 1));
            }
        if (!find_bridges(sub).empty()) throw Error(Errc::BridgePresent, "sub-multigraph has a bridge");
    }
    auto lifted = [&](const std::vector<int>& local) {
        std::vector<char> cut(h.edge_count(), 0);
        for (int i : local) cut[es[i]] = 1;
        return lift ? lift(cut) : cut;
    };
    auto width_of = [&](const std::vector<char>& cut) {
        auto noose = noose_of_cut(h, cut);
        return noose ? static_cast<int>(noose->vertices.size()) : kInf;
    };
    SphereCutDecomposition out;
    auto add_node = [&](int leaf) {
        out.leaf_edge.push_back(leaf);
        return out.node_count++;
    };
    auto add_edge = [&](int a, int b, const std::vector<int>& b_side) {
        auto cut = lifted(b_side);
        int w = width_of(cut);
        if (w >= kInf) throw Error(Errc::Internal, "decomposition cut is not a noose");
        out.tree_edges.push_back({a, b});
        out.cut.push_back(std::move(cut));
        out.width = std::max(out.width, w);
    };
    if (m == 1) {
        add_node(es[0]);
        out.exhaustive = true;
        return out;
    }
    if (m <= std::max(exhaustive_limit, 3)) {
        out.exhaustive = true;
        const int R = m - 1;  // local edges 1..m-1 as bits 0..R-1
        const int full = (1 << R) - 1;
        auto members = [&](int mask) {
            std::vector<int> v;
            for (int i = 0; i < R; ++i)
                if (mask >> i & 1) v.push_back(i + 1);
            return v;
        };
        std::vector<int> cw(full + 1, kInf), best(full + 1, kInf), split(full + 1, 0);
        for (int mask = 1; mask <= full; ++mask) {
            cw[mask] = width_of(lifted(members(mask)));
            if (__builtin_popcount(mask) == 1) {
                best[mask] = cw[mask];
                continue;
            }
            int low = mask & -mask;
            int inner = kInf;
            for (int s = (mask - 1) & mask; s > 0; s = (s - 1) & mask) {
                if (!(s & low)) continue;
                int v = std::max(best[s], best[mask ^ s]);
                if (v < inner) {
                    inner = v;
                    split[mask] = s;
                }
            }
            best[mask] = std::max(cw[mask], inner);
        }
        if (best[full] >= kInf) throw Error(Errc::Internal, "no sphere-cut decomposition");
        std::function<int(int)> build = [&](int mask) -> int {
            if (__builtin_popcount(mask) == 1) return add_node(es[__builtin_ctz(mask) + 1]);
            int node = add_node(-1);
            int s = split[mask];
            int c1 = build(s);
            add_edge(node, c1, members(s));
            int c2 = build(mask ^ s);
            add_edge(node, c2, members(mask ^ s));
            return node;
        };
        int leaf0 = add_node(es[0]);
        int root = build(full);
        add_edge(leaf0, root, members(full));
        return out;
    }
    // greedy caterpillar: prefixes of the edge order are nooses
    for (int i = 0; i < m; ++i)
        if (width_of(lifted({i})) >= kInf) throw Error(Errc::Internal, "single edge is not a noose");
    std::vector<int> order;
    const int starts = std::min(m, 10);
    for (int st = 0; st < starts && order.empty(); ++st) {
        int start = static_cast<int>((static_cast<long long>(st) * m) / starts);
        std::vector<int> prefix{start};
        std::vector<char> used(m, 0);
        used[start] = 1;
        bool stuck = false;
        while (static_cast<int>(prefix.size()) < m - 1 && !stuck) {
            int pick = -1, pick_w = kInf;
            bool need = static_cast<int>(prefix.size()) + 1 <= m - 2;
            for (int e = 0; e < m; ++e) {
                if (used[e]) continue;
                auto cand = prefix;
                cand.push_back(e);
                int w = need ? width_of(lifted(cand)) : 0;
                if (w < pick_w) {
                    pick_w = w;
                    pick = e;
                }
            }
            if (pick < 0) stuck = true;
            else {
                prefix.push_back(pick);
                used[pick] = 1;
            }
        }
        if (stuck) continue;
        for (int e = 0; e < m; ++e)
            if (!used[e]) prefix.push_back(e);
        order = prefix;
    }
    if (order.empty()) throw Error(Errc::Internal, "no sphere-cut decomposition found");
    // spine node t_j for j = 1..m-2 (0-based positions 1..m-2)
    std::vector<int> spine(m, -1), leaf(m, -1);
    for (int j = 0; j < m; ++j) leaf[j] = add_node(es[order[j]]);
    for (int j = 1; j <= m - 2; ++j) spine[j] = add_node(-1);
    add_edge(spine[1], leaf[0], {order[0]});
    for (int j = 1; j <= m - 2; ++j) add_edge(spine[j], leaf[j], {order[j]});
    add_edge(spine[m - 2], leaf[m - 1], {order[m - 1]});
    for (int j = 1; j + 1 <= m - 2; ++j)
        add_edge(spine[j + 1], spine[j], std::vector<int>(order.begin(), order.begin() + j + 1));
    return out;
}

int balanced_edge(const MeasuredTree& t, const Rational& W) {
    const int n = t.node_count;
    const int m = static_cast<int>(t.edges.size());
    if (m == 0) throw Error(Errc::InvalidArgument, "tree without edges");
    // mu(x,y) for the ordered pair, via the edge table
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbour, edge)
    for (int e = 0; e < m; ++e) {
        adj[t.edges[e][0]].push_back({t.edges[e][1], e});
        adj[t.edges[e][1]].push_back({t.edges[e][0], e});
    }
    auto mu = [&](int x, int e) -> const Rational& { return t.edges[e][0] == x ? t.mu[e][0] : t.mu[e][1]; };
    const Rational tenth = W / 10, nine = W * Rational(9, 10), leafcap = W * Rational(9, 20);
    for (int e = 0; e < m; ++e) {
        Rational sum = t.mu[e][0] + t.mu[e][1];
        if (sum < nine || sum > W)
            throw Error(Errc::MeasureAxiomViolated, "S1 fails on tree edge " + std::to_string(e));
    }
    for (int x = 0; x < n; ++x) {
        if (adj[x].size() == 3) {
            for (int i = 0; i < 3; ++i) {
                int y1 = adj[x][i].first, e1 = adj[x][i].second;
                const Rational& into = mu(y1, e1);
                Rational parts = mu(x, adj[x][(i + 1) % 3].second) + mu(x, adj[x][(i + 2) % 3].second);
                if (into < parts || into > parts + tenth)
                    throw Error(Errc::MeasureAxiomViolated, "S2 fails at node " + std::to_string(x));
            }
        }
        if (adj[x].size() == 1 || (x < static_cast<int>(t.leaf.size()) && t.leaf[x])) {
            for (auto [y, e] : adj[x])
                if (mu(y, e) >= leafcap)
                    throw Error(Errc::MeasureAxiomViolated, "S3 fails at leaf " + std::to_string(x));
        }
    }
    // orient every edge toward the endpoint whose side is heavier
    std::vector<int> outdeg(n, 0);
    for (int e = 0; e < m; ++e) {
        int a = t.edges[e][0], b = t.edges[e][1];
        const Rational& b_side = t.mu[e][0];  // mu(a,b)
        const Rational& a_side = t.mu[e][1];  // mu(b,a)
        bool toward_a = a_side > b_side || (a_side == b_side && a < b);
        ++outdeg[toward_a ? b : a];
    }
    int x = -1;
    for (int v = 0; v < n && x < 0; ++v)
        if (outdeg[v] == 0 && !adj[v].empty()) x = v;
    if (x < 0) throw Error(Errc::Internal, "oriented tree without a sink");
    if (adj[x].size() == 1) throw Error(Errc::Internal, "sink at a leaf");
    int best = -1;
    for (auto [y, e] : adj[x])
        if (best < 0 || mu(x, e) > mu(x, best)) best = e;
    const Rational lo = W / 4, hi = W * Rational(3, 4);
    for (int side = 0; side < 2; ++side)
        if (t.mu[best][side] <= lo || t.mu[best][side] >= hi)
            throw Error(Errc::Internal, "selected tree edge is not balanced");
    return best;
}

SeparatorCheck check_separator(const Context& ctx, Mask D, Mask F, const Rational& W, const Separator& s,
                               const std::vector<int>& important, const SeparatorParams& p) {
    SeparatorCheck c;
    const auto& fam = ctx.family;
    c.b1 = well_formed(ctx, s);
    for (const auto& e : s) {
        if (!c.b1) break;
        c.b1 = (D >> e.site & 1) && (F >> e.site & 1) &&
               std::binary_search(important.begin(), important.end(), e.face);
    }
    c.b2 = static_cast<int>(s.size()) <= 3 * p.s;
    Mask ban = banned_set(ctx, s) & D;
    c.b3 = fam.weight(ban & F) <= p.epsilon * W;
    c.b4 = true;
    const Rational cap = W * Rational(9, 10);
    for (Mask comp : fam.components(D & ~ban))
        if (fam.weight(comp & F) > cap) c.b4 = false;
    return c;
}

SeparatorReport balanced_separator(const Context& ctx, Mask D, Mask F, const Rational& W,
                                   const SeparatorParams& p) {
    const auto& fam = ctx.family;
    if ((F & ~D) != 0) throw Error(Errc::InvalidArgument, "F must be a subfamily of D");
    if (__builtin_popcountll(F) < 4) throw Error(Errc::FamilyTooSmall, "F needs at least four objects");
    if (!fam.independent(F)) throw Error(Errc::NotIndependent, "F is not independent");
    if (fam.weight(F) > W) throw Error(Errc::PreconditionWeight, "w(F) exceeds W");
    const Rational cap = W / Rational(p.s * p.s);
    for (Mask r = F; r; r &= r - 1)
        if (fam[__builtin_ctzll(r)].weight > cap)
            throw Error(Errc::PreconditionWeight, "object heavier than W/s^2");
    std::vector<int> dsites;
    for (Mask r = D; r; r &= r - 1) dsites.push_back(__builtin_ctzll(r));
    const auto important = ctx.singular->important_faces(dsites);
    const Rational nine = W * Rational(9, 10);

    for (int round = 0; round < p.rounds; ++round) {
        auto sample = sample_family(ctx, F, W, p.ell, p.seed + 0x9e37ULL * round, p.max_attempts);
        auto part = voronoi_partition(ctx, sample.sample);
        auto d = voronoi_diagram(ctx, part);
        const int HE = d.h.edge_count();
        SeparatorReport rep;
        rep.sample = sample.sample;
        rep.rounds = round + 1;
        std::vector<Evaluated> scanned;
        auto accept = [&](const Evaluated& ev) {
            if (!check_separator(ctx, D, F, W, ev.sep, important, p).ok()) return false;
            rep.sep = ev.sep;
            rep.banned = banned_set(ctx, ev.sep) & D;
            return true;
        };

        // Bridges: bridge nooses, bridge orientation and the component B.
        auto bridges = find_bridges(d.h);
        std::vector<char> b_edges(HE, 1);
        CutLift lift;
        bool fallback = false;
        if (!bridges.empty()) {
            rep.bridged = true;
            std::vector<char> is_bridge(HE, 0);
            for (int b : bridges) is_bridge[b] = 1;
            // components of H - b for a bridge b: edges on the side of `from`
            auto side_edges = [&](int b, int from) {
                std::vector<char> seen(d.h.n, 0), out(HE, 0);
                std::vector<int> stack{from};
                seen[from] = 1;
                while (!stack.empty()) {
                    int v = stack.back();
                    stack.pop_back();
                    for (int hh : d.h.rot[v]) {
                        if ((hh >> 1) == b) continue;
                        out[hh >> 1] = 1;
                        int w = d.h.head(hh);
                        if (!seen[w]) {
                            seen[w] = 1;
                            stack.push_back(w);
                        }
                    }
                }
                return out;
            };
            // orientation: +1 toward ends[1], -1 toward ends[0], 0 undecided
            std::map<int, int> toward;
            bool early = false;
            for (int b : bridges) {
                int f1 = d.h.ends[b][0], f2 = d.h.ends[b][1];
                auto cut1 = side_edges(b, f2);
                cut1[b] = 1;
                auto cut2 = side_edges(b, f1);
                cut2[b] = 1;
                auto beta1 = evaluate_cut(ctx, part, d, cut1, F);
                auto beta2 = evaluate_cut(ctx, part, d, cut2, F);
                for (const auto* beta : {&beta1, &beta2}) {
                    if (!*beta) continue;
                    scanned.push_back(**beta);
                    if ((*beta)->w.enc <= nine && (*beta)->w.exc <= nine && accept(**beta)) early = true;
                    if (early) break;
                }
                if (early) break;
                if (!beta1 || !beta2) continue;
                if (beta1->w.enc > nine && beta2->w.exc > nine) toward[b] = 1;
                else if (beta1->w.exc > nine && beta2->w.enc > nine) toward[b] = -1;
            }
            if (early) {
                rep.width = static_cast<int>(rep.sep.size());
                return rep;
            }
            if (static_cast<int>(toward.size()) != static_cast<int>(bridges.size())) {
                fallback = true;
            } else {
                // 2-edge-connected components
                std::vector<int> comp(d.h.n, -1);
                int nc = 0;
                for (int s = 0; s < d.h.n; ++s) {
                    if (comp[s] >= 0) continue;
                    std::vector<int> stack{s};
                    comp[s] = nc;
                    while (!stack.empty()) {
                        int v = stack.back();
                        stack.pop_back();
                        for (int hh : d.h.rot[v]) {
                            if (is_bridge[hh >> 1]) continue;
                            int w = d.h.head(hh);
                            if (comp[w] < 0) {
                                comp[w] = nc;
                                stack.push_back(w);
                            }
                        }
                    }
                    ++nc;
                }
                std::vector<int> outdeg(nc, 0);
                for (int b : bridges) {
                    int from = toward[b] > 0 ? d.h.ends[b][0] : d.h.ends[b][1];
                    ++outdeg[comp[from]];
                }
                int B = static_cast<int>(std::find(outdeg.begin(), outdeg.end(), 0) - outdeg.begin());
                if (B >= nc) throw Error(Errc::Internal, "bridge orientation without a sink component");
                std::vector<int> bverts;
                for (int v = 0; v < d.h.n; ++v)
                    if (comp[v] == B) bverts.push_back(v);
                std::fill(b_edges.begin(), b_edges.end(), 0);
                int bcount = 0;
                for (int e = 0; e < HE; ++e)
                    if (!is_bridge[e] && comp[d.h.ends[e][0]] == B) {
                        b_edges[e] = 1;
                        ++bcount;
                    }
                if (bcount == 0)
                    throw Error(Errc::DegenerateBridgeComponent,
                                "bridgeless component of one vertex receives all its bridges");
                // phi: incident bridge -> B edge sharing the endpoint in B, injective
                std::vector<int> inc;  // bridges incident to B
                std::vector<int> attach;
                for (int b : bridges) {
                    for (int t = 0; t < 2; ++t)
                        if (comp[d.h.ends[b][t]] == B) {
                            inc.push_back(b);
                            attach.push_back(d.h.ends[b][t]);
                        }
                }
                std::vector<int> match_of_edge(HE, -1), phi(inc.size(), -1);
                std::function<bool(int, std::vector<char>&)> augment = [&](int i, std::vector<char>& vis) {
                    for (int hh : d.h.rot[attach[i]]) {
                        int e = hh >> 1;
                        if (!b_edges[e] || vis[e]) continue;
                        vis[e] = 1;
                        if (match_of_edge[e] < 0 || augment(match_of_edge[e], vis)) {
                            match_of_edge[e] = static_cast<int>(i);
                            phi[i] = e;
                            return true;
                        }
                    }
                    return false;
                };
                for (std::size_t i = 0; i < inc.size(); ++i) {
                    std::vector<char> vis(HE, 0);
                    if (!augment(static_cast<int>(i), vis)) throw Error(Errc::Internal, "no injective bridge mapping");
                }
                std::vector<std::vector<char>> hang(inc.size());
                for (std::size_t i = 0; i < inc.size(); ++i) {
                    int b = inc[i];
                    int far = d.h.ends[b][0] == attach[i] ? d.h.ends[b][1] : d.h.ends[b][0];
                    hang[i] = side_edges(b, far);
                    hang[i][b] = 1;
                }
                lift = [inc, phi, hang, HE](const std::vector<char>& a) {
                    std::vector<char> out = a;
                    for (std::size_t i = 0; i < inc.size(); ++i)
                        if (a[phi[i]])
                            for (int e = 0; e < HE; ++e)
                                if (hang[i][e]) out[e] = 1;
                    return out;
                };
            }
        }

        if (!fallback) {
            std::optional<SphereCutDecomposition> dec;
            try {
                dec = sphere_cut_decomposition(d.h, b_edges, lift, p.exhaustive_limit);
            } catch (const Error& e) {
                if (e.code() != Errc::Internal) throw;
            }
            if (dec && !dec->tree_edges.empty()) {
                rep.width = dec->width;
                MeasuredTree mt;
                mt.node_count = dec->node_count;
                mt.edges = dec->tree_edges;
                mt.leaf.assign(dec->node_count, 0);
                for (int x = 0; x < dec->node_count; ++x) mt.leaf[x] = dec->leaf_edge[x] >= 0;
                std::vector<Evaluated> evs;
                bool complete = true;
                for (const auto& cut : dec->cut) {
                    auto ev = evaluate_cut(ctx, part, d, cut, F);
                    if (!ev) {
                        complete = false;
                        continue;
                    }
                    scanned.push_back(*ev);
                    evs.push_back(*ev);
                    mt.mu.push_back({ev->w.enc, ev->w.exc});
                }
                if (complete) {
                    // a noose that is not light is balanced by itself
                    const Rational light = W / 10;
                    for (const auto& ev : evs)
                        if (ev.w.crossed > light && accept(ev)) return rep;
                    try {
                        int t = balanced_edge(mt, W);
                        if (accept(evs[t])) return rep;
                    } catch (const Error& e) {
                        if (e.code() != Errc::MeasureAxiomViolated) throw;
                    }
                }
            }
        }
        rep.fallback = true;
        for (const auto& ev : scanned)
            if (accept(ev)) return rep;
    }
    throw Error(Errc::ExhaustedAttempts,
                "no separator satisfying B1-B4 after " + std::to_string(p.rounds) + " rounds");
}

double projected_candidates(int objects, int faces, int max_len) {
    double base = static_cast<double>(objects) * faces * 6.0, total = 0, term = 1;
    for (int r = 1; r <= max_len; ++r) {
        term *= base;
        total += term;
    }
    return total;
}

namespace {

void check_budget(Mask D, const std::vector<int>& important, const EnumerationParams& p) {
    double proj = projected_candidates(__builtin_popcountll(D), static_cast<int>(important.size()), p.max_len);
    if (p.budget <= 0 || proj > p.budget)
        throw Error(Errc::CapExceeded, "projected candidate count " + std::to_string(proj) + " exceeds budget");
}

// Ordered pairs of distinct corners over the given faces.
std::vector<std::pair<int, int>> corner_pairs(const PlaneGraph& g, const std::vector<int>& faces) {
    std::set<std::pair<int, int>> out;
    for (int f : faces) {
        auto vs = g.face_vertices(f);
        for (int a : vs)
            for (int b : vs)
                if (a != b) out.insert({a, b});
    }
    return {out.begin(), out.end()};
}

}  // namespace

std::vector<Mask> enumerate_family_mwiso(const Context& ctx, Mask D, const std::vector<int>& important,
                                         const EnumerationParams& p) {
    check_budget(D, important, p);
    const auto& fam = ctx.family;
    const auto& m = *ctx.metric;
    std::vector<int> ds;
    for (Mask r = D; r; r &= r - 1) ds.push_back(__builtin_ctzll(r));
    auto pairs = corner_pairs(*ctx.graph, important);
    // Y[p][q]: distinct contributions of one face between consecutive objects p, q
    std::map<std::pair<int, int>, std::vector<Mask>> Y;
    for (int a : ds)
        for (int b : ds) {
            std::set<Mask> ys;
            for (auto [u, v] : pairs) ys.insert((m.conflicts(u, a) | m.conflicts(v, b)) & D);
            Y[{a, b}] = {ys.begin(), ys.end()};
        }
    std::set<Mask> out;
    if (pairs.empty()) return {};
    // states (first, last, union of closed neighbourhoods, banned so far)
    std::set<std::tuple<int, int, Mask, Mask>> level;
    for (int a : ds) level.insert({a, a, fam.closed_neighbourhood(a), 0});
    for (int r = 1; r <= p.max_len && !level.empty(); ++r) {
        for (const auto& [first, last, nb, ban] : level)
            for (Mask y : Y[{last, first}]) out.insert((nb | ban | y) & D);
        if (r == p.max_len) break;
        std::set<std::tuple<int, int, Mask, Mask>> next;
        for (const auto& [first, last, nb, ban] : level)
            for (int q : ds) {
                if (nb >> q & 1) continue;
                for (Mask y : Y[{last, q}]) next.insert({first, q, nb | fam.closed_neighbourhood(q), (ban | y) & D});
            }
        level = std::move(next);
    }
    return {out.begin(), out.end()};
}

void for_each_candidate(const Context& ctx, Mask D, const std::vector<int>& important, int max_len,
                        const std::function<void(const Separator&)>& fn) {
    const auto& fam = ctx.family;
    const auto& g = *ctx.graph;
    std::vector<int> ds;
    for (Mask r = D; r; r &= r - 1) ds.push_back(__builtin_ctzll(r));
    std::vector<std::tuple<int, int, int>> slots;  // (face, u, v)
    for (int f : important) {
        auto vs = g.face_vertices(f);
        for (int a : vs)
            for (int b : vs)
                if (a != b) slots.push_back({f, a, b});
    }
    Separator cur;
    std::function<void(int, Mask)> rec = [&](int len, Mask nb) {
        if (static_cast<int>(cur.size()) == len) {
            fn(cur);
            return;
        }
        for (int q : ds) {
            if (nb >> q & 1) continue;
            for (auto [f, u, v] : slots) {
                cur.push_back({q, u, f, v});
                rec(len, nb | fam.closed_neighbourhood(q));
                cur.pop_back();
            }
        }
    };
    for (int len = 1; len <= max_len; ++len) rec(len, 0);
}

std::optional<CoverSplit> cover_split(const Context& ctx, Mask D, const std::vector<int>& clients, Mask C,
                                     const Separator& s) {
    const auto& fam = ctx.family;
    auto key = flatten(s);
    std::shared_ptr<const std::vector<char>> sides;
    bool cached = false;
    {
        std::lock_guard<std::mutex> lock(ctx.side_mu);
        auto it = ctx.side_cache.find(key);
        if (it != ctx.side_cache.end()) {
            sides = it->second;
            cached = true;
        }
    }
    if (!cached) {
        auto per = perimeter(ctx, s);
        if (per.valid) {
            auto cls = classify_sides(ctx, per);
            auto v = std::make_shared<std::vector<char>>(cls.size());
            for (std::size_t i = 0; i < cls.size(); ++i) (*v)[i] = static_cast<char>(cls[i]);
            sides = v;
        }
        std::lock_guard<std::mutex> lock(ctx.side_mu);
        ctx.side_cache.emplace(key, sides);
    }
    if (!sides) return std::nullopt;
    CoverSplit sp;
    sp.banned = banned_set(ctx, s) & D;
    sp.d1 = sp.d2 = sp.banned;
    for (Mask r = D; r; r &= r - 1) {
        int q = __builtin_ctzll(r);
        auto side = static_cast<Side>((*sides)[fam[q].vertices[0]]);
        if (side == Side::Enc) sp.d1 |= bit(q);
        else if (side == Side::Exc) sp.d2 |= bit(q);
        else if (!(sp.banned >> q & 1)) throw Error(Errc::Internal, "centre on a perimeter is not banned");
    }
    for (Mask r = C; r; r &= r - 1) {
        int i = __builtin_ctzll(r);
        auto side = static_cast<Side>((*sides)[clients[i]]);
        if (side != Side::Exc) sp.c1 |= bit(i);
        if (side != Side::Enc) sp.c2 |= bit(i);
    }
    return sp;
}

std::vector<CoverSplit> enumerate_family_mwdsc(const Context& ctx, Mask D, const std::vector<int>& clients,
                                               Mask C, const std::vector<int>& important,
                                               const EnumerationParams& p) {
    check_budget(D, important, p);
    const auto& fam = ctx.family;
    for (Mask r = D; r; r &= r - 1)
        if (fam[__builtin_ctzll(r)].vertices.size() != 1)
            throw Error(Errc::InvalidArgument, "centres must be single vertices");
    std::set<std::tuple<Mask, Mask, Mask, Mask, Mask>> seen;
    std::vector<CoverSplit> out;
    for_each_candidate(ctx, D, important, p.max_len, [&](const Separator& s) {
        auto sp = cover_split(ctx, D, clients, C, s);
        if (sp && seen.insert({sp->d1, sp->d2, sp->c1, sp->c2, sp->banned}).second) out.push_back(*sp);
    });
    return out;
}

}  // namespace vsep
