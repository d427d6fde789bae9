#include "vsep/sampling.hpp"

#include "vsep/error.hpp"

namespace vsep {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

int half_on(const Embedding& pe, int f, int e) {
    for (int h : pe.faces[f])
        if ((h >> 1) == e) return h;
    throw Error(Errc::Internal, "edge not on face");
}

}  // namespace

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(stream)));
}

bool bernoulli(std::mt19937_64& rng, const Rational& q) {
    if (sgn(q) <= 0) return false;
    if (q >= 1) return true;
    // compare a uniform real, 64 bits at a time, with the expansion of q
    Rational r = q;
    const Integer scale = Integer(1) << 64;
    for (;;) {
        Rational t = r * scale;
        Integer whole = t.get_num() / t.get_den();
        std::uint64_t u = rng();
        Integer uz;
        mpz_import(uz.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
        if (uz < whole) return true;
        if (uz > whole) return false;
        r = t - Rational(whole);
        if (sgn(r) == 0) return false;
    }
}

Mask objects_inside(const ObjectFamily& fam, Mask pool, const std::vector<char>& inside) {
    Mask out = 0;
    for (Mask r = pool; r; r &= r - 1) {
        int q = __builtin_ctzll(r);
        bool all = true;
        for (int v : fam[q].vertices)
            if (!inside[v]) {
                all = false;
                break;
            }
        if (all) out |= bit(q);
    }
    return out;
}

std::vector<Spoke> spokes(const Context& ctx, const VoronoiPartition& part, const VoronoiDiagram& d) {
    std::vector<Spoke> out;
    const auto& g = *ctx.graph;
    for (int x = 0; x < d.h.n; ++x)
        for (int u : g.face_vertices(d.branch_face[x])) {
            Spoke s;
            s.hvertex = x;
            s.vertex = u;
            s.site = part.cell[u];
            s.path = ctx.metric->path_to_object(u, s.site);
            s.conflicts = ctx.metric->conflicts(u, s.site);
            out.push_back(std::move(s));
        }
    return out;
}

Diamond diamond(const Context& ctx, const VoronoiPartition& part, const VoronoiDiagram& d, int hedge) {
    const auto& g = *ctx.graph;
    const auto& pe = g.embedding();
    const auto& sd = *ctx.sd;
    int f1 = d.branch_face[d.h.ends[hedge][0]], f2 = d.branch_face[d.h.ends[hedge][1]];
    int e1 = d.crossed[hedge].front(), em = d.crossed[hedge].back();
    int h1 = half_on(pe, f1, e1), h2 = half_on(pe, f2, em);
    int u11 = pe.head(h1), u12 = pe.tail(h1);
    int u21 = pe.tail(h2), u22 = pe.head(h2);
    Diamond out;
    out.hedge = hedge;
    out.left_site = part.cell[u11];
    out.right_site = part.cell[u12];
    if (part.cell[u21] != out.left_site || part.cell[u22] != out.right_site)
        throw Error(Errc::Internal, "Voronoi edge sides disagree");
    if (d.face_object[d.h.face_left[2 * hedge]] != out.left_site)
        throw Error(Errc::Internal, "Voronoi edge orientation mismatch");
    std::vector<int> walk{sd.centre(f1)};
    auto a = sd.refine_path(ctx.metric->et_path(out.right_site, u12, u22), g);
    walk.insert(walk.end(), a.begin(), a.end());
    walk.push_back(sd.centre(f2));
    auto b = sd.refine_path(ctx.metric->et_path(out.left_site, u21, u11), g);
    walk.insert(walk.end(), b.begin(), b.end());
    out.walk = walk;
    auto reg = compute_regions(sd.embedding(), sd.edges_of_closed_walk(walk));
    int inner = reg.vertex_region[sd.mid(e1)];
    if (inner < 0) throw Error(Errc::Internal, "crossed edge lies on its diamond");
    for (int v = 0; v < g.vertex_count(); ++v)
        if (reg.vertex_region[v] == inner) out.interior_vertices.push_back(v);
    return out;
}

std::vector<Diamond> diamonds(const Context& ctx, const VoronoiPartition& part, const VoronoiDiagram& d) {
    std::vector<Diamond> out;
    for (int i = 0; i < d.h.edge_count(); ++i) out.push_back(diamond(ctx, part, d, i));
    return out;
}

Rational sampling_threshold(const Rational& W, int ell) {
    return Rational(10) * ln_upper(Rational(ell)) * W / Rational(ell);
}

SampleStats evaluate_sample(const Context& ctx, Mask F, const std::vector<int>& S, const Rational& W, int ell) {
    SampleStats st;
    const int k = static_cast<int>(S.size());
    st.size_ok = k >= 4 && k <= 2 * ell;
    if (k < 4) return st;
    auto part = voronoi_partition(ctx, S);
    auto d = voronoi_diagram(ctx, part);
    const auto& fam = ctx.family;
    for (const auto& s : spokes(ctx, part, d)) {
        Rational w = fam.weight(s.conflicts & F);
        if (w > st.max_spoke) st.max_spoke = w;
    }
    std::vector<char> inside(ctx.graph->vertex_count());
    for (int i = 0; i < d.h.edge_count(); ++i) {
        auto dm = diamond(ctx, part, d, i);
        std::fill(inside.begin(), inside.end(), 0);
        for (int v : dm.interior_vertices) inside[v] = 1;
        Rational w = fam.weight(objects_inside(fam, F, inside));
        if (w > st.max_diamond) st.max_diamond = w;
    }
    Rational eta = sampling_threshold(W, ell);
    st.light = st.size_ok && st.max_spoke <= eta && st.max_diamond <= eta;
    return st;
}

SampleStats sample_attempt(const Context& ctx, Mask F, const Rational& W, int ell, std::mt19937_64& rng,
                           std::vector<int>& out) {
    out.clear();
    const auto& fam = ctx.family;
    for (Mask r = F; r; r &= r - 1) {
        int p = __builtin_ctzll(r);
        if (bernoulli(rng, fam[p].weight * Rational(ell) / W)) out.push_back(p);
    }
    const int k = static_cast<int>(out.size());
    if (k < 4 || k > 2 * ell) return SampleStats{};
    return evaluate_sample(ctx, F, out, W, ell);
}

SampleResult sample_family(const Context& ctx, Mask F, const Rational& W, int ell, std::uint64_t seed,
                           int max_attempts) {
    if (ell < 10) throw Error(Errc::PreconditionWeight, "ell must be at least 10");
    if (sgn(W) <= 0) throw Error(Errc::PreconditionWeight, "W must be positive");
    const auto& fam = ctx.family;
    if (!fam.independent(F)) throw Error(Errc::NotIndependent, "sampling pool is not independent");
    for (Mask r = F; r; r &= r - 1) {
        int p = __builtin_ctzll(r);
        if (fam[p].weight * Rational(ell) > W)
            throw Error(Errc::PreconditionWeight, "object " + std::to_string(p) + " heavier than W/ell");
    }
    SampleResult res;
    res.eta = sampling_threshold(W, ell);
    const int size = __builtin_popcountll(F);
    if (fam.weight(F) <= res.eta && size >= 4 && size <= 2 * ell) {
        std::vector<int> all;
        for (Mask r = F; r; r &= r - 1) all.push_back(__builtin_ctzll(r));
        res.sample = all;
        res.direct = true;
        res.stats = evaluate_sample(ctx, F, all, W, ell);
        return res;
    }
    auto rng = make_rng(seed, 0x5a3d1e);
    std::vector<int> S;
    for (int a = 1; a <= max_attempts; ++a) {
        auto st = sample_attempt(ctx, F, W, ell, rng, S);
        if (st.light) {
            res.sample = S;
            res.attempts = a;
            res.stats = st;
            return res;
        }
    }
    throw Error(Errc::ExhaustedAttempts, "no light sample after " + std::to_string(max_attempts) + " attempts");
}

}  // namespace vsep
