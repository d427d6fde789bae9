// Acceptance run: one line per criterion, nonzero exit when any fails.
// Usage: acceptance [AC numbers...]  (default: all)

#include "oracles.hpp"

#include "vsep/geometry.hpp"
#include "vsep/harness.hpp"
#include "vsep/schemes.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

using namespace vsep;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::vector<int> ids_of(Mask m) {
    std::vector<int> out;
    for (; m; m &= m - 1) out.push_back(__builtin_ctzll(m));
    return out;
}

// Greedy maximal independent subfamily in id order.
Mask greedy_independent(const ObjectFamily& fam, Mask pool) {
    Mask out = 0, blocked = 0;
    for (int p : ids_of(pool)) {
        if (blocked >> p & 1) continue;
        out |= bit(p);
        blocked |= fam.closed_neighbourhood(p);
    }
    return out;
}

ObjectFamily disjoint_family(std::uint64_t seed, int n, int k, int size, int wmax) {
    auto rng = make_rng(seed, 1);
    auto g = std::make_shared<const PlaneGraph>(random_triangulation(n, rng));
    auto sets = random_vertex_sets(*g, k, size, true, rng);
    return make_family(g, sets, random_weights(static_cast<int>(sets.size()), 1, wmax, rng));
}

// Clients of `clients` (bit i for clients[i]) within r of some centre in `centres`.
Mask covered_by(const MwdscInstance& inst, const std::vector<int>& centres) {
    if (centres.empty()) return 0;
    std::vector<int> src;
    for (int q : centres) src.push_back(inst.centers[q]);
    auto t = dijkstra(*inst.graph, src);
    Mask out = 0;
    for (std::size_t i = 0; i < inst.clients.size(); ++i) {
        int c = inst.clients[i];
        if (t.source[c] >= 0 && t.key[c].length <= Length(inst.radius)) out |= bit(static_cast<int>(i));
    }
    return out;
}

// 1. Diagram counting identity.
Outcome ac1() {
    Outcome o;
    int done = 0;
    for (std::uint64_t seed = 1; done < 200; ++seed) {
        auto rng = make_rng(seed, 11);
        int n = std::uniform_int_distribution<int>(20, 60)(rng);
        int k = std::uniform_int_distribution<int>(4, 10)(rng);
        auto fam = disjoint_family(seed, n, k, 3, 5);
        if (fam.size() != k) continue;
        auto ctx = Context::make(fam);
        auto part = voronoi_partition(*ctx, oracle::all_ids(k));
        auto d = voronoi_diagram(*ctx, part);
        if (d.h.face_count() != k || d.h.n != 2 * k - 4 || d.h.edge_count() != 3 * k - 6) {
            o.pass = false;
            o.detail = "seed " + std::to_string(seed) + " k=" + std::to_string(k) + " gives " +
                       std::to_string(d.h.face_count()) + "/" + std::to_string(d.h.n) + "/" +
                       std::to_string(d.h.edge_count());
            return o;
        }
        ++done;
    }
    o.detail = "200 diagrams with k faces, 2k-4 branching points, 3k-6 edges";
    return o;
}

ObjectFamily small_family(std::uint64_t seed) {
    auto rng = make_rng(seed, 12);
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.n = std::uniform_int_distribution<int>(15, 35)(rng);
    cfg.objects = std::uniform_int_distribution<int>(4, 6)(rng);
    cfg.size_max = 3;
    return generate_mwiso(cfg);
}

// 2. Important-face containment.
Outcome ac2() {
    Outcome o;
    long subfamilies = 0;
    std::size_t max_faces = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto fam = small_family(seed);
        const int N = fam.size();
        auto ctx = Context::make(fam);
        auto important = ctx->singular->important_faces(oracle::all_ids(N));
        max_faces = std::max(max_faces, important.size());
        if (important.size() > static_cast<std::size_t>(N * N * N * N)) {
            o.pass = false;
            o.detail = "seed " + std::to_string(seed) + ": |I| = " + std::to_string(important.size());
            return o;
        }
        for (Mask m = 1; m < bit(N); ++m) {
            if (__builtin_popcountll(m) < 4 || !fam.independent(m)) continue;
            auto part = voronoi_partition(*ctx, ids_of(m));
            auto d = voronoi_diagram(*ctx, part);
            ++subfamilies;
            for (int f : d.branch_face)
                if (!std::binary_search(important.begin(), important.end(), f)) {
                    o.pass = false;
                    o.detail = "seed " + std::to_string(seed) + ": branching face " + std::to_string(f) +
                               " is not important";
                    return o;
                }
        }
    }
    o.pass = subfamilies > 0;
    o.detail = std::to_string(subfamilies) + " independent subfamilies, max |I| = " + std::to_string(max_faces);
    return o;
}

// 3. Singular-face multiplicity.
Outcome ac3() {
    Outcome o;
    long tuples = 0;
    std::size_t m1 = 0, m2 = 0, m3 = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto fam = small_family(seed);
        const int N = fam.size();
        auto ctx = Context::make(fam);
        const auto& sf = *ctx->singular;
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                for (int c = 0; c < N; ++c) {
                    if (a == b || b == c || a == c || !fam.independent(std::vector<int>{a, b, c})) continue;
                    ++tuples;
                    m1 = std::max(m1, sf.type1(a, b, c).size());
                    m2 = std::max(m2, sf.type2(a, b, c).size());
                    for (int d = 0; d < N; ++d) {
                        if (d == a || d == b || d == c || !fam.independent(std::vector<int>{a, b, c, d})) continue;
                        ++tuples;
                        m3 = std::max(m3, sf.type3(d, a, b, c).size());
                    }
                }
    }
    o.pass = m1 <= 2 && m2 <= 1 && m3 <= 1 && tuples > 0;
    o.detail = std::to_string(tuples) + " ordered tuples, max multiplicities " + std::to_string(m1) + "/" +
               std::to_string(m2) + "/" + std::to_string(m3) + " (bounds 2/1/1)";
    return o;
}

// 4. Sampling success rate.
Outcome ac4() {
    Outcome o;
    std::ostringstream det;
    const int attempts = 1000;
    for (int ell : {10, 15, 20}) {
        auto fam = disjoint_family(100 + ell, 140, 2 * ell + 10, 1, 3);
        auto ctx = Context::make(fam);
        Mask F = fam.all();
        Rational maxw(0);
        for (int p : ids_of(F)) maxw = std::max(maxw, fam[p].weight);
        Rational W = std::max<Rational>(fam.weight(F), maxw * ell);
        auto rng = make_rng(ell, 14);
        int ok = 0;
        std::vector<int> out;
        for (int t = 0; t < attempts; ++t) {
            auto st = sample_attempt(*ctx, F, W, ell, rng, out);
            if (st.size_ok && st.light) ++ok;
        }
        const double p0 = 1.0 / 12;
        const double bound = p0 - 3 * std::sqrt(p0 * (1 - p0) / attempts);
        const double freq = static_cast<double>(ok) / attempts;
        if (freq < bound) o.pass = false;
        char buf[96];
        std::snprintf(buf, sizeof buf, "ell=%d %d/%d=%.3f ", ell, ok, attempts, freq);
        det << buf;
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "(bound %.4f)", 1.0 / 12 - 3 * std::sqrt((1.0 / 12) * (11.0 / 12) / attempts));
    det << buf;
    o.detail = det.str();
    return o;
}

// 5. Balanced-separator contract, re-checked by independent code.
Outcome ac5() {
    Outcome o;
    int done = 0, fallback = 0;
    for (std::uint64_t seed = 1; done < 50 && seed < 500; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.n = 80;
        cfg.objects = 30;
        cfg.size_max = 2;
        cfg.weight_max = 3;
        auto fam = generate_mwiso(cfg);
        auto ctx = Context::make(fam);
        Mask D = fam.all();
        Mask F = greedy_independent(fam, D);
        if (__builtin_popcountll(F) < 4) continue;
        SeparatorParams sp;
        sp.seed = seed;
        Rational maxw(0);
        for (int p : ids_of(F)) maxw = std::max(maxw, fam[p].weight);
        Rational W = std::max<Rational>(fam.weight(F), maxw * sp.s * sp.s);
        SeparatorReport rep;
        try {
            rep = balanced_separator(*ctx, D, F, W, sp);
        } catch (const Error& e) {
            o.pass = false;
            o.detail = "seed " + std::to_string(seed) + ": " + e.what();
            return o;
        }
        ++done;
        fallback += rep.fallback;
        auto important = ctx->singular->important_faces_by_tuples(oracle::all_ids(fam.size()));
        bool b1 = !rep.sep.empty();
        for (const auto& e : rep.sep)
            b1 = b1 && (D >> e.site & 1) && std::binary_search(important.begin(), important.end(), e.face);
        bool b2 = static_cast<long long>(rep.sep.size()) <= 3LL * sp.s;
        Mask ban = oracle::banned_oracle(*ctx, rep.sep) & D;
        bool b3 = oracle::mask_weight([&] {
                      std::vector<Rational> w;
                      for (int p = 0; p < fam.size(); ++p) w.push_back(fam[p].weight);
                      return w;
                  }(),
                                      ban & F) <= sp.epsilon * W;
        bool b4 = true;
        for (Mask comp : oracle::components_oracle(fam, D & ~ban))
            if (fam.weight(comp & F) > W * Rational(9, 10)) b4 = false;
        if (!(b1 && b2 && b3 && b4) || ban != rep.banned) {
            o.pass = false;
            o.detail = "seed " + std::to_string(seed) + ": B1-B4 = " + std::to_string(b1) + std::to_string(b2) +
                       std::to_string(b3) + std::to_string(b4);
            return o;
        }
    }
    o.pass = o.pass && done == 50;
    o.detail = std::to_string(done) + " separators satisfy B1-B4 (" + std::to_string(fallback) +
               " found by the scan fallback)";
    return o;
}

// 6. Sphere-cut width with the exhaustive backend.
Outcome ac6() {
    Outcome o;
    int checked = 0, bridged = 0;
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        auto rng = make_rng(seed, 16);
        int k = std::uniform_int_distribution<int>(4, 5)(rng);
        auto fam = disjoint_family(seed, std::uniform_int_distribution<int>(12, 40)(rng), k, 2, 5);
        if (fam.size() != k) continue;
        auto ctx = Context::make(fam);
        auto part = voronoi_partition(*ctx, oracle::all_ids(k));
        auto d = voronoi_diagram(*ctx, part);
        if (!find_bridges(d.h).empty()) {
            ++bridged;
            continue;
        }
        std::vector<char> all(d.h.edge_count(), 1);
        auto dec = sphere_cut_decomposition(d.h, all, {}, 10);
        const int bound = static_cast<int>(std::ceil(std::sqrt(4.5 * d.h.n)));
        if (!dec.exhaustive || dec.width > bound) {
            o.pass = false;
            o.detail = "seed " + std::to_string(seed) + ": width " + std::to_string(dec.width) + " > " +
                       std::to_string(bound);
            return o;
        }
        ++checked;
    }
    o.pass = checked > 0;
    o.detail = std::to_string(checked) + " exhaustive decompositions within ceil(sqrt(4.5|V(H)|)) (" +
               std::to_string(bridged) + " bridged diagrams skipped)";
    return o;
}

// 7. MWISO end to end.
Outcome ac7() {
    Outcome o;
    int qptas = 0;
    Rational worst(2);
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t seed = 700 + i;
        auto rng = make_rng(seed, 17);
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.n = std::uniform_int_distribution<int>(14, 24)(rng);
        cfg.objects = std::uniform_int_distribution<int>(10, 12)(rng);
        cfg.size_max = 4;
        cfg.weight_max = i % 4 == 3 ? 1000 : 10;
        auto fam = generate_mwiso(cfg);
        auto opt = exact_mwiso(fam);
        Rational eps = i % 2 ? Rational(1, 2) : Rational(1, 5);
        auto params = SchemeParams::desk(Problem::Mwiso, eps, fam.size());
        params.seed = seed;
        auto r = solve_mwiso(fam, params);
        qptas += r.stats.candidates > 0;
        auto v = verify_mwiso(fam, SolutionFile::from_report(Problem::Mwiso, r));
        if (sgn(opt.value) > 0) worst = std::min(worst, Rational(r.weight / opt.value));
        if (!v.ok() || r.partial || r.weight < (1 - eps) * opt.value) {
            o.pass = false;
            o.detail = "seed " + std::to_string(seed) + ": weight " + to_string(r.weight) + " vs optimum " +
                       to_string(opt.value);
            return o;
        }
        params.brute_force_threshold = fam.size();
        auto e = solve_mwiso(fam, params);
        if (e.weight != opt.value || e.chosen != opt.solution) {
            o.pass = false;
            o.detail = "seed " + std::to_string(seed) + ": degenerate mode differs from the oracle";
            return o;
        }
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", worst.get_d());
    o.detail = "100 instances (" + std::to_string(qptas) + " with separator enumeration), worst ratio " + buf +
               ", degenerate mode equals the oracle";
    return o;
}

// 8. MWDSC end to end.
Outcome ac8() {
    Outcome o;
    int infeasible = 0;
    Rational worst(0);
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t seed = 800 + i;
        auto rng = make_rng(seed, 18);
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.n = std::uniform_int_distribution<int>(20, 40)(rng);
        cfg.objects = std::uniform_int_distribution<int>(9, 10)(rng);
        cfg.clients = std::uniform_int_distribution<int>(8, 15)(rng);
        cfg.radius_min = 10;
        cfg.radius_max = 40;
        auto inst = generate_mwdsc(cfg);
        auto opt = exact_mwdsc(inst);
        const Rational eps(1, 5);
        auto params = SchemeParams::desk(Problem::Mwdsc, eps, static_cast<int>(inst.centers.size()));
        params.seed = seed;
        auto r = solve_mwdsc(inst, params);
        auto v = verify_mwdsc(inst, SolutionFile::from_report(Problem::Mwdsc, r));
        bool ok = v.ok() && (r.mode == Mode::Infeasible) == !opt.feasible;
        if (opt.feasible) {
            ok = ok && !r.partial && r.weight <= (1 + eps) * opt.value;
            // the witness is re-derived per client
            for (std::size_t c = 0; ok && c < inst.clients.size(); ++c)
                ok = r.cover_witness.size() == inst.clients.size() && (covered_by(inst, {r.cover_witness[c]}) >> c & 1);
            if (sgn(opt.value) > 0) worst = std::max(worst, Rational(r.weight / opt.value));
        } else {
            ++infeasible;
        }
        if (!ok) {
            o.pass = false;
            o.detail = "seed " + std::to_string(seed) + ": mode " + mode_name(r.mode) + " weight " +
                       to_string(r.weight) + " vs optimum " + (opt.feasible ? to_string(opt.value) : "infeasible");
            return o;
        }
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", worst.get_d());
    o.detail = "100 instances (" + std::to_string(infeasible) + " infeasible), worst ratio " + buf +
               ", every client certified";
    return o;
}

// 9. Split soundness and covering transfer.
Outcome ac9() {
    Outcome o;
    long splits = 0, guaranteed = 0;
    int instances = 0, with_guarantee = 0;
    for (std::uint64_t seed = 1; instances < 50 && seed < 400; ++seed) {
        auto rng = make_rng(seed, 19);
        GeneratorConfig cfg;
        cfg.seed = 900 + seed;
        cfg.n = std::uniform_int_distribution<int>(18, 30)(rng);
        cfg.objects = std::uniform_int_distribution<int>(5, 8)(rng);
        cfg.clients = std::uniform_int_distribution<int>(6, 12)(rng);
        cfg.radius_min = 10;
        cfg.radius_max = 30;
        auto inst = generate_mwdsc(cfg);
        auto opt = exact_mwdsc(inst);
        if (!opt.feasible) continue;
        ++instances;
        const int N = static_cast<int>(inst.centers.size());
        std::vector<GraphObject> objs;
        for (int q = 0; q < N; ++q)
            objs.push_back(ObjectFamily::make_object(*inst.graph, q, inst.weights[q], {inst.centers[q]}));
        auto ctx = Context::make(ObjectFamily(inst.graph, std::move(objs)));
        const Mask D = bit(N) - 1;
        const Mask C = bit(static_cast<int>(inst.clients.size())) - 1;
        Mask optm = 0;
        for (int q : opt.solution) optm |= bit(q);
        auto important = ctx->singular->important_faces(oracle::all_ids(N));
        bool any = false;
        std::string bad;
        for_each_candidate(*ctx, D, important, 2, [&](const Separator& s) {
            if (!bad.empty()) return;
            auto sp = cover_split(*ctx, D, inst.clients, C, s);
            if (!sp) return;
            ++splits;
            Mask ban = oracle::banned_oracle(*ctx, s) & D;
            if ((sp->d1 & sp->d2) != ban || (sp->d1 | sp->d2) != D || (sp->c1 | sp->c2) != C || sp->banned != ban) {
                bad = "split invariants fail";
                return;
            }
            bool sites_in_opt = true;
            for (const auto& e : s) sites_in_opt = sites_in_opt && (optm >> e.site & 1);
            if (!sites_in_opt) return;
            ++guaranteed;
            any = true;
            if ((covered_by(inst, ids_of(optm & sp->d1)) & sp->c1) != sp->c1 ||
                (covered_by(inst, ids_of(optm & sp->d2)) & sp->c2) != sp->c2)
                bad = "covering transfer fails";
        });
        if (!bad.empty()) {
            o.pass = false;
            o.detail = "seed " + std::to_string(seed) + ": " + bad;
            return o;
        }
        with_guarantee += any;
    }
    o.pass = instances == 50 && with_guarantee == instances;
    o.detail = std::to_string(splits) + " splits on " + std::to_string(instances) + " instances; transfer held on " +
               std::to_string(guaranteed) + " splits with optimal sites (" + std::to_string(with_guarantee) +
               " instances have one)";
    return o;
}

std::vector<Point> random_points(std::mt19937_64& rng, int k, int hi, int den) {
    std::set<Point> seen;
    std::vector<Point> out;
    std::uniform_int_distribution<int> c(0, hi);
    while (static_cast<int>(out.size()) < k) {
        Point p{Rational(Rational(c(rng)) / den), Rational(Rational(c(rng)) / den)};
        if (seen.insert(p).second) out.push_back(p);
    }
    return out;
}

// 10. Crossing-graph metric preservation.
Outcome ac10() {
    Outcome o;
    int precision = 0;
    long pairs = 0;
    for (int i = 0; i < 100; ++i) {
        auto rng = make_rng(1000 + i, 20);
        int k = std::uniform_int_distribution<int>(2, 10)(rng);
        auto pts = random_points(rng, k, 16, 2);
        for (auto m : {PlaneMetric::Linf, PlaneMetric::L2}) {
            try {
                auto cg = crossing_graph(pts, m);
                for (int a = 0; a < k; ++a) {
                    auto t = dijkstra(*cg.graph, {cg.anchor[a]});
                    for (int b = 0; b < k; ++b) {
                        ++pairs;
                        if (!(t.key[cg.anchor[b]].length == plane_distance(pts[a], pts[b], m))) {
                            o.pass = false;
                            o.detail = std::string("set ") + std::to_string(i) + " under " + metric_name(m) +
                                       ": distance mismatch";
                            return o;
                        }
                    }
                }
            } catch (const Error& e) {
                if (e.code() != Errc::PrecisionExhausted) throw;
                ++precision;
            }
        }
    }
    o.pass = precision == 0;
    o.detail = "100 point sets, " + std::to_string(pairs) + " anchor pairs exact under d-inf and d2, " +
               std::to_string(precision) + " precision failures";
    return o;
}

// 11. Geometric reductions against geometric brute force.
Outcome ac11() {
    Outcome o;
    int covers = 0, polys = 0;
    for (int i = 0; covers < 50; ++i) {
        auto rng = make_rng(1100 + i, 21);
        int nc = std::uniform_int_distribution<int>(1, 8)(rng);
        int nk = std::uniform_int_distribution<int>(1, 10)(rng);
        auto pts = random_points(rng, nc + nk, 12, 4);
        std::vector<WeightedCenter> centres;
        std::uniform_int_distribution<int> w(1, 9);
        for (int j = 0; j < nc; ++j) centres.push_back({Rational(w(rng)), pts[j]});
        std::vector<Point> clients(pts.begin() + nc, pts.end());
        Shape s = i % 2 ? Shape::UnitSquare : Shape::UnitDisk;
        auto red = reduce_cover(s, centres, clients);
        auto a = exact_mwdsc(red.instance);
        auto b = geometric_cover(s, centres, clients);
        if (a.feasible != b.feasible || (a.feasible && a.value != b.value)) {
            o.pass = false;
            o.detail = "cover instance " + std::to_string(i) + " differs";
            return o;
        }
        ++covers;
    }
    for (int i = 0; polys < 50; ++i) {
        auto rng = make_rng(1200 + i, 21);
        int np = std::uniform_int_distribution<int>(2, 8)(rng);
        std::uniform_int_distribution<int> c(0, 20), sz(1, 6), w(1, 9);
        std::vector<Polygon> ps;
        for (int j = 0; j < np; ++j) {
            int x = c(rng), y = c(rng), dx = sz(rng), dy = sz(rng);
            auto P = [](int a, int b) { return Point{Rational(a), Rational(b)}; };
            if (j % 2) ps.push_back({Rational(w(rng)), {P(x, y), P(x + dx, y), P(x + dx, y + dy), P(x, y + dy)}});
            else ps.push_back({Rational(w(rng)), {P(x, y), P(x + dx, y), P(x, y + dy)}});
        }
        PolygonReduction red;
        try {
            red = reduce_polygons(ps);
        } catch (const Error& e) {
            if (e.code() != Errc::DuplicatePoints) throw;
            continue;  // two polygons share a corner point
        }
        if (exact_mwiso(red.family).value != geometric_mwisp(ps).value) {
            o.pass = false;
            o.detail = "polygon instance " + std::to_string(i) + " differs";
            return o;
        }
        ++polys;
    }
    o.detail = std::to_string(covers) + " disk/square cover instances and " + std::to_string(polys) +
               " polygon instances match";
    return o;
}

// Integer weight 10^u rounded, u uniform in [0, 5].
Rational log_uniform(std::mt19937_64& rng) {
    double u = std::uniform_real_distribution<double>(0, 5)(rng);
    return Rational(static_cast<long>(std::llround(std::pow(10.0, u))));
}

ObjectFamily spread_weights(const ObjectFamily& fam, std::mt19937_64& rng) {
    std::vector<std::vector<int>> sets;
    std::vector<Rational> w;
    for (int p = 0; p < fam.size(); ++p) {
        sets.push_back(fam[p].vertices);
        w.push_back(log_uniform(rng));
    }
    return make_family(fam.graph_ptr(), sets, w);
}

// 12. Span-reduction factor bounds.
Outcome ac12() {
    Outcome o;
    int reduced_iso = 0, reduced_dsc = 0, mwdsc_done = 0;
    for (int i = 0; i < 50; ++i) {
        const std::uint64_t seed = 1300 + i;
        auto rng = make_rng(seed, 22);
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.n = 25;
        cfg.objects = std::uniform_int_distribution<int>(4, 12)(rng);
        auto fam = spread_weights(generate_mwiso(cfg), rng);
        Rational eps = i % 2 ? Rational(1, 2) : Rational(1, 5);
        auto opt = exact_mwiso(fam);
        Rational best(0);
        for (Mask m : span_reduce_mwiso(fam, eps)) {
            reduced_iso += m != fam.all();
            std::vector<Rational> w;
            for (int p = 0; p < fam.size(); ++p) w.push_back(fam[p].weight);
            Rational lo(0), hi(0);
            for (int p : ids_of(m)) {
                hi = std::max(hi, w[p]);
                lo = sgn(lo) == 0 ? w[p] : std::min(lo, w[p]);
            }
            if (hi > Rational(lo * fam.size() * 2 / eps)) o.pass = false;
            best = std::max(best, exact_mwiso(fam, m).value);
        }
        if (best < (1 - eps / 2) * opt.value) {
            o.pass = false;
            o.detail = "mwiso seed " + std::to_string(seed) + " loses more than eps/2";
            return o;
        }
    }
    for (int i = 0; mwdsc_done < 50 && i < 500; ++i) {
        const std::uint64_t seed = 1400 + i;
        auto rng = make_rng(seed, 22);
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.n = 25;
        cfg.objects = std::uniform_int_distribution<int>(4, 10)(rng);
        cfg.clients = std::uniform_int_distribution<int>(3, 12)(rng);
        cfg.radius_min = 15;
        cfg.radius_max = 40;
        auto inst = generate_mwdsc(cfg);
        for (auto& w : inst.weights) w = log_uniform(rng);
        auto opt = exact_mwdsc(inst);
        if (!opt.feasible) continue;
        ++mwdsc_done;
        Rational eps = i % 2 ? Rational(1, 2) : Rational(1, 5);
        auto cover = cover_masks(inst);
        const Mask C = bit(static_cast<int>(inst.clients.size())) - 1;
        std::optional<Rational> best;
        for (const auto& si : span_reduce_mwdsc(inst.weights, eps)) {
            auto r = exact_cover(cover, si.weights, si.members, C);
            if (!r.feasible) continue;
            for (int q = 0; q < static_cast<int>(inst.weights.size()); ++q)
                if ((si.members >> q & 1) && si.weights[q] != inst.weights[q]) {
                    ++reduced_dsc;
                    break;
                }
            // the reduced solution costs no more at true weights
            Rational true_w(0);
            for (int q : r.solution) true_w += inst.weights[q];
            if (true_w > r.value) o.pass = false;
            if (!best || r.value < *best) best = r.value;
        }
        if (!best || *best > (1 + eps / 2) * opt.value) {
            o.pass = false;
            o.detail = "mwdsc seed " + std::to_string(seed) + " inflates more than eps/2";
            return o;
        }
    }
    o.pass = o.pass && mwdsc_done == 50;
    o.detail = "50 MWISO and " + std::to_string(mwdsc_done) + " MWDSC instances within (1-eps/2) and (1+eps/2); " +
               std::to_string(reduced_iso) + " and " + std::to_string(reduced_dsc) + " sub-instances changed";
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0: no limit stated
    Outcome (*run)();
};

}  // namespace

int main(int argc, char** argv) {
    const Criterion all[] = {
        {1, "diagram counting identity", 60, ac1},
        {2, "important-face containment", 300, ac2},
        {3, "singular-face multiplicity", 300, ac3},
        {4, "sampling success rate", 600, ac4},
        {5, "balanced-separator contract", 600, ac5},
        {6, "sphere-cut width", 0, ac6},
        {7, "MWISO vs oracle", 900, ac7},
        {8, "MWDSC vs oracle", 900, ac8},
        {9, "split soundness", 600, ac9},
        {10, "crossing-graph metric", 300, ac10},
        {11, "geometric reductions", 600, ac11},
        {12, "span reduction", 300, ac12},
    };
    std::set<int> pick;
    for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));
    int failed = 0;
    for (const auto& c : all) {
        if (!pick.empty() && !pick.count(c.id)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0 && secs > c.budget_s) {
            o.pass = false;
            o.detail += " [over time budget]";
        }
        std::printf("AC%d %s %s: %s (%.1fs)\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
