// Command-line front end.
//
// Exit codes: 0 exact result, 3 approximation-mode result, 4 infeasible,
// 5 candidate budget exceeded (partial result), 1 error or failed check,
// 2 usage error.

#include "vsep/error.hpp"
#include "vsep/geometry.hpp"
#include "vsep/harness.hpp"
#include "vsep/sampling.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace vsep;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::InvalidArgument, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(Errc::InvalidArgument, "cannot write '" + path + "'");
    out << text;
}

std::shared_ptr<const PlaneGraph> load_graph(const std::string& path) {
    return std::make_shared<const PlaneGraph>(PlaneGraph::parse(slurp(path)));
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::string join_mask(Mask m) {
    std::vector<int> ids;
    for (; m; m &= m - 1) ids.push_back(__builtin_ctzll(m));
    return join(ids);
}

std::vector<int> ids_or_all(const std::vector<int>& ids, int N) {
    if (!ids.empty()) return ids;
    std::vector<int> all(N);
    for (int i = 0; i < N; ++i) all[i] = i;
    return all;
}

int exit_for(const SolutionReport& r) {
    if (r.partial) return 5;
    if (r.mode == Mode::Infeasible) return 4;
    return r.mode == Mode::Exact ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Voronoi-separator approximation schemes on planar graphs"};
    app.require_subcommand(1);

    std::string graph_path, objects_path, instance_path, solution_path, out_path, profile = "desk";
    std::string epsilon_s = "1/5";
    std::uint64_t seed = 1;
    double budget = std::numeric_limits<double>::infinity();
    int threads = 1, threshold = -1;
    bool verify = false, no_span = false;

    // solve
    auto* solve = app.add_subcommand("solve", "Run the approximation scheme");
    std::string solve_pb;
    solve->add_option("problem", solve_pb, "mwiso or mwdsc")->required()->check(CLI::IsMember({"mwiso", "mwdsc"}));
    solve->add_option("--graph", graph_path, "planar-graph v1 file")->required();
    solve->add_option("--objects", objects_path, "objects v1 file (mwiso)");
    solve->add_option("--instance", instance_path, "mwdsc v1 file (mwdsc)");
    solve->add_option("--epsilon", epsilon_s, "accuracy, a rational");
    solve->add_option("--profile", profile, "paper or desk")->check(CLI::IsMember({"paper", "desk"}));
    solve->add_option("--seed", seed);
    solve->add_option("--budget", budget, "cap on projected candidates per enumeration");
    solve->add_option("--threads", threads);
    solve->add_option("--brute-force-threshold", threshold, "solve families this small exactly");
    solve->add_flag("--no-span-reduction", no_span);
    solve->add_flag("--verify", verify, "re-check the result independently");
    solve->add_option("--out", out_path, "solution file (default stdout)");

    // exact
    auto* exact = app.add_subcommand("exact", "Exhaustive optimum");
    std::string exact_pb;
    exact->add_option("problem", exact_pb)->required()->check(CLI::IsMember({"mwiso", "mwdsc"}));
    exact->add_option("--graph", graph_path)->required();
    exact->add_option("--objects", objects_path);
    exact->add_option("--instance", instance_path);
    exact->add_option("--out", out_path);

    // voronoi
    auto* vor = app.add_subcommand("voronoi", "Voronoi diagram of an independent subfamily");
    std::vector<int> sites;
    vor->add_option("--graph", graph_path)->required();
    vor->add_option("--objects", objects_path)->required();
    vor->add_option("--sites", sites, "object ids (default all)")->delimiter(',');

    // important-faces
    auto* imp = app.add_subcommand("important-faces", "Faces that can be branching points");
    std::vector<int> pool_ids;
    imp->add_option("--graph", graph_path)->required();
    imp->add_option("--objects", objects_path)->required();
    imp->add_option("--ids", pool_ids, "object ids (default all)")->delimiter(',');

    // sample
    auto* smp = app.add_subcommand("sample", "One run of the sampling step");
    int ell = 10, attempts = 200;
    std::string W_s;
    smp->add_option("--graph", graph_path)->required();
    smp->add_option("--objects", objects_path)->required();
    smp->add_option("--ids", pool_ids, "independent object ids (default all)")->delimiter(',');
    smp->add_option("--ell", ell);
    smp->add_option("--W", W_s, "weight bound (default total weight)");
    smp->add_option("--seed", seed);
    smp->add_option("--attempts", attempts);

    // enumerate
    auto* en = app.add_subcommand("enumerate", "Candidate separators of a family");
    int max_len = 1;
    bool dump = false;
    en->add_option("--graph", graph_path)->required();
    en->add_option("--objects", objects_path)->required();
    en->add_option("--ids", pool_ids)->delimiter(',');
    en->add_option("--max-len", max_len);
    en->add_option("--budget", budget);
    en->add_flag("--dump", dump, "print every syntactic candidate");

    // reduce
    auto* red = app.add_subcommand("reduce", "Geometric input to a planar instance");
    std::string red_kind, geometry_path, out_graph;
    red->add_option("kind", red_kind)->required()->check(CLI::IsMember({"polygons", "disks", "squares"}));
    red->add_option("--geometry", geometry_path, "geometry v1 file")->required();
    red->add_option("--out-graph", out_graph)->required();
    red->add_option("--out", out_path, "objects v1 or mwdsc v1 file (default stdout)");

    // generate
    auto* gen = app.add_subcommand("generate", "Random instance");
    std::string gen_pb;
    GeneratorConfig cfg;
    gen->add_option("problem", gen_pb)->required()->check(CLI::IsMember({"mwiso", "mwdsc"}));
    gen->add_option("--seed", cfg.seed);
    gen->add_option("--n", cfg.n, "vertices");
    gen->add_option("--N", cfg.objects, "objects or centres");
    gen->add_option("--weight-min", cfg.weight_min);
    gen->add_option("--weight-max", cfg.weight_max);
    gen->add_option("--size-max", cfg.size_max);
    gen->add_flag("--disjoint", cfg.disjoint);
    gen->add_option("--clients", cfg.clients);
    gen->add_option("--radius-min", cfg.radius_min);
    gen->add_option("--radius-max", cfg.radius_max);
    gen->add_option("--out-graph", out_graph)->required();
    gen->add_option("--out", out_path);

    // verify
    auto* ver = app.add_subcommand("verify", "Check a solution file");
    std::string ver_pb;
    ver->add_option("problem", ver_pb)->required()->check(CLI::IsMember({"mwiso", "mwdsc"}));
    ver->add_option("--graph", graph_path)->required();
    ver->add_option("--objects", objects_path);
    ver->add_option("--instance", instance_path);
    ver->add_option("--solution", solution_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            auto g = load_graph(graph_path);
            const Rational eps = parse_rational(epsilon_s);
            const Problem pb = solve_pb == "mwiso" ? Problem::Mwiso : Problem::Mwdsc;
            std::optional<ObjectFamily> fam;
            std::optional<MwdscInstance> inst;
            int N;
            if (pb == Problem::Mwiso) {
                if (objects_path.empty()) throw Error(Errc::InvalidArgument, "--objects is required");
                fam = ObjectFamily::parse(slurp(objects_path), g);
                N = fam->size();
            } else {
                if (instance_path.empty()) throw Error(Errc::InvalidArgument, "--instance is required");
                inst = parse_mwdsc(slurp(instance_path), g);
                N = static_cast<int>(inst->centers.size());
            }
            auto params = profile == "paper" ? SchemeParams::paper(pb, eps, N) : SchemeParams::desk(pb, eps, N);
            params.seed = seed;
            params.candidate_budget = budget;
            params.threads = threads;
            params.span_reduction = !no_span;
            if (threshold >= 0) params.brute_force_threshold = threshold;
            auto rep = pb == Problem::Mwiso ? solve_mwiso(*fam, params) : solve_mwdsc(*inst, params);
            auto file = SolutionFile::from_report(pb, rep);
            emit(out_path, file.to_text());
            std::cerr << "nodes=" << rep.stats.nodes << " depth=" << rep.stats.max_depth
                      << " candidates=" << rep.stats.candidates << " brute_force=" << rep.stats.brute_force;
            if (!rep.note.empty()) std::cerr << " note=" << rep.note;
            std::cerr << "\n";
            if (verify) {
                auto v = pb == Problem::Mwiso ? verify_mwiso(*fam, file) : verify_mwdsc(*inst, file);
                for (const auto& f : v.failures) std::cerr << "verify: " << f << "\n";
                if (!v.ok()) return 1;
                std::cerr << "verify: ok\n";
            }
            return exit_for(rep);
        }
        if (*exact) {
            auto g = load_graph(graph_path);
            if (exact_pb == "mwiso") {
                auto fam = ObjectFamily::parse(slurp(objects_path), g);
                auto r = exact_mwiso(fam);
                emit(out_path, SolutionFile::from_oracle(Problem::Mwiso, r).to_text());
                return 0;
            }
            auto inst = parse_mwdsc(slurp(instance_path), g);
            auto r = exact_mwdsc(inst);
            auto file = SolutionFile::from_oracle(Problem::Mwdsc, r);
            if (r.feasible) {
                auto cover = cover_masks(inst);
                for (std::size_t i = 0; i < inst.clients.size(); ++i) {
                    int w = -1;
                    for (int q : r.solution)
                        if (cover[q] >> i & 1) {
                            w = q;
                            break;
                        }
                    file.witness.push_back(w);
                }
            }
            emit(out_path, file.to_text());
            return r.feasible ? 0 : 4;
        }
        if (*vor) {
            auto g = load_graph(graph_path);
            auto fam = on_triangulation(ObjectFamily::parse(slurp(objects_path), g));
            auto ctx = Context::make(fam);
            auto part = voronoi_partition(*ctx, ids_or_all(sites, fam.size()));
            auto d = voronoi_diagram(*ctx, part);
            std::cout << "faces " << d.h.face_count() << "\n";
            std::cout << "vertices " << d.h.n << "\n";
            std::cout << "edges " << d.h.edge_count() << "\n";
            for (int x = 0; x < d.h.n; ++x) std::cout << "branch " << x << " face " << d.branch_face[x] << "\n";
            for (int f = 0; f < d.h.face_count(); ++f) std::cout << "cell " << f << " site " << d.face_object[f] << "\n";
            std::cout << "partition";
            for (int c : part.cell) std::cout << " " << c;
            std::cout << "\n";
            return 0;
        }
        if (*imp) {
            auto g = load_graph(graph_path);
            auto fam = on_triangulation(ObjectFamily::parse(slurp(objects_path), g));
            auto ctx = Context::make(fam);
            auto faces = ctx->singular->important_faces(ids_or_all(pool_ids, fam.size()));
            std::cout << "count " << faces.size() << "\n";
            std::cout << "faces " << join(faces) << "\n";
            return 0;
        }
        if (*smp) {
            auto g = load_graph(graph_path);
            auto fam = on_triangulation(ObjectFamily::parse(slurp(objects_path), g));
            auto ctx = Context::make(fam);
            Mask F = 0;
            for (int p : ids_or_all(pool_ids, fam.size())) F |= bit(p);
            Rational W = W_s.empty() ? fam.weight(F) : parse_rational(W_s);
            auto r = sample_family(*ctx, F, W, ell, seed, attempts);
            std::cout << "sample " << join(r.sample) << "\n";
            std::cout << "attempts " << r.attempts << "\n";
            std::cout << "direct " << (r.direct ? 1 : 0) << "\n";
            std::cout << "eta " << to_string(r.eta) << "\n";
            std::cout << "max_spoke " << to_string(r.stats.max_spoke) << "\n";
            std::cout << "max_diamond " << to_string(r.stats.max_diamond) << "\n";
            return 0;
        }
        if (*en) {
            auto g = load_graph(graph_path);
            auto fam = on_triangulation(ObjectFamily::parse(slurp(objects_path), g));
            auto ctx = Context::make(fam);
            Mask D = 0;
            for (int p : ids_or_all(pool_ids, fam.size())) D |= bit(p);
            std::vector<int> ids = ids_or_all(pool_ids, fam.size());
            auto important = ctx->singular->important_faces(ids);
            if (dump) {
                long long index = 0;
                for_each_candidate(*ctx, D, important, max_len, [&](const Separator& s) {
                    auto per = perimeter(*ctx, s);
                    std::cout << "sep " << index++ << " len=" << s.size() << " banned=" << join_mask(banned_set(*ctx, s) & D)
                              << " valid_perimeter=" << (per.valid ? "true" : "false") << "\n";
                });
            }
            EnumerationParams ep;
            ep.max_len = max_len;
            ep.budget = budget;
            auto fam_x = enumerate_family_mwiso(*ctx, D, important, ep);
            std::cout << "important " << important.size() << "\n";
            std::cout << "family " << fam_x.size() << "\n";
            for (Mask x : fam_x) std::cout << "banned " << join_mask(x) << "\n";
            return 0;
        }
        if (*red) {
            auto geo = GeometryInput::parse(slurp(geometry_path));
            if (red_kind == "polygons") {
                auto r = reduce_polygons(geo.polygons);
                emit(out_graph, r.cg.graph->to_text());
                emit(out_path, r.family.to_text());
            } else {
                Shape s = red_kind == "disks" ? Shape::UnitDisk : Shape::UnitSquare;
                auto r = reduce_cover(s, red_kind == "disks" ? geo.disks : geo.squares, geo.clients);
                emit(out_graph, r.cg.graph->to_text());
                emit(out_path, mwdsc_to_text(r.instance));
            }
            return 0;
        }
        if (*gen) {
            if (gen_pb == "mwiso") {
                auto fam = generate_mwiso(cfg);
                emit(out_graph, fam.graph().to_text());
                emit(out_path, fam.to_text());
            } else {
                auto inst = generate_mwdsc(cfg);
                emit(out_graph, inst.graph->to_text());
                emit(out_path, mwdsc_to_text(inst));
            }
            return 0;
        }
        if (*ver) {
            auto g = load_graph(graph_path);
            auto sol = SolutionFile::parse(slurp(solution_path));
            VerifyReport v;
            if (ver_pb == "mwiso")
                v = verify_mwiso(ObjectFamily::parse(slurp(objects_path), g), sol);
            else
                v = verify_mwdsc(parse_mwdsc(slurp(instance_path), g), sol);
            for (const auto& f : v.failures) std::cout << "fail " << f << "\n";
            std::cout << (v.ok() ? "ok" : "failed") << "\n";
            return v.ok() ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == Errc::CapExceeded ? 5 : 1;
    }
    return 1;
}
