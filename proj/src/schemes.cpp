#include "vsep/schemes.hpp"

#include "vsep/error.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <map>
#include <sstream>

namespace vsep {

namespace {

std::vector<int> ids_of(Mask m) {
    std::vector<int> out;
    for (; m; m &= m - 1) out.push_back(__builtin_ctzll(m));
    return out;
}

Mask mask_of(const std::vector<int>& ids) {
    Mask m = 0;
    for (int i : ids) m |= bit(i);
    return m;
}

Mask low_bits(int k) { return k >= kMaskBits ? ~Mask{0} : bit(k) - 1; }

long long ceil_ll(const Rational& q) {
    Rational c = ceil_q(q);
    if (c > Rational(static_cast<double>(std::numeric_limits<long long>::max() / 4)))
        return std::numeric_limits<long long>::max() / 4;
    return c.get_num().get_si();
}

}  // namespace

SchemeParams SchemeParams::paper(Problem pb, const Rational& epsilon, int N) {
    const Rational top = pb == Problem::Mwiso ? Rational(1, 10) : Rational(1, 20);
    if (sgn(epsilon) <= 0 || epsilon >= top)
        throw Error(Errc::InvalidArgument, "epsilon must lie in (0," + to_string(top) + ")");
    SchemeParams p;
    p.problem = pb;
    p.profile = Profile::Paper;
    p.epsilon = epsilon;
    p.N = std::max(N, 1);
    p.M = Rational(2 * p.N) / epsilon;
    const Rational c = pb == Problem::Mwiso ? Rational(10) : Rational(20);
    Rational dm = c * ln_upper(p.M * Rational(p.N));
    p.d_max = static_cast<int>(floor_q(dm).get_num().get_si());
    p.eps_hat = pb == Problem::Mwiso ? Rational(epsilon / dm) : Rational(epsilon / (Rational(2) * dm));
    p.s = ceil_ll(Rational(1000) / p.eps_hat * ln_upper(Rational(1) / p.eps_hat));
    p.heavy_cap = p.s > 3'000'000'000LL ? std::numeric_limits<long long>::max() / 4 : p.s * p.s;
    p.sep_length_cap = 3 * p.s;
    return p;
}

SchemeParams SchemeParams::desk(Problem pb, const Rational& epsilon, int N) {
    if (sgn(epsilon) <= 0 || epsilon >= 1) throw Error(Errc::InvalidArgument, "epsilon must lie in (0,1)");
    SchemeParams p;
    p.problem = pb;
    p.profile = Profile::Desk;
    p.epsilon = epsilon;
    p.N = std::max(N, 1);
    p.M = Rational(2 * p.N) / epsilon;
    p.s = 2;
    p.heavy_cap = 1;
    if (pb == Problem::Mwiso) {
        p.d_max = 3;
        p.heavy_cap = 3;
        p.sep_length_cap = 3;
        p.eps_hat = epsilon / Rational(p.d_max);
    } else {
        p.d_max = 2;
        p.sep_length_cap = 1;
        p.eps_hat = epsilon / Rational(2 * p.d_max);
    }
    return p;
}

std::string SchemeParams::echo() const {
    std::ostringstream os;
    os << "problem=" << (problem == Problem::Mwiso ? "mwiso" : "mwdsc")
       << " profile=" << (profile == Profile::Paper ? "paper" : "desk") << " epsilon=" << to_string(epsilon)
       << " N=" << N << " M=" << to_string(M) << " d_max=" << d_max << " eps_hat=" << to_string(eps_hat)
       << " s=" << s << " heavy_cap=" << heavy_cap << " sep_length_cap=" << sep_length_cap
       << " brute_force_threshold=" << brute_force_threshold << " budget=" << candidate_budget
       << " span_reduction=" << (span_reduction ? 1 : 0);
    return os.str();
}

void heavy_split(const ObjectFamily& fam, Mask pool, long long cap, bool independent,
                 const std::function<void(Mask)>& fn) {
    auto ids = ids_of(pool);
    const int k = static_cast<int>(ids.size());
    const int top = static_cast<int>(std::min<long long>(cap, k));
    for (int size = 0; size <= top; ++size) {
        std::vector<int> pick;
        std::function<void(int, Mask)> rec = [&](int from, Mask blocked) {
            if (static_cast<int>(pick.size()) == size) {
                fn(mask_of(pick));
                return;
            }
            for (int i = from; i < k; ++i) {
                int p = ids[i];
                if (independent && (blocked >> p & 1)) continue;
                pick.push_back(p);
                rec(i + 1, independent ? blocked | fam.closed_neighbourhood(p) : blocked);
                pick.pop_back();
            }
        };
        rec(0, 0);
    }
}

Rational span(const std::vector<Rational>& weights) {
    if (weights.empty()) return Rational(1);
    auto [lo, hi] = std::minmax_element(weights.begin(), weights.end());
    if (sgn(*lo) <= 0) throw Error(Errc::ZeroWeight, "span needs positive weights");
    return *hi / *lo;
}

std::vector<Mask> span_reduce_mwiso(const ObjectFamily& fam, const Rational& epsilon) {
    const int N = fam.size();
    for (int p = 0; p < N; ++p)
        if (sgn(fam[p].weight) <= 0) throw Error(Errc::ZeroWeight, "object " + std::to_string(p) + " has weight 0");
    const Rational M = Rational(2 * N) / epsilon;
    std::vector<Mask> out;
    for (int p = 0; p < N; ++p) {
        Mask m = 0;
        for (int q = 0; q < N; ++q)
            if (fam[q].weight <= fam[p].weight && fam[q].weight > fam[p].weight / M) m |= bit(q);
        out.push_back(m);
    }
    return out;
}

std::vector<SpanInstance> span_reduce_mwdsc(const std::vector<Rational>& weights, const Rational& epsilon) {
    const int N = static_cast<int>(weights.size());
    for (int p = 0; p < N; ++p)
        if (sgn(weights[p]) <= 0) throw Error(Errc::ZeroWeight, "centre " + std::to_string(p) + " has weight 0");
    const Rational M = Rational(2 * N) / epsilon;
    std::vector<SpanInstance> out;
    for (int p = 0; p < N; ++p) {
        SpanInstance si;
        si.weights = weights;
        Rational floor_w = weights[p] / M;
        for (int q = 0; q < N; ++q) {
            if (weights[q] > weights[p]) continue;
            si.members |= bit(q);
            if (weights[q] < floor_w) si.weights[q] = floor_w;
        }
        out.push_back(std::move(si));
    }
    return out;
}

const char* mode_name(Mode m) {
    switch (m) {
    case Mode::Exact: return "exact";
    case Mode::Qptas: return "qptas";
    case Mode::Infeasible: return "infeasible";
    }
    return "?";
}

ObjectFamily on_triangulation(const ObjectFamily& fam) {
    const auto& g = fam.graph();
    if (g.vertex_count() < 3 || g.is_triangulated()) return fam;
    auto tg = std::make_shared<const PlaneGraph>(g.triangulate());
    std::vector<GraphObject> objs;
    for (const auto& o : fam.objects()) objs.push_back(ObjectFamily::make_object(*tg, o.id, o.weight, o.vertices));
    return ObjectFamily(tg, std::move(objs));
}

namespace {

// Recursive search of the independent-set scheme. Results depend only on
// (D, depth), so repeated sub-instances are answered from a table.
class MwisoSolver {
public:
    MwisoSolver(const Context& ctx, const SchemeParams& p) : ctx_(ctx), p_(p) {}

    Mask solve(Mask D, int depth) {
        ++stats.nodes;
        stats.max_depth = std::max(stats.max_depth, depth);
        if (depth > p_.d_max || D == 0) return 0;
        auto key = std::make_pair(D, depth);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Mask best = 0;
        Rational best_w(0);
        const auto& fam = ctx_.family;
        auto comps = fam.components(D);
        if (comps.size() > 1) {
            // the optimum of a disconnected instance is the union over its components
            for (Mask comp : comps) best |= solve(comp, depth);
        } else if (__builtin_popcountll(D) <= p_.brute_force_threshold) {
            best = exact(D);
        } else {
            heavy_split(fam, D, p_.heavy_cap, true, [&](Mask hv) {
                Mask blocked = 0;
                for (Mask r = hv; r; r &= r - 1) blocked |= fam.closed_neighbourhood(__builtin_ctzll(r));
                Mask Dp = D & ~blocked;
                auto consider = [&](Mask cand) {
                    Rational w = fam.weight(cand);
                    if (w > best_w) {
                        best_w = w;
                        best = cand;
                    }
                };
                if (Dp == 0) {
                    consider(hv);
                    return;
                }
                if (__builtin_popcountll(Dp) < 4) {
                    consider(hv | exact(Dp));
                    return;
                }
                for (Mask X : family(Dp)) {
                    ++stats.candidates;
                    Mask cand = hv;
                    for (Mask comp : fam.components(Dp & ~X)) cand |= solve(comp, depth + 1);
                    consider(cand);
                }
            });
        }
        memo_.emplace(key, best);
        return best;
    }

    SolveStats stats;

private:
    Mask exact(Mask D) {
        ++stats.brute_force;
        return mask_of(exact_mwiso(ctx_.family, D).solution);
    }

    const std::vector<Mask>& family(Mask Dp) {
        auto it = families_.find(Dp);
        if (it != families_.end()) return it->second;
        auto important = ctx_.singular->important_faces(ids_of(Dp));
        EnumerationParams ep;
        ep.max_len = static_cast<int>(std::min<long long>(p_.sep_length_cap, 64));
        ep.budget = p_.candidate_budget;
        auto xs = enumerate_family_mwiso(ctx_, Dp, important, ep);
        if (xs.empty()) xs.push_back(0);
        return families_.emplace(Dp, std::move(xs)).first->second;
    }

    const Context& ctx_;
    const SchemeParams& p_;
    std::map<std::pair<Mask, int>, Mask> memo_;
    std::map<Mask, std::vector<Mask>> families_;
};

class MwdscSolver {
public:
    MwdscSolver(const Context& ctx, const SchemeParams& p, const std::vector<int>& clients,
                const std::vector<Mask>& cover, const std::vector<Rational>& weights)
        : ctx_(ctx), p_(p), clients_(clients), cover_(cover), weights_(weights) {}

    // nullopt stands for the failure marker
    std::optional<Mask> solve(Mask D, Mask C, int depth) {
        ++stats.nodes;
        stats.max_depth = std::max(stats.max_depth, depth);
        if (C == 0) return Mask{0};
        if (depth > p_.d_max) return std::nullopt;
        Mask reach = 0;
        for (Mask r = D; r; r &= r - 1) reach |= cover_[__builtin_ctzll(r)];
        if (C & ~reach) return std::nullopt;
        auto key = std::make_tuple(D, C, depth);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::optional<Mask> best;
        Rational best_w(0);
        auto consider = [&](Mask cand) {
            Rational w = weight(cand);
            if (!best || w < best_w) {
                best = cand;
                best_w = w;
            }
        };
        if (__builtin_popcountll(D) <= p_.brute_force_threshold) {
            best = exact(D, C);
        } else {
            heavy_split(ctx_.family, D, p_.heavy_cap, false, [&](Mask hv) {
                Mask Dp = D & ~hv;
                Mask covered = 0;
                for (Mask r = hv; r; r &= r - 1) covered |= cover_[__builtin_ctzll(r)];
                Mask Cp = C & ~covered;
                if (Cp == 0) {
                    consider(hv);
                    return;
                }
                if (__builtin_popcountll(Dp) < 4) {
                    if (auto sub = exact(Dp, Cp)) consider(hv | *sub);
                    return;
                }
                for (const auto& sp : splits(Dp, Cp)) {
                    ++stats.candidates;
                    auto f1 = solve(sp.d1, sp.c1, depth + 1);
                    if (!f1) continue;
                    auto f2 = solve(sp.d2, sp.c2, depth + 1);
                    if (!f2) continue;
                    consider(hv | *f1 | *f2);
                }
            });
        }
        memo_.emplace(key, best);
        return best;
    }

    Rational weight(Mask m) const {
        Rational w(0);
        for (; m; m &= m - 1) w += weights_[__builtin_ctzll(m)];
        return w;
    }

    SolveStats stats;

private:
    std::optional<Mask> exact(Mask D, Mask C) {
        ++stats.brute_force;
        auto r = exact_cover(cover_, weights_, D, C);
        if (!r.feasible) return std::nullopt;
        return mask_of(r.solution);
    }

    const std::vector<CoverSplit>& splits(Mask Dp, Mask Cp) {
        auto key = std::make_pair(Dp, Cp);
        auto it = splits_.find(key);
        if (it != splits_.end()) return it->second;
        auto fit = important_.find(Dp);
        if (fit == important_.end()) fit = important_.emplace(Dp, ctx_.singular->important_faces(ids_of(Dp))).first;
        EnumerationParams ep;
        ep.max_len = static_cast<int>(std::min<long long>(p_.sep_length_cap, 64));
        ep.budget = p_.candidate_budget;
        return splits_.emplace(key, enumerate_family_mwdsc(ctx_, Dp, clients_, Cp, fit->second, ep)).first->second;
    }

    const Context& ctx_;
    const SchemeParams& p_;
    const std::vector<int>& clients_;
    const std::vector<Mask>& cover_;
    const std::vector<Rational>& weights_;
    std::map<std::tuple<Mask, Mask, int>, std::optional<Mask>> memo_;
    std::map<std::pair<Mask, Mask>, std::vector<CoverSplit>> splits_;
    std::map<Mask, std::vector<int>> important_;
};

void add_stats(SolveStats& a, const SolveStats& b) {
    a.nodes += b.nodes;
    a.max_depth = std::max(a.max_depth, b.max_depth);
    a.candidates += b.candidates;
    a.brute_force += b.brute_force;
}

std::vector<Rational> weights_of(const ObjectFamily& fam) {
    std::vector<Rational> w;
    for (const auto& o : fam.objects()) w.push_back(o.weight);
    return w;
}

// Runs fn(0..count-1) on up to `threads` workers. Outcomes are returned in
// index order so the caller's fold does not depend on the thread count.
template <class R>
struct RunOutcome {
    R value{};
    SolveStats stats;
    std::exception_ptr error;
};

template <class R, class Fn>
std::vector<RunOutcome<R>> run_all(int count, int threads, Fn fn) {
    std::vector<RunOutcome<R>> out(count);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i; (i = next++) < count;) {
            try {
                out[i].value = fn(i, out[i].stats);
            } catch (...) {
                out[i].error = std::current_exception();
            }
        }
    };
    const int k = std::max(1, std::min(threads, count));
    std::vector<std::thread> pool;
    for (int t = 1; t < k; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

// Folds outcomes in order up to the first failure; a budget failure marks
// the report partial, anything else is rethrown.
template <class R, class Consider>
void fold_runs(std::vector<RunOutcome<R>>& outs, SolutionReport& rep, Consider consider) {
    for (auto& o : outs) {
        add_stats(rep.stats, o.stats);
        if (o.error) {
            try {
                std::rethrow_exception(o.error);
            } catch (const Error& e) {
                if (e.code() != Errc::CapExceeded) throw;
                rep.partial = true;
                rep.note = e.what();
                return;
            }
        }
        consider(o.value);
    }
}

}  // namespace

SolutionReport solve_mwiso(const ObjectFamily& input, const SchemeParams& params) {
    SolutionReport rep;
    rep.params = params;
    const int N = input.size();
    if (N > kMaskBits) throw Error(Errc::TooLarge, "at most 64 objects");
    if (N == 0) return rep;
    for (const auto& o : input.objects())
        if (sgn(o.weight) <= 0) throw Error(Errc::ZeroWeight, "object " + std::to_string(o.id) + " has weight 0");
    Mask best = 0;
    Rational best_w(0);
    auto consider = [&](Mask cand) {
        Rational w = input.weight(cand);
        if (w > best_w) {
            best_w = w;
            best = cand;
        }
    };
    if (N <= params.brute_force_threshold) {
        rep.mode = Mode::Exact;
        consider(mask_of(exact_mwiso(input).solution));
        rep.stats.brute_force = 1;
        rep.stats.nodes = 1;
    } else {
        rep.mode = Mode::Qptas;
        auto fam = on_triangulation(input);
        auto ctx = Context::make(fam);
        std::vector<std::pair<Mask, SchemeParams>> runs;
        if (params.span_reduction && span(weights_of(input)) >= params.M) {
            SchemeParams half = params.profile == Profile::Paper
                                    ? SchemeParams::paper(Problem::Mwiso, params.epsilon / 2, N)
                                    : SchemeParams::desk(Problem::Mwiso, params.epsilon / 2, N);
            half.brute_force_threshold = params.brute_force_threshold;
            half.candidate_budget = params.candidate_budget;
            for (Mask m : span_reduce_mwiso(input, params.epsilon)) runs.push_back({m, half});
            rep.note = "span reduced";
        } else {
            runs.push_back({input.all(), params});
        }
        auto outs = run_all<Mask>(static_cast<int>(runs.size()), params.threads, [&](int i, SolveStats& st) {
            MwisoSolver solver(*ctx, runs[i].second);
            struct Sync {
                MwisoSolver& s;
                SolveStats& st;
                ~Sync() { st = s.stats; }
            } sync{solver, st};
            return solver.solve(runs[i].first, 0);
        });
        fold_runs(outs, rep, consider);
    }
    rep.chosen = ids_of(best);
    rep.weight = best_w;
    rep.independent = input.independent(best);
    return rep;
}

SolutionReport solve_mwdsc(const MwdscInstance& inst, const SchemeParams& params) {
    SolutionReport rep;
    rep.params = params;
    validate(inst);
    const int N = static_cast<int>(inst.centers.size());
    if (N > kMaskBits) throw Error(Errc::TooLarge, "at most 64 centres");
    for (int q = 0; q < N; ++q)
        if (sgn(inst.weights[q]) <= 0) throw Error(Errc::ZeroWeight, "centre " + std::to_string(q) + " has weight 0");
    auto cover = cover_masks(inst);
    const Mask all_c = low_bits(static_cast<int>(inst.clients.size()));
    const Mask all_d = low_bits(N);
    std::optional<Mask> best;
    Rational best_w(0);
    auto consider = [&](Mask cand) {
        Rational w(0);
        for (Mask r = cand; r; r &= r - 1) w += inst.weights[__builtin_ctzll(r)];
        if (!best || w < best_w) {
            best = cand;
            best_w = w;
        }
    };
    if (all_c == 0) {
        rep.mode = Mode::Exact;
        best = 0;
    } else if (N <= params.brute_force_threshold) {
        rep.mode = Mode::Exact;
        auto r = exact_cover(cover, inst.weights, all_d, all_c);
        rep.stats.brute_force = 1;
        rep.stats.nodes = 1;
        if (r.feasible) consider(mask_of(r.solution));
    } else {
        rep.mode = Mode::Qptas;
        auto g = inst.graph;
        std::vector<GraphObject> objs;
        for (int q = 0; q < N; ++q) objs.push_back(ObjectFamily::make_object(*g, q, inst.weights[q], {inst.centers[q]}));
        auto fam = on_triangulation(ObjectFamily(g, std::move(objs)));
        auto ctx = Context::make(fam);
        std::vector<std::pair<SpanInstance, SchemeParams>> runs;
        if (params.span_reduction && span(inst.weights) > params.M) {
            SchemeParams half = params.profile == Profile::Paper
                                    ? SchemeParams::paper(Problem::Mwdsc, params.epsilon / 2, N)
                                    : SchemeParams::desk(Problem::Mwdsc, params.epsilon / 2, N);
            half.brute_force_threshold = params.brute_force_threshold;
            half.candidate_budget = params.candidate_budget;
            for (auto& si : span_reduce_mwdsc(inst.weights, params.epsilon)) runs.push_back({si, half});
            rep.note = "span reduced";
        } else {
            runs.push_back({SpanInstance{all_d, inst.weights}, params});
        }
        auto outs = run_all<std::optional<Mask>>(
            static_cast<int>(runs.size()), params.threads, [&](int i, SolveStats& st) {
                const auto& [si, p] = runs[i];
                MwdscSolver solver(*ctx, p, inst.clients, cover, si.weights);
                struct Sync {
                    MwdscSolver& s;
                    SolveStats& st;
                    ~Sync() { st = s.stats; }
                } sync{solver, st};
                return solver.solve(si.members, all_c, 0);
            });
        fold_runs(outs, rep, [&](const std::optional<Mask>& got) {
            if (got) consider(*got);
        });
    }
    if (!best) {
        rep.mode = rep.partial ? rep.mode : Mode::Infeasible;
        return rep;
    }
    rep.chosen = ids_of(*best);
    rep.weight = best_w;
    // witness: lowest chosen centre id within r of each client
    rep.cover_witness.assign(inst.clients.size(), -1);
    for (std::size_t i = 0; i < inst.clients.size(); ++i)
        for (int q : rep.chosen)
            if (cover[q] >> i & 1) {
                rep.cover_witness[i] = q;
                break;
            }
    return rep;
}

}  // namespace vsep
