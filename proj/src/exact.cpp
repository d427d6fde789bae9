#include "vsep/exact.hpp"

#include "vsep/error.hpp"

#include <algorithm>
#include <functional>

namespace vsep {

namespace {

std::vector<int> ids_of(Mask m) {
    std::vector<int> out;
    for (; m; m &= m - 1) out.push_back(__builtin_ctzll(m));
    return out;
}

// Lexicographic order on sorted id lists.
bool lex_less(Mask a, Mask b) { return ids_of(a) < ids_of(b); }

}  // namespace

OracleResult exact_mwiso(const ObjectFamily& fam, std::optional<Mask> pool) {
    Mask P = pool ? *pool : fam.all();
    if (__builtin_popcountll(P) > 24) throw Error(Errc::TooLarge, "exact MWISO is capped at 24 objects");
    auto ids = ids_of(P);
    const int k = static_cast<int>(ids.size());
    std::vector<Rational> suffix(k + 1, Rational(0));
    for (int i = k - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + fam[ids[i]].weight;
    OracleResult res;
    Mask best = 0, cur = 0, blocked = 0;
    Rational best_w(0), cur_w(0);
    std::function<void(int)> rec = [&](int i) {
        ++res.count;
        if (cur_w + suffix[i] < best_w) return;
        if (i == k) {
            if (cur_w > best_w || (cur_w == best_w && lex_less(cur, best))) {
                best_w = cur_w;
                best = cur;
            }
            return;
        }
        int p = ids[i];
        if (!(blocked >> p & 1)) {
            Mask saved = blocked;
            cur |= bit(p);
            cur_w += fam[p].weight;
            blocked |= fam.closed_neighbourhood(p);
            rec(i + 1);
            blocked = saved;
            cur_w -= fam[p].weight;
            cur &= ~bit(p);
        }
        rec(i + 1);
    };
    rec(0);
    res.value = best_w;
    res.solution = ids_of(best);
    return res;
}

OracleResult exact_mwiso_unpruned(const ObjectFamily& fam) {
    const int N = fam.size();
    if (N > 24) throw Error(Errc::TooLarge, "exact MWISO is capped at 24 objects");
    OracleResult res;
    Mask best = 0;
    Rational best_w(0);
    for (Mask m = 0; m < (Mask{1} << N); ++m) {
        ++res.count;
        if (!fam.independent(m)) continue;
        Rational w = fam.weight(m);
        if (w > best_w || (w == best_w && lex_less(m, best))) {
            best_w = w;
            best = m;
        }
    }
    res.value = best_w;
    res.solution = ids_of(best);
    return res;
}

void validate(const MwdscInstance& inst) {
    if (!inst.graph) throw Error(Errc::InvalidArgument, "instance without graph");
    const int n = inst.graph->vertex_count();
    if (inst.weights.size() != inst.centers.size())
        throw Error(Errc::InvalidArgument, "one weight per centre required");
    auto sorted = inst.centers;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(Errc::InvalidArgument, "centres must be distinct vertices");
    for (int v : inst.centers)
        if (v < 0 || v >= n) throw Error(Errc::InvalidArgument, "centre out of range");
    for (int v : inst.clients)
        if (v < 0 || v >= n) throw Error(Errc::InvalidArgument, "client out of range");
    for (const auto& w : inst.weights)
        if (sgn(w) < 0) throw Error(Errc::InvalidArgument, "negative centre weight");
    if (sgn(inst.radius) < 0) throw Error(Errc::InvalidArgument, "negative radius");
}

std::vector<Mask> cover_masks(const MwdscInstance& inst) {
    validate(inst);
    if (inst.clients.size() > static_cast<std::size_t>(kMaskBits))
        throw Error(Errc::TooLarge, "more than 64 clients");
    const Length r(inst.radius);
    std::vector<Mask> out;
    for (int c : inst.centers) {
        auto t = dijkstra(*inst.graph, {c});
        Mask m = 0;
        for (std::size_t i = 0; i < inst.clients.size(); ++i)
            if (t.source[inst.clients[i]] >= 0 && t.key[inst.clients[i]].length <= r) m |= bit(static_cast<int>(i));
        out.push_back(m);
    }
    return out;
}

OracleResult exact_cover(const std::vector<Mask>& cover, const std::vector<Rational>& weights, Mask pool, Mask need) {
    if (__builtin_popcountll(pool) > 20) throw Error(Errc::TooLarge, "exact MWDSC is capped at 20 centres");
    auto ids = ids_of(pool);
    const int k = static_cast<int>(ids.size());
    OracleResult res;
    res.feasible = false;
    Mask best = 0;
    Rational best_w(0);
    for (std::uint32_t s = 0; s < (std::uint32_t{1} << k); ++s) {
        ++res.count;
        Mask chosen = 0, covered = 0;
        Rational w(0);
        for (int i = 0; i < k; ++i)
            if (s >> i & 1) {
                chosen |= bit(ids[i]);
                covered |= cover[ids[i]];
                w += weights[ids[i]];
            }
        if ((covered & need) != need) continue;
        if (!res.feasible || w < best_w || (w == best_w && lex_less(chosen, best))) {
            res.feasible = true;
            best_w = w;
            best = chosen;
        }
    }
    if (res.feasible) {
        res.value = best_w;
        res.solution = ids_of(best);
    }
    return res;
}

OracleResult exact_mwdsc(const MwdscInstance& inst) {
    if (inst.centers.size() > 20) throw Error(Errc::TooLarge, "exact MWDSC is capped at 20 centres");
    auto cover = cover_masks(inst);
    Mask pool = inst.centers.empty() ? 0 : (bit(static_cast<int>(inst.centers.size())) - 1);
    Mask need = inst.clients.empty() ? 0 : (inst.clients.size() == 64 ? ~Mask{0} : bit(static_cast<int>(inst.clients.size())) - 1);
    return exact_cover(cover, inst.weights, pool, need);
}

}  // namespace vsep
