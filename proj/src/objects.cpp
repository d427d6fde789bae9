#include "vsep/objects.hpp"

#include "vsep/error.hpp"

#include <algorithm>
#include <sstream>

namespace vsep {

GraphObject ObjectFamily::make_object(const PlaneGraph& g, int id, const Rational& weight, std::vector<int> vertices) {
    if (vertices.empty()) throw Error(Errc::EmptyObject, "object " + std::to_string(id) + " has no vertices");
    if (sgn(weight) < 0) throw Error(Errc::InvalidObject, "object " + std::to_string(id) + " has negative weight");
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw Error(Errc::InvalidObject, "object " + std::to_string(id) + " repeats a vertex");
    const int n = g.vertex_count();
    for (int v : vertices)
        if (v < 0 || v >= n) throw Error(Errc::InvalidObject, "object " + std::to_string(id) + " has vertex out of range");
    GraphObject o;
    o.id = id;
    o.weight = weight;
    o.vertices = vertices;
    o.root = vertices.front();
    std::vector<char> inside(n, 0);
    for (int v : vertices) inside[v] = 1;
    std::vector<char> allowed(g.edge_count(), 0);
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        if (g.is_finite(e) && inside[ed.u] && inside[ed.v]) {
            allowed[e] = 1;
            o.edges.push_back(e);
        }
    }
    if (vertices.size() == 1 && n > 1) {
        bool finite = false;
        for (int h : g.embedding().rot[o.root]) finite = finite || g.is_finite(h >> 1);
        if (!finite) throw Error(Errc::InvalidObject, "object " + std::to_string(id) + " sits on infinite edges only");
    }
    auto t = dijkstra(g, {o.root}, allowed);
    for (int v : vertices) {
        if (t.source[v] < 0) throw Error(Errc::InvalidObject, "object " + std::to_string(id) + " is not connected");
        if (t.parent_edge[v] >= 0) o.tree_edges.push_back(t.parent_edge[v]);
    }
    std::sort(o.tree_edges.begin(), o.tree_edges.end());
    return o;
}

ObjectFamily::ObjectFamily(std::shared_ptr<const PlaneGraph> g, std::vector<GraphObject> objects)
    : g_(std::move(g)), objs_(std::move(objects)) {
    index();
}

void ObjectFamily::index() {
    const int N = size();
    const int n = g_->vertex_count();
    owners_.assign(n, {});
    for (int p = 0; p < N; ++p)
        for (int v : objs_[p].vertices) owners_[v].push_back(p);
    adj_.assign(N, std::vector<char>(N, 0));
    for (int v = 0; v < n; ++v)
        for (int a : owners_[v])
            for (int b : owners_[v]) adj_[a][b] = 1;
    for (int p = 0; p < N; ++p) adj_[p][p] = 1;
    nbr_.assign(N, 0);
    if (N <= kMaskBits)
        for (int p = 0; p < N; ++p)
            for (int q = 0; q < N; ++q)
                if (adj_[p][q]) nbr_[p] |= bit(q);
}

Mask ObjectFamily::closed_neighbourhood(int p) const {
    if (size() > kMaskBits) throw Error(Errc::TooLarge, "family exceeds 64 objects");
    return nbr_[p];
}

Mask ObjectFamily::all() const {
    if (size() > kMaskBits) throw Error(Errc::TooLarge, "family exceeds 64 objects");
    return size() == kMaskBits ? ~Mask{0} : bit(size()) - 1;
}

bool ObjectFamily::independent(const std::vector<int>& ids) const {
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j)
            if (adj_[ids[i]][ids[j]]) return false;
    return true;
}

bool ObjectFamily::independent(Mask m) const {
    for (Mask r = m; r; r &= r - 1) {
        int p = __builtin_ctzll(r);
        if (nbr_[p] & m & ~bit(p)) return false;
    }
    return true;
}

Rational ObjectFamily::weight(const std::vector<int>& ids) const {
    Rational s = 0;
    for (int p : ids) s += objs_[p].weight;
    return s;
}

Rational ObjectFamily::weight(Mask m) const {
    Rational s = 0;
    for (; m; m &= m - 1) s += objs_[__builtin_ctzll(m)].weight;
    return s;
}

Rational ObjectFamily::total_weight() const {
    Rational s = 0;
    for (const auto& o : objs_) s += o.weight;
    return s;
}

std::vector<std::vector<int>> ObjectFamily::components(const std::vector<int>& ids) const {
    std::vector<std::vector<int>> out;
    std::vector<char> used(ids.size(), 0);
    for (std::size_t s = 0; s < ids.size(); ++s) {
        if (used[s]) continue;
        used[s] = 1;
        std::vector<std::size_t> q{s};
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < ids.size(); ++j)
                if (!used[j] && adj_[ids[q[i]]][ids[j]]) {
                    used[j] = 1;
                    q.push_back(j);
                }
        std::vector<int> comp;
        for (auto i : q) comp.push_back(ids[i]);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::vector<Mask> ObjectFamily::components(Mask m) const {
    std::vector<Mask> out;
    while (m) {
        Mask comp = bit(__builtin_ctzll(m)), frontier = comp;
        while (frontier) {
            Mask next = 0;
            for (Mask r = frontier; r; r &= r - 1) next |= nbr_[__builtin_ctzll(r)];
            next &= m & ~comp;
            comp |= next;
            frontier = next;
        }
        out.push_back(comp);
        m &= ~comp;
    }
    return out;
}

ObjectFamily ObjectFamily::reweighted(const std::vector<Rational>& w) const {
    ObjectFamily f = *this;
    for (int p = 0; p < size(); ++p) f.objs_[p].weight = w[p];
    return f;
}

ObjectFamily ObjectFamily::subfamily(const std::vector<int>& ids) const {
    std::vector<GraphObject> objs;
    for (int p : ids) objs.push_back(objs_[p]);
    return ObjectFamily(g_, std::move(objs));
}

std::string ObjectFamily::to_text() const {
    std::ostringstream out;
    out << "objects v1\n";
    for (int p = 0; p < size(); ++p) {
        out << "object " << p << " " << to_string(objs_[p].weight);
        for (int v : objs_[p].vertices) out << " " << v;
        out << "\n";
    }
    return out.str();
}

ObjectFamily ObjectFamily::parse(std::string_view text, std::shared_ptr<const PlaneGraph> g) {
    std::istringstream in{std::string(text)};
    std::string line;
    bool header = false;
    std::vector<std::pair<int, GraphObject>> raw;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (!header) {
            if (tok.size() != 2 || tok[0] != "objects" || tok[1] != "v1")
                throw Error(Errc::ParseError, "expected header 'objects v1'");
            header = true;
            continue;
        }
        if (tok[0] != "object") throw Error(Errc::ParseError, "unknown line '" + tok[0] + "'");
        if (tok.size() < 3) throw Error(Errc::ParseError, "object line needs id and weight");
        int id;
        try {
            std::size_t used = 0;
            id = std::stoi(tok[1], &used);
            if (used != tok[1].size()) throw std::invalid_argument(tok[1]);
        } catch (const std::exception&) {
            throw Error(Errc::ParseError, "malformed object id '" + tok[1] + "'");
        }
        Rational w = parse_rational(tok[2]);
        std::vector<int> verts;
        for (std::size_t i = 3; i < tok.size(); ++i) {
            try {
                std::size_t used = 0;
                verts.push_back(std::stoi(tok[i], &used));
                if (used != tok[i].size()) throw std::invalid_argument(tok[i]);
            } catch (const std::exception&) {
                throw Error(Errc::ParseError, "malformed vertex id '" + tok[i] + "'");
            }
        }
        raw.emplace_back(id, make_object(*g, id, w, std::move(verts)));
    }
    if (!header) throw Error(Errc::ParseError, "missing header");
    std::vector<GraphObject> objs(raw.size());
    std::vector<char> have(raw.size(), 0);
    for (auto& [id, o] : raw) {
        if (id < 0 || id >= static_cast<int>(objs.size()) || have[id])
            throw Error(Errc::ParseError, "object ids must be 0..N-1 without repeats");
        have[id] = 1;
        objs[id] = std::move(o);
    }
    return ObjectFamily(std::move(g), std::move(objs));
}

ObjectMetric::ObjectMetric(const ObjectFamily& fam) : fam_(&fam) {
    const auto& g = fam.graph();
    const int n = g.vertex_count();
    const int N = fam.size();
    spf_.reserve(N);
    for (int p = 0; p < N; ++p) spf_.push_back(dijkstra(g, fam[p].vertices));
    rank_.assign(n, std::vector<int>(N, 0));
    std::vector<int> order(N);
    for (int v = 0; v < n; ++v) {
        for (int p = 0; p < N; ++p) order[p] = p;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            auto c = spf_[a].key[v] <=> spf_[b].key[v];
            return c != 0 ? c < 0 : a < b;
        });
        int r = 0;
        for (int i = 0; i < N; ++i) {
            if (i > 0 && spf_[order[i]].key[v] != spf_[order[i - 1]].key[v]) ++r;
            rank_[v][order[i]] = r;
        }
    }
    et_parent_.assign(N, std::vector<int>(n, -1));
    et_edge_.assign(N, std::vector<int>(n, -1));
    et_depth_.assign(N, std::vector<int>(n, -1));
    for (int p = 0; p < N; ++p) {
        const auto& o = fam[p];
        for (int v = 0; v < n; ++v) {
            et_parent_[p][v] = spf_[p].parent[v];
            et_edge_[p][v] = spf_[p].parent_edge[v];
        }
        // inside p: tree rooted at the smallest vertex
        std::vector<std::vector<std::pair<int, int>>> nb(n);
        for (int e : o.tree_edges) {
            nb[g.edge(e).u].push_back({g.edge(e).v, e});
            nb[g.edge(e).v].push_back({g.edge(e).u, e});
        }
        std::vector<int> stack{o.root};
        std::vector<char> seen(n, 0);
        seen[o.root] = 1;
        et_parent_[p][o.root] = -1;
        et_edge_[p][o.root] = -1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [w, e] : nb[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    et_parent_[p][w] = v;
                    et_edge_[p][w] = e;
                    stack.push_back(w);
                }
        }
        auto& depth = et_depth_[p];
        for (int v = 0; v < n; ++v) {
            if (depth[v] >= 0) continue;
            std::vector<int> chain;
            int x = v;
            while (x >= 0 && depth[x] < 0) {
                chain.push_back(x);
                x = et_parent_[p][x];
            }
            int d = x < 0 ? -1 : depth[x];
            for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth[*it] = ++d;
        }
    }
    if (N <= kMaskBits) {
        conflict_.assign(N, std::vector<Mask>(n, 0));
        for (int p = 0; p < N; ++p) {
            std::vector<char> done(n, 0);
            for (int v : fam[p].vertices) done[v] = 1;
            for (int v = 0; v < n; ++v) {
                std::vector<int> chain;
                int x = v;
                while (!done[x]) {
                    chain.push_back(x);
                    x = spf_[p].parent[x];
                    if (x < 0) throw Error(Errc::Unreachable, "vertex cannot reach object");
                }
                for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
                    int w = *it;
                    Mask m = conflict_[p][spf_[p].parent[w]];
                    for (int q = 0; q < N; ++q)
                        if (rank_[w][q] < rank_[w][p]) m |= bit(q);
                    conflict_[p][w] = m;
                    done[w] = 1;
                }
            }
        }
    }
}

std::pair<PathKey, int> ObjectMetric::dist_to_object(int u, int p) const {
    if (spf_[p].source[u] < 0) throw Error(Errc::Unreachable, "object unreachable");
    return {spf_[p].key[u], spf_[p].source[u]};
}

std::vector<int> ObjectMetric::et_path(int p, int a, int b) const {
    const auto& par = et_parent_[p];
    const auto& dep = et_depth_[p];
    std::vector<int> left, right;
    while (a != b) {
        if (dep[a] >= dep[b]) {
            left.push_back(a);
            a = par[a];
        } else {
            right.push_back(b);
            b = par[b];
        }
        if (a < 0 || b < 0) throw Error(Errc::Internal, "extended tree is disconnected");
    }
    left.push_back(a);
    left.insert(left.end(), right.rbegin(), right.rend());
    return left;
}

std::vector<int> ObjectMetric::path_to_object(int u, int p) const {
    if (spf_[p].source[u] < 0) throw Error(Errc::Unreachable, "object unreachable");
    return spf_[p].path_to_source(u);
}

}  // namespace vsep
