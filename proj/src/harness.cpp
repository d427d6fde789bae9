#include "vsep/harness.hpp"

#include "vsep/error.hpp"
#include "vsep/generators.hpp"
#include "vsep/sampling.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace vsep {

namespace {

std::vector<std::vector<std::string>> tokenize(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<std::vector<std::string>> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (!tok.empty()) out.push_back(std::move(tok));
    }
    return out;
}

void expect_header(const std::vector<std::vector<std::string>>& lines, const std::string& name) {
    if (lines.empty() || lines[0].size() != 2 || lines[0][0] != name || lines[0][1] != "v1")
        throw Error(Errc::ParseError, "expected header '" + name + " v1'");
}

long long parse_int(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(Errc::ParseError, std::string("malformed ") + what + " '" + s + "'");
    }
}

Mode parse_mode(const std::string& s) {
    if (s == "exact") return Mode::Exact;
    if (s == "qptas") return Mode::Qptas;
    if (s == "infeasible") return Mode::Infeasible;
    throw Error(Errc::ParseError, "unknown mode '" + s + "'");
}

}  // namespace

std::string mwdsc_to_text(const MwdscInstance& inst) {
    std::ostringstream out;
    out << "mwdsc v1\n";
    out << "radius " << to_string(inst.radius) << "\n";
    for (std::size_t i = 0; i < inst.centers.size(); ++i)
        out << "center " << inst.centers[i] << " " << to_string(inst.weights[i]) << "\n";
    for (int c : inst.clients) out << "client " << c << "\n";
    return out.str();
}

MwdscInstance parse_mwdsc(std::string_view text, std::shared_ptr<const PlaneGraph> g) {
    auto lines = tokenize(text);
    expect_header(lines, "mwdsc");
    MwdscInstance inst;
    inst.graph = std::move(g);
    bool have_radius = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& tok = lines[i];
        if (tok[0] == "radius" && tok.size() == 2) {
            inst.radius = parse_rational(tok[1]);
            have_radius = true;
        } else if (tok[0] == "center" && tok.size() == 3) {
            inst.centers.push_back(static_cast<int>(parse_int(tok[1], "vertex")));
            inst.weights.push_back(parse_rational(tok[2]));
        } else if (tok[0] == "client" && tok.size() == 2) {
            inst.clients.push_back(static_cast<int>(parse_int(tok[1], "vertex")));
        } else {
            throw Error(Errc::ParseError, "unknown or malformed line '" + tok[0] + "'");
        }
    }
    if (!have_radius) throw Error(Errc::ParseError, "missing radius");
    validate(inst);
    return inst;
}

SolutionFile SolutionFile::from_report(Problem pb, const SolutionReport& r) {
    SolutionFile s;
    s.problem = pb;
    s.mode = r.mode;
    s.weight = r.weight;
    s.chosen = r.chosen;
    s.partial = r.partial;
    s.params = r.params.echo();
    s.seed = r.params.seed;
    s.witness = r.cover_witness;
    return s;
}

SolutionFile SolutionFile::from_oracle(Problem pb, const OracleResult& r) {
    SolutionFile s;
    s.problem = pb;
    s.mode = r.feasible ? Mode::Exact : Mode::Infeasible;
    s.weight = r.value;
    s.chosen = r.solution;
    s.params = "oracle";
    return s;
}

std::string SolutionFile::to_text() const {
    std::ostringstream out;
    out << "solution v1\n";
    out << "problem " << (problem == Problem::Mwiso ? "mwiso" : "mwdsc") << "\n";
    out << "mode " << mode_name(mode) << "\n";
    out << "weight " << to_string(weight) << "\n";
    out << "chosen";
    for (int c : chosen) out << " " << c;
    out << "\n";
    out << "partial " << (partial ? 1 : 0) << "\n";
    out << "params " << params << "\n";
    out << "seed " << seed << "\n";
    if (problem == Problem::Mwdsc && mode != Mode::Infeasible) {
        out << "witness";
        for (int c : witness) out << " " << c;
        out << "\n";
    }
    return out.str();
}

SolutionFile SolutionFile::parse(std::string_view text) {
    auto lines = tokenize(text);
    expect_header(lines, "solution");
    SolutionFile s;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& tok = lines[i];
        const auto& key = tok[0];
        if (key == "problem" && tok.size() == 2) {
            if (tok[1] == "mwiso") s.problem = Problem::Mwiso;
            else if (tok[1] == "mwdsc") s.problem = Problem::Mwdsc;
            else throw Error(Errc::ParseError, "unknown problem '" + tok[1] + "'");
        } else if (key == "mode" && tok.size() == 2) {
            s.mode = parse_mode(tok[1]);
        } else if (key == "weight" && tok.size() == 2) {
            s.weight = parse_rational(tok[1]);
        } else if (key == "chosen") {
            for (std::size_t j = 1; j < tok.size(); ++j) s.chosen.push_back(static_cast<int>(parse_int(tok[j], "id")));
        } else if (key == "witness") {
            for (std::size_t j = 1; j < tok.size(); ++j) s.witness.push_back(static_cast<int>(parse_int(tok[j], "id")));
        } else if (key == "partial" && tok.size() == 2) {
            s.partial = tok[1] == "1";
        } else if (key == "params") {
            std::string p;
            for (std::size_t j = 1; j < tok.size(); ++j) p += (j > 1 ? " " : "") + tok[j];
            s.params = p;
        } else if (key == "seed" && tok.size() == 2) {
            try {
                s.seed = std::stoull(tok[1]);
            } catch (const std::exception&) {
                throw Error(Errc::ParseError, "malformed seed '" + tok[1] + "'");
            }
        } else {
            throw Error(Errc::ParseError, "unknown or malformed line '" + key + "'");
        }
    }
    return s;
}

VerifyReport verify_mwiso(const ObjectFamily& fam, const SolutionFile& s) {
    VerifyReport rep;
    if (s.problem != Problem::Mwiso) rep.failures.push_back("solution is not for mwiso");
    std::set<int> seen;
    Rational w(0);
    for (int id : s.chosen) {
        if (id < 0 || id >= fam.size()) {
            rep.failures.push_back("object id " + std::to_string(id) + " out of range");
            continue;
        }
        if (!seen.insert(id).second) rep.failures.push_back("object " + std::to_string(id) + " repeated");
        w += fam[id].weight;
    }
    std::vector<int> owner(fam.graph().vertex_count(), -1);
    for (int id : seen)
        for (int v : fam[id].vertices) {
            if (owner[v] >= 0)
                rep.failures.push_back("objects " + std::to_string(owner[v]) + " and " + std::to_string(id) +
                                       " share vertex " + std::to_string(v));
            owner[v] = id;
        }
    if (w != s.weight) rep.failures.push_back("weight " + to_string(s.weight) + " differs from " + to_string(w));
    if (s.mode == Mode::Infeasible) rep.failures.push_back("mwiso is never infeasible");
    return rep;
}

VerifyReport verify_mwdsc(const MwdscInstance& inst, const SolutionFile& s) {
    VerifyReport rep;
    if (s.problem != Problem::Mwdsc) rep.failures.push_back("solution is not for mwdsc");
    const int N = static_cast<int>(inst.centers.size());
    const Length r(inst.radius);
    auto within = [&](const std::vector<int>& sources) {
        std::vector<char> ok(inst.clients.size(), 0);
        if (sources.empty()) return ok;
        auto t = dijkstra(*inst.graph, sources);
        for (std::size_t i = 0; i < inst.clients.size(); ++i) {
            int c = inst.clients[i];
            ok[i] = t.source[c] >= 0 && t.key[c].length <= r;
        }
        return ok;
    };
    if (s.mode == Mode::Infeasible) {
        auto ok = within(inst.centers);
        if (std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; }))
            rep.failures.push_back("claimed infeasible but all centres cover every client");
        return rep;
    }
    std::set<int> seen;
    std::vector<int> sources;
    Rational w(0);
    for (int id : s.chosen) {
        if (id < 0 || id >= N) {
            rep.failures.push_back("centre id " + std::to_string(id) + " out of range");
            continue;
        }
        if (!seen.insert(id).second) rep.failures.push_back("centre " + std::to_string(id) + " repeated");
        sources.push_back(inst.centers[id]);
        w += inst.weights[id];
    }
    auto ok = within(sources);
    for (std::size_t i = 0; i < ok.size(); ++i)
        if (!ok[i]) rep.failures.push_back("client " + std::to_string(inst.clients[i]) + " is not covered");
    if (!s.witness.empty()) {
        if (s.witness.size() != inst.clients.size()) {
            rep.failures.push_back("witness has the wrong length");
        } else {
            for (std::size_t i = 0; i < s.witness.size(); ++i) {
                int q = s.witness[i];
                if (!seen.count(q)) {
                    rep.failures.push_back("witness of client " + std::to_string(inst.clients[i]) + " is not chosen");
                    continue;
                }
                auto t = dijkstra(*inst.graph, {inst.centers[q]});
                int c = inst.clients[i];
                if (t.source[c] < 0 || !(t.key[c].length <= r))
                    rep.failures.push_back("witness of client " + std::to_string(c) + " is too far");
            }
        }
    }
    if (w != s.weight) rep.failures.push_back("weight " + to_string(s.weight) + " differs from " + to_string(w));
    return rep;
}

ObjectFamily generate_mwiso(const GeneratorConfig& cfg) {
    auto r1 = make_rng(cfg.seed, 1), r2 = make_rng(cfg.seed, 2), r3 = make_rng(cfg.seed, 3);
    auto g = std::make_shared<const PlaneGraph>(random_triangulation(cfg.n, r1));
    auto sets = random_vertex_sets(*g, cfg.objects, cfg.size_max, cfg.disjoint, r2);
    auto w = random_weights(static_cast<int>(sets.size()), cfg.weight_min, cfg.weight_max, r3);
    return make_family(g, sets, w);
}

MwdscInstance generate_mwdsc(const GeneratorConfig& cfg) {
    auto r1 = make_rng(cfg.seed, 1), r2 = make_rng(cfg.seed, 2), r3 = make_rng(cfg.seed, 3),
         r4 = make_rng(cfg.seed, 4);
    MwdscInstance inst;
    inst.graph = std::make_shared<const PlaneGraph>(random_triangulation(cfg.n, r1));
    std::vector<int> vs(cfg.n);
    for (int i = 0; i < cfg.n; ++i) vs[i] = i;
    std::shuffle(vs.begin(), vs.end(), r2);
    inst.centers.assign(vs.begin(), vs.begin() + std::min(cfg.objects, cfg.n));
    inst.weights = random_weights(static_cast<int>(inst.centers.size()), cfg.weight_min, cfg.weight_max, r3);
    std::shuffle(vs.begin(), vs.end(), r4);
    inst.clients.assign(vs.begin(), vs.begin() + std::min(cfg.clients, cfg.n));
    std::sort(inst.clients.begin(), inst.clients.end());
    inst.radius = Rational(std::uniform_int_distribution<int>(cfg.radius_min, cfg.radius_max)(r4));
    return inst;
}

}  // namespace vsep
