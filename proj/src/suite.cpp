#include "mpmo/suite.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mpmo::suite
{

namespace
{

using bf::Family;

const std::map<std::string, SuiteProblemSpec> &registry()
{
    static const std::map<std::string, SuiteProblemSpec> specs = [] {
        const double half_pi = std::numbers::pi / 2.0;
        std::vector<SuiteProblemSpec> all{
            {"E1", {{Family::bf1, 1.0}, {Family::bf1, 2.0}}},
            {"E2", {{Family::bf2, 0.0}, {Family::bf2, 3.0}}},
            {"E3", {{Family::bf3, 0.0}, {Family::bf3, half_pi}}},
            {"E4", {{Family::bf4, 0.0}, {Family::bf4, 1.0}}},
            {"E5", {{Family::bf5, 0.0}, {Family::bf5, 1.5}}},
            {"E6", {{Family::bf6, 0.0}, {Family::bf6, 1.0}}},
            {"E7", {{Family::bf1, 0.0}, {Family::bf1, 1.0}, {Family::bf1, 2.0}}},
            {"E8", {{Family::bf2, 0.0}, {Family::bf2, 1.0}, {Family::bf2, 3.0}}},
            {"E9", {{Family::bf4, 0.0}, {Family::bf4, 0.5}, {Family::bf4, 1.0}}},
            {"E10", {{Family::bf5, 0.0}, {Family::bf5, 1.0}, {Family::bf5, 1.5}}},
            {"E11", {{Family::bf6, 0.0}, {Family::bf6, 1.0}, {Family::bf6, 1.5}}},
        };
        std::map<std::string, SuiteProblemSpec> m;
        for (auto &s : all) {
            m.emplace(s.id, s);
        }
        return m;
    }();
    return specs;
}

std::string format17(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

const std::vector<std::string> &problem_ids()
{
    static const std::vector<std::string> ids{"E1", "E2", "E3", "E4", "E5", "E6",
                                              "E7", "E8", "E9", "E10", "E11"};
    return ids;
}

bool is_suite_id(const std::string &id)
{
    return registry().count(id) != 0;
}

const SuiteProblemSpec &spec(const std::string &id)
{
    auto it = registry().find(id);
    if (it == registry().end()) {
        throw std::invalid_argument("unknown suite problem: " + id);
    }
    return it->second;
}

MPProblem make_problem(const std::string &id, std::size_t n)
{
    const SuiteProblemSpec &s = spec(id);
    const Family family = s.parties.front().family;

    MPProblem p;
    p.id = id;
    p.dim = n;
    p.bounds = bf::bounds(family, n);
    for (const auto &party : s.parties) {
        p.arities.push_back(bf::arity(party.family));
    }
    const auto parties = s.parties;
    p.evaluate = [parties, n](std::span<const double> x) {
        if (x.size() != n) {
            throw contract_violation("evaluate: expected " + std::to_string(n) + " variables, got "
                                     + std::to_string(x.size()));
        }
        PartyObjectives out;
        out.reserve(parties.size());
        for (const auto &party : parties) {
            out.push_back(bf::evaluate(party.family, x, party.t));
        }
        return out;
    };
    p.ps_sampler = [parties, n](std::size_t count, std::uint64_t seed) {
        std::vector<DecisionVector> all;
        for (const auto &party : parties) {
            auto pts = bf::ps_sample(party.family, party.t, count, seed, n);
            all.insert(all.end(), std::make_move_iterator(pts.begin()), std::make_move_iterator(pts.end()));
        }
        return all;
    };
    return p;
}

ReferenceFront build_reference_front(const std::string &id, std::size_t n, std::size_t resolution,
                                     std::uint64_t seed)
{
    const MPProblem problem = make_problem(id, n);
    const auto candidates = problem.ps_sampler(resolution, seed);

    std::vector<PartyObjectives> objs;
    objs.reserve(candidates.size());
    for (const auto &x : candidates) {
        objs.push_back(problem.evaluate(x));
    }
    const auto keep = mp_nondominated_filter(objs);
    if (keep.empty()) {
        throw std::logic_error("reference front for " + id + " came out empty");
    }

    ReferenceFront front;
    front.problem_id = id;
    front.dim = n;
    front.arities = problem.arities;
    front.points = select(objs, keep);
    front.resolution = resolution;
    front.seed = seed;
    return front;
}

void write_front(std::ostream &os, const ReferenceFront &front)
{
    os << front.problem_id << ' ' << front.arities.size();
    for (auto m : front.arities) {
        os << ' ' << m;
    }
    os << " n=" << front.dim << " resolution=" << front.resolution << " seed=" << front.seed << '\n';
    for (const auto &pt : front.points) {
        bool first = true;
        for (const auto &party : pt) {
            for (double v : party) {
                os << (first ? "" : " ") << format17(v);
                first = false;
            }
        }
        os << '\n';
    }
}

ReferenceFront read_front(std::istream &is)
{
    ReferenceFront front;
    std::string header;
    if (!std::getline(is, header)) {
        throw std::runtime_error("reference front: missing header");
    }
    std::istringstream hs(header);
    std::size_t parties = 0;
    if (!(hs >> front.problem_id >> parties) || parties == 0) {
        throw std::runtime_error("reference front: malformed header");
    }
    front.arities.resize(parties);
    for (auto &m : front.arities) {
        if (!(hs >> m)) {
            throw std::runtime_error("reference front: malformed arities");
        }
    }
    std::string kv;
    while (hs >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            continue;
        }
        const std::string key = kv.substr(0, eq);
        const std::uint64_t value = std::stoull(kv.substr(eq + 1));
        if (key == "n") {
            front.dim = value;
        } else if (key == "resolution") {
            front.resolution = value;
        } else if (key == "seed") {
            front.seed = value;
        }
    }

    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream ls(line);
        PartyObjectives pt(parties);
        for (std::size_t j = 0; j < parties; ++j) {
            pt[j].resize(front.arities[j]);
            for (auto &v : pt[j]) {
                std::string tok;
                if (!(ls >> tok)) {
                    throw std::runtime_error("reference front: short row");
                }
                v = std::stod(tok);
            }
        }
        front.points.push_back(std::move(pt));
    }
    return front;
}

void save_front(const std::filesystem::path &file, const ReferenceFront &front)
{
    if (file.has_parent_path()) {
        std::filesystem::create_directories(file.parent_path());
    }
    const auto tmp = file.string() + ".tmp";
    {
        std::ofstream os(tmp);
        if (!os) {
            throw std::runtime_error("cannot write " + tmp);
        }
        write_front(os, front);
    }
    std::filesystem::rename(tmp, file);
}

ReferenceFront load_front(const std::filesystem::path &file)
{
    std::ifstream is(file);
    if (!is) {
        throw std::runtime_error("cannot read " + file.string());
    }
    return read_front(is);
}

std::string front_file_name(const std::string &id, std::size_t n, std::size_t resolution, std::uint64_t seed)
{
    return id + "_d" + std::to_string(n) + "_r" + std::to_string(resolution) + "_s" + std::to_string(seed)
           + ".front";
}

ReferenceFront load_or_build_front(const std::filesystem::path &dir, const std::string &id, std::size_t n,
                                   std::size_t resolution, std::uint64_t seed)
{
    const auto file = dir / front_file_name(id, n, resolution, seed);
    if (std::filesystem::exists(file)) {
        return load_front(file);
    }
    auto front = build_reference_front(id, n, resolution, seed);
    save_front(file, front);
    return front;
}

} // namespace mpmo::suite
