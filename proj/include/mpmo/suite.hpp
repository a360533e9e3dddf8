#pragma once

// The eleven composed problems E1..E11 and their reference multiparty fronts.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mpmo/bf.hpp"
#include "mpmo/core.hpp"

namespace mpmo::suite
{

struct PartySpec {
    bf::Family family;
    double t;
};

struct SuiteProblemSpec {
    std::string id;
    std::vector<PartySpec> parties;
};

/// "E1".."E11".
const std::vector<std::string> &problem_ids();

bool is_suite_id(const std::string &id);

/// Throws std::invalid_argument on an unknown id.
const SuiteProblemSpec &spec(const std::string &id);

MPProblem make_problem(const std::string &id, std::size_t n);

constexpr std::size_t default_resolution = 10000;

struct ReferenceFront {
    std::string problem_id;
    std::size_t dim = 0;
    std::vector<std::size_t> arities;
    std::vector<PartyObjectives> points;
    std::size_t resolution = 0;
    std::uint64_t seed = 0;
};

/// Union of every party's analytic Pareto-set samples, evaluated under all
/// parties, reduced to its multiparty-nondominated subset.
ReferenceFront build_reference_front(const std::string &id, std::size_t n,
                                     std::size_t resolution = default_resolution, std::uint64_t seed = 0);

// Plain-text persistence. Header line:
//   <id> <M> <m_1> ... <m_M> n=<dim> resolution=<r> seed=<s>
// then one row per point, objectives concatenated party-major, 17 significant
// digits, space separated.
void write_front(std::ostream &os, const ReferenceFront &front);
ReferenceFront read_front(std::istream &is);
void save_front(const std::filesystem::path &file, const ReferenceFront &front);
ReferenceFront load_front(const std::filesystem::path &file);

/// Canonical cache file name, e.g. "E1_d10_r10000_s0.front".
std::string front_file_name(const std::string &id, std::size_t n, std::size_t resolution, std::uint64_t seed);

/// Loads the cached front from `dir` or builds and stores it.
ReferenceFront load_or_build_front(const std::filesystem::path &dir, const std::string &id, std::size_t n,
                                   std::size_t resolution = default_resolution, std::uint64_t seed = 0);

} // namespace mpmo::suite
