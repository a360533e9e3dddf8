#pragma once

// Baseline solvers: a generational multiparty EA ranked by multiparty
// nondominated sorting (MPNDS), and a uniform random-search comparator.

#include <cstdint>
#include <functional>
#include <vector>

#include "mpmo/core.hpp"

namespace mpmo::algo
{

struct EAConfig {
    std::size_t population_size = 100;
    double crossover_prob = 0.9;
    double crossover_eta = 20.0;
    double mutation_eta = 20.0;
    // Per-variable mutation probability; <= 0 means 1/n.
    double mutation_prob = 0.0;
    std::size_t tournament_size = 2;
    std::uint64_t seed = 1;
    std::size_t fe_budget = 0;

    void validate() const;
};

struct Individual {
    DecisionVector x;
    PartyObjectives objs;
    double violation = 0.0;
    int mp_rank = 0;
    double crowding = 0.0;
};

/// Step 1: ordinary nondominated-sort rank of every individual in each party.
/// Step 2: nondominated sort of the resulting rank vectors.
std::vector<int> mpnds_rank(const std::vector<PartyObjectives> &pop);

/// Crowding distance of the members `front` (indices into `pop`), computed
/// per party on that party's objectives and averaged over parties. Boundary
/// members get +inf.
std::vector<double> multiparty_crowding(const std::vector<PartyObjectives> &pop, const std::vector<std::size_t> &front);

/// Feasible members that no other feasible member multiparty-dominates.
std::vector<Individual> feasible_nondominated(const std::vector<Individual> &pop);

std::vector<PartyObjectives> objectives_of(const std::vector<Individual> &pop);

struct TracePoint {
    std::size_t evaluations = 0;
    double value = 0.0;
};

struct RunHooks {
    // Scores the current feasible nondominated archive at trace checkpoints.
    // The archive may be empty on constrained problems.
    std::function<double(const std::vector<Individual> &)> trace_metric;
    std::size_t trace_points = 10;
    // Called after every environmental selection (baseline only).
    std::function<void(std::size_t generation, const std::vector<Individual> &)> on_generation;
};

struct RunResult {
    std::vector<Individual> archive;
    std::vector<TracePoint> trace;
    std::size_t evaluations = 0;
    std::size_t generations = 0;
};

/// Generational loop: seeded uniform initialisation, binary tournament on
/// (violation, mp_rank, -crowding), SBX and polynomial mutation, selection by
/// feasibility then mp_rank then crowding. Stops exactly at cfg.fe_budget.
RunResult run_baseline(const MPProblem &problem, const EAConfig &cfg, const RunHooks &hooks = {});

RunResult run_random_search(const MPProblem &problem, std::uint64_t seed, std::size_t fe_budget,
                            const RunHooks &hooks = {});

} // namespace mpmo::algo
