#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mpmo/algo.hpp"
#include "mpmo/metrics.hpp"
#include "mpmo/suite.hpp"
#include "support/oracles.hpp"

using namespace mpmo;
using namespace mpmo::algo;

namespace
{

// Two parties of two objectives, unconstrained: f = (x0, 1 - x0) for both
// parties with a shared distance term on x1.
MPProblem toy_problem()
{
    MPProblem p;
    p.id = "toy";
    p.dim = 2;
    p.arities = {2, 2};
    p.bounds.lower = {0.0, 0.0};
    p.bounds.upper = {1.0, 1.0};
    p.evaluate = [](std::span<const double> x) {
        const double d = 1.0 + x[1] * x[1];
        return PartyObjectives{{d * x[0], d * (1.0 - x[0])}, {d * (1.0 - x[0]) * x[0], d * (1.0 - x[0])}};
    };
    return p;
}

// Feasible only for x0 <= 0.25.
MPProblem constrained_toy()
{
    auto p = toy_problem();
    p.constraints = [](std::span<const double> x) { return std::vector<double>{std::max(0.0, x[0] - 0.25)}; };
    return p;
}

// Nothing is ever feasible.
MPProblem impossible_toy()
{
    auto p = toy_problem();
    p.constraints = [](std::span<const double> x) { return std::vector<double>{1.0 + x[0]}; };
    return p;
}

} // namespace

TEST_CASE("MPNDS rank examples")
{
    CHECK(mpnds_rank({{{0, 0}, {0, 0}}, {{1, 1}, {1, 1}}}) == std::vector<int>{0, 1});
    const auto r = mpnds_rank({{{0, 0}, {5, 5}}, {{1, 2}, {0, 0}}, {{3, 3}, {3, 3}}});
    CHECK(r[0] == 0);
    CHECK(r[1] == 0);
    CHECK(r[2] == 1);
    CHECK_THROWS_AS(mpnds_rank({}), contract_violation);
}

TEST_CASE("MPNDS rank properties on random populations")
{
    std::mt19937_64 g(61);
    for (int trial = 0; trial < 60; ++trial) {
        const auto pop = oracle::random_population(g, 40, {2, 2}, 6);
        const auto r = mpnds_rank(pop);
        std::vector<std::vector<int>> per_party(2);
        for (std::size_t j = 0; j < 2; ++j) {
            std::vector<ObjectiveVector> objs;
            for (const auto &s : pop) {
                objs.push_back(s[j]);
            }
            per_party[j] = oracle::peel_ranks(objs);
        }
        std::vector<ObjectiveVector> rank_vectors;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            rank_vectors.push_back({static_cast<double>(per_party[0][i]), static_cast<double>(per_party[1][i])});
            if (per_party[0][i] == 0 && per_party[1][i] == 0) {
                CHECK(r[i] == 0);
            }
        }
        CHECK(r == oracle::peel_ranks(rank_vectors));

        // Positive scaling of one objective of one party.
        auto scaled = pop;
        for (auto &s : scaled) {
            s[1][0] *= 3.5;
        }
        CHECK(mpnds_rank(scaled) == r);
    }
}

TEST_CASE("MPNDS rank 0 can miss a multiparty-nondominated member")
{
    // x, y and z are mutually multiparty-nondominated, but y's rank vector
    // (0, 0) dominates those of x (1, 0) and z (0, 1).
    const std::vector<PartyObjectives> pop{
        {{1, 1}, {0, 0}},  // x
        {{-1, 5}, {-1, 5}}, // y
        {{0, 0}, {1, 1}},  // z
    };
    CHECK(oracle::mp_filter(pop).size() == 3);
    CHECK(mpnds_rank(pop) == std::vector<int>{1, 0, 1});
}

TEST_CASE("multiparty crowding")
{
    const std::vector<PartyObjectives> pop{{{0, 4}, {0, 4}}, {{1, 3}, {2, 2}}, {{2, 2}, {3, 1}}, {{4, 0}, {4, 0}}};
    const auto c = multiparty_crowding(pop, {0, 1, 2, 3});
    CHECK(std::isinf(c[0]));
    CHECK(std::isinf(c[3]));
    // Member 1: party 1 gives 2/4 + 2/4, party 2 gives 3/4 + 3/4.
    CHECK(c[1] == doctest::Approx((1.0 + 1.5) / 2.0).epsilon(1e-15));
    // Member 2: party 1 gives 3/4 + 3/4, party 2 gives 2/4 + 2/4.
    CHECK(c[2] == doctest::Approx((1.5 + 1.0) / 2.0).epsilon(1e-15));
    CHECK(multiparty_crowding(pop, {}).empty());
}

TEST_CASE("feasible nondominated subset")
{
    std::vector<Individual> pop(3);
    pop[0].objs = {{1, 1}};
    pop[1].objs = {{0, 0}};
    pop[1].violation = 0.5;
    pop[2].objs = {{2, 2}};
    const auto a = feasible_nondominated(pop);
    REQUIRE(a.size() == 1);
    CHECK(a[0].objs == PartyObjectives{{1, 1}});
}

TEST_CASE("EA configuration checks")
{
    EAConfig c;
    c.fe_budget = 1000;
    CHECK_NOTHROW(c.validate());
    c.population_size = 7;
    CHECK_THROWS_AS(c.validate(), contract_violation);
    c.population_size = 100;
    c.fe_budget = 50;
    CHECK_THROWS_AS(c.validate(), contract_violation);
    c.fe_budget = 1000;
    c.crossover_prob = 1.5;
    CHECK_THROWS_AS(c.validate(), contract_violation);
}

TEST_CASE("baseline budget, determinism and archive")
{
    const auto p = toy_problem();
    EAConfig c;
    c.fe_budget = 1234; // not a multiple of the population size
    c.seed = 5;
    std::size_t calls = 0;
    RunHooks hooks;
    hooks.trace_metric = [&](const std::vector<Individual> &a) {
        ++calls;
        return static_cast<double>(a.size());
    };
    const auto a = run_baseline(p, c, hooks);
    CHECK(a.evaluations == 1234);
    CHECK(calls == a.trace.size());
    CHECK(a.trace.back().evaluations == 1234);
    CHECK(a.trace.size() >= 10);
    const auto b = run_baseline(p, c, hooks);
    REQUIRE(a.archive.size() == b.archive.size());
    for (std::size_t i = 0; i < a.archive.size(); ++i) {
        CHECK(a.archive[i].x == b.archive[i].x);
        CHECK(a.archive[i].objs == b.archive[i].objs);
    }
    CHECK(mp_nondominated_filter(objectives_of(a.archive)).size() == a.archive.size());

    c.seed = 6;
    const auto d = run_baseline(p, c);
    CHECK(d.archive.front().x != a.archive.front().x);
}

TEST_CASE("best rank present never worsens on an unconstrained problem")
{
    EAConfig c;
    c.fe_budget = 3000;
    std::size_t generations = 0;
    RunHooks hooks;
    hooks.on_generation = [&](std::size_t g, const std::vector<Individual> &pop) {
        generations = g;
        CHECK(pop.size() == c.population_size);
        int best = pop.front().mp_rank;
        for (const auto &ind : pop) {
            best = std::min(best, ind.mp_rank);
        }
        CHECK(best == 0);
    };
    run_baseline(toy_problem(), c, hooks);
    CHECK(generations == 29);
}

TEST_CASE("baseline under constraints")
{
    EAConfig c;
    c.fe_budget = 2000;
    const auto a = run_baseline(constrained_toy(), c);
    CHECK(a.evaluations == 2000);
    REQUIRE_FALSE(a.archive.empty());
    for (const auto &ind : a.archive) {
        CHECK(ind.violation == 0.0);
        CHECK(ind.x[0] <= 0.25);
    }
    const auto none = run_baseline(impossible_toy(), c);
    CHECK(none.archive.empty());
    CHECK(none.evaluations == 2000);
}

TEST_CASE("random search")
{
    const auto p = toy_problem();
    const auto a = run_random_search(p, 3, 500);
    CHECK(a.evaluations == 500);
    CHECK(a.archive.size() <= 500);
    CHECK(mp_nondominated_filter(objectives_of(a.archive)).size() == a.archive.size());
    const auto b = run_random_search(p, 3, 500);
    REQUIRE(a.archive.size() == b.archive.size());
    for (std::size_t i = 0; i < a.archive.size(); ++i) {
        CHECK(a.archive[i].x == b.archive[i].x);
    }
    CHECK(run_random_search(impossible_toy(), 3, 100).archive.empty());
    CHECK_THROWS_AS(run_random_search(p, 3, 0), contract_violation);
}

TEST_CASE("baseline beats random search on E1")
{
    const auto problem = suite::make_problem("E1", 10);
    const auto front = suite::build_reference_front("E1", 10, 2000, 0);
    std::vector<double> ea, rs;
    for (std::uint64_t seed = 1; seed <= 11; ++seed) {
        EAConfig c;
        c.seed = seed;
        c.fe_budget = 20000;
        ea.push_back(metrics::mpigd(front, objectives_of(run_baseline(problem, c).archive)));
        rs.push_back(metrics::mpigd(front, objectives_of(run_random_search(problem, seed, 20000).archive)));
    }
    std::sort(ea.begin(), ea.end());
    std::sort(rs.begin(), rs.end());
    CHECK(ea[5] < rs[5]);
}
