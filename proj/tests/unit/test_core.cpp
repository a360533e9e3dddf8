#include <doctest.h>

#include <random>

#include "mpmo/core.hpp"
#include "support/oracles.hpp"

using namespace mpmo;

namespace
{

bool pd(std::vector<double> a, std::vector<double> b)
{
    return pareto_dominates(a, b);
}

std::vector<PartyObjectives> scaled(std::vector<PartyObjectives> pop, double k)
{
    for (auto &s : pop) {
        for (auto &v : s) {
            for (auto &x : v) {
                x *= k;
            }
        }
    }
    return pop;
}

} // namespace

TEST_CASE("pareto dominance examples")
{
    CHECK(pd({1, 2}, {2, 2}));
    CHECK_FALSE(pd({1, 2}, {1, 2}));
    CHECK_FALSE(pd({1, 3}, {2, 2}));
    CHECK_FALSE(pd({2, 2}, {1, 3}));
    CHECK_THROWS_AS(pd({1, 2}, {1, 2, 3}), contract_violation);
}

TEST_CASE("pareto dominance is a strict partial order")
{
    std::mt19937_64 g(11);
    for (int trial = 0; trial < 2000; ++trial) {
        auto pop = oracle::random_population(g, 3, {3}, 3);
        const auto &a = pop[0][0], &b = pop[1][0], &c = pop[2][0];
        CHECK_FALSE(pareto_dominates(a, a));
        if (pareto_dominates(a, b)) {
            CHECK_FALSE(pareto_dominates(b, a));
        }
        if (pareto_dominates(a, b) && pareto_dominates(b, c)) {
            CHECK(pareto_dominates(a, c));
        }
        CHECK(pareto_dominates(a, b) == oracle::dominates(a, b));
    }
}

TEST_CASE("nondominated sort examples")
{
    CHECK(nondominated_sort({{1, 2}, {2, 1}, {3, 3}}) == std::vector<int>{0, 0, 1});
    CHECK(nondominated_sort({{0, 0}}) == std::vector<int>{0});
    CHECK(nondominated_sort({{1, 1}, {1, 1}}) == std::vector<int>{0, 0});
    CHECK_THROWS_AS(nondominated_sort({}), contract_violation);
}

TEST_CASE("nondominated sort matches layered peeling")
{
    std::mt19937_64 g(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<ObjectiveVector> pts(50, ObjectiveVector(2));
        for (auto &p : pts) {
            p = {u(g), u(g)};
        }
        CHECK(nondominated_sort(pts) == oracle::peel_ranks(pts));
    }
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<ObjectiveVector> pts;
        for (auto &s : oracle::random_population(g, 60, {3}, 4)) {
            pts.push_back(s[0]);
        }
        const auto ranks = nondominated_sort(pts);
        CHECK(ranks == oracle::peel_ranks(pts));
        std::vector<std::size_t> zero;
        for (std::size_t i = 0; i < ranks.size(); ++i) {
            if (ranks[i] == 0) {
                zero.push_back(i);
            }
        }
        CHECK(zero == oracle::pareto_filter(pts));
    }
}

TEST_CASE("multiparty dominance examples")
{
    CHECK(mp_dominates({{1, 1}, {1, 2}}, {{2, 2}, {2, 1}}));
    CHECK_FALSE(mp_dominates({{1, 1}, {2, 2}}, {{2, 2}, {1, 1}}));
    CHECK_FALSE(mp_dominates({{1, 1}, {1, 2}}, {{1, 1}, {1, 2}}));
    CHECK_THROWS_AS(mp_dominates({{1, 1}}, {{1, 1}, {1, 1}}), contract_violation);
    CHECK_THROWS_AS(mp_dominates({{1, 1}}, {{1, 1, 1}}), contract_violation);
}

TEST_CASE("multiparty dominance properties on random pairs")
{
    std::mt19937_64 g(13);
    for (int trial = 0; trial < 3000; ++trial) {
        auto pop = oracle::random_population(g, 2, {2, 3}, 3);
        const auto &a = pop[0], &b = pop[1];
        CHECK_FALSE(mp_dominates(a, a));
        const bool ab = mp_dominates(a, b);
        CHECK(ab == oracle::mp_dominates(a, b));
        if (ab) {
            CHECK_FALSE(mp_dominates(b, a));
            for (std::size_t j = 0; j < a.size(); ++j) {
                CHECK_FALSE(pareto_dominates(b[j], a[j]));
            }
        }
        auto one = oracle::random_population(g, 2, {3}, 3);
        CHECK(mp_dominates(one[0], one[1]) == pareto_dominates(one[0][0], one[1][0]));
    }
}

TEST_CASE("multiparty filter examples")
{
    CHECK(mp_nondominated_filter({{{1, 1}}}) == std::vector<std::size_t>{0});
    CHECK(mp_nondominated_filter({{{1, 1}, {1, 2}}, {{2, 2}, {2, 1}}}) == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(mp_nondominated_filter({}), contract_violation);
    CHECK_THROWS_AS(mp_nondominated_filter({{{1, 1}}, {{1, 1, 1}}}), contract_violation);
}

TEST_CASE("multiparty filter matches the pairwise oracle")
{
    std::mt19937_64 g(14);
    for (int trial = 0; trial < 30; ++trial) {
        const auto pop = oracle::random_real_population(g, 100, {2, 2});
        CHECK(mp_nondominated_filter(pop) == oracle::mp_filter(pop));
        const auto ties = oracle::random_population(g, 100, {2, 2}, 4);
        CHECK(mp_nondominated_filter(ties) == oracle::mp_filter(ties));
    }
}

TEST_CASE("dominance results are invariant under positive scaling")
{
    std::mt19937_64 g(15);
    for (int trial = 0; trial < 20; ++trial) {
        const auto pop = oracle::random_real_population(g, 40, {2, 3});
        const auto big = scaled(pop, 7.5);
        CHECK(mp_nondominated_filter(pop) == mp_nondominated_filter(big));
        std::vector<ObjectiveVector> p0, b0;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            p0.push_back(pop[i][1]);
            b0.push_back(big[i][1]);
            CHECK(mp_dominates(pop[i], pop[0]) == mp_dominates(big[i], big[0]));
        }
        CHECK(nondominated_sort(p0) == nondominated_sort(b0));
    }
}

TEST_CASE("structure checks")
{
    const std::vector<std::size_t> ar{2, 3};
    CHECK_NOTHROW(check_structure({{1, 2}, {1, 2, 3}}, ar));
    CHECK_THROWS_AS(check_structure({{1, 2}}, ar), contract_violation);
    CHECK_THROWS_AS(check_structure({{1, 2}, {1, 2}}, ar), contract_violation);
    CHECK_THROWS_AS(check_structure({{1, NAN}, {1, 2, 3}}, ar), contract_violation);
    CHECK(arities_of({{1}, {1, 2, 3}}) == std::vector<std::size_t>{1, 3});
    CHECK(total_violation(std::vector<double>{0.5, 0.0, 1.5}) == 2.0);
}
