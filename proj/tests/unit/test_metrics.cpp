#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mpmo/metrics.hpp"
#include "support/oracles.hpp"

using namespace mpmo;
using namespace mpmo::metrics;

namespace
{

std::vector<ObjectiveVector> random_points(std::mt19937_64 &g, std::size_t n, std::size_t dim, double hi)
{
    std::uniform_real_distribution<double> u(0.0, hi);
    std::vector<ObjectiveVector> pts(n, ObjectiveVector(dim));
    for (auto &p : pts) {
        for (auto &v : p) {
            v = u(g);
        }
    }
    return pts;
}

} // namespace

TEST_CASE("MPIGD identities")
{
    const std::vector<PartyObjectives> ref{{{0, 0}, {0, 0}}};
    const std::vector<PartyObjectives> got{{{1, 0}, {0, 1}}};
    CHECK(mpigd(ref, got) == 2.0);
    CHECK(mpigd(ref, ref) == 0.0);
    CHECK_THROWS_AS(mpigd(std::vector<PartyObjectives>{}, got), contract_violation);
    CHECK_THROWS_AS(mpigd(ref, {}), contract_violation);
    CHECK_THROWS_AS(mpigd(ref, {{{1, 0, 0}, {0, 1}}}), contract_violation);
}

TEST_CASE("MPIGD matches the oracle and is monotone in the obtained set")
{
    std::mt19937_64 g(41);
    for (int trial = 0; trial < 30; ++trial) {
        const auto ref = oracle::random_real_population(g, 57, {2, 3});
        auto got = oracle::random_real_population(g, 13, {2, 3});
        const double v = mpigd(ref, got);
        CHECK(v == doctest::Approx(oracle::mpigd(ref, got)).epsilon(1e-12));
        got.push_back(oracle::random_real_population(g, 1, {2, 3})[0]);
        CHECK(mpigd(ref, got) <= v);
    }
}

TEST_CASE("hv2d examples")
{
    CHECK(hv2d({{0.5, 0.5}}, {1, 1}) == 0.25);
    // Two 0.1875 rectangles overlapping in a 0.0625 corner.
    CHECK(hv2d({{0.25, 0.75}, {0.75, 0.25}}, {1, 1}) == 0.3125);
    CHECK(hv2d({{0.5, 0.5}, {0.9, 0.9}}, {1, 1}) == 0.25);
    CHECK(hv2d({}, {1, 1}) == 0.0);
    CHECK(hv2d({{1.0, 0.5}, {2.0, -1.0}}, {1, 1}) == 0.0);
}

TEST_CASE("hv2d against the grid oracle")
{
    std::mt19937_64 g(42);
    for (int trial = 0; trial < 100; ++trial) {
        auto pts = random_points(g, 1 + trial % 25, 2, 1.3);
        const double v = hv2d(pts, {1.1, 1.1});
        CHECK(v == doctest::Approx(oracle::hv2d_grid(pts, 1.1, 1.1)).epsilon(1e-12));
        std::shuffle(pts.begin(), pts.end(), g);
        CHECK(hv2d(pts, {1.1, 1.1}) == doctest::Approx(v).epsilon(1e-12));
        pts.push_back(random_points(g, 1, 2, 1.3)[0]);
        CHECK(hv2d(pts, {1.1, 1.1}) >= v);
    }
}

TEST_CASE("Monte Carlo hypervolume")
{
    CHECK(hv_monte_carlo({}, {1, 1, 1}, 1000, 1).value == 0.0);
    const auto full = hv_monte_carlo({{0, 0, 0}}, {1.1, 1.1, 1.1}, 100000, 1);
    CHECK(full.value == doctest::Approx(1.1 * 1.1 * 1.1).epsilon(1e-12));
    const auto cube = hv_monte_carlo({{0.5, 0.5, 0.5}}, {1, 1, 1}, 200000, 3);
    CHECK(std::abs(cube.value - 0.125) <= 3.0 * cube.std_error);
    CHECK(hv_monte_carlo({{0.5, 0.5, 0.5}}, {1, 1, 1}, 5000, 3).value
          == hv_monte_carlo({{0.5, 0.5, 0.5}}, {1, 1, 1}, 5000, 3).value);

    std::mt19937_64 g(43);
    for (int trial = 0; trial < 10; ++trial) {
        const auto pts = random_points(g, 8, 2, 1.0);
        const auto mc = hv_monte_carlo(pts, {1, 1}, 100000, static_cast<std::uint64_t>(trial) + 1);
        CHECK(std::abs(mc.value - hv2d(pts, {1, 1})) <= 3.0 * mc.std_error);
    }
}

TEST_CASE("normalisation")
{
    const std::vector<std::vector<PartyObjectives>> sets{{{{2, 7, 5}}, {{4, 3, 5}}, {{3, 5, 5}}}};
    const auto b = normalization_bounds(sets);
    REQUIRE(b.size() == 1);
    CHECK(b[0].ideal == std::vector<double>{2, 3, 5});
    CHECK(b[0].nadir == std::vector<double>{4, 7, 5});
    const auto n = apply_normalization(sets[0], b);
    CHECK(n[0][0] == std::vector<double>{0, 1, 0});
    CHECK(n[1][0] == std::vector<double>{1, 0, 0});
    CHECK(n[2][0] == std::vector<double>{0.5, 0.5, 0});

    // Dominated members do not stretch the bounds.
    const auto d = normalization_bounds({{{{2, 2}}, {{9, 9}}}});
    CHECK(d[0].nadir == std::vector<double>{2, 2});
    CHECK(apply_normalization({{{9, 9}}}, d)[0][0] == std::vector<double>{0, 0});

    const std::vector<std::vector<PartyObjectives>> two{{{{1, 2}, {3, 4}}}, {{{2, 1}, {4, 3}}}};
    const auto ns = normalize_sets(two);
    CHECK(ns.sets.size() == 2);
    CHECK(ns.bounds[0].ideal == std::vector<double>{1, 1});
    CHECK(ns.bounds[1].nadir == std::vector<double>{4, 4});
    for (const auto &s : ns.sets) {
        for (const auto &sol : s) {
            for (const auto &v : sol) {
                for (double x : v) {
                    CHECK(x >= 0.0);
                    CHECK(x <= 1.0);
                }
            }
        }
    }
}

TEST_CASE("MPHV")
{
    CHECK(mphv({}, 2).sum == 0.0);
    const auto origin = mphv({{{0, 0}, {0, 0, 0}}}, 2);
    CHECK(origin.sum == doctest::Approx(1.1 * 1.1 + 1.1 * 1.1 * 1.1).epsilon(1e-12));
    CHECK(origin.averaged == doctest::Approx(origin.sum / 2).epsilon(1e-15));

    std::mt19937_64 g(44);
    for (int trial = 0; trial < 10; ++trial) {
        const auto set = oracle::random_real_population(g, 12, {2});
        std::vector<ObjectiveVector> party0;
        for (const auto &s : set) {
            party0.push_back(s[0]);
        }
        CHECK(mphv(set, 1).sum == hv2d(party0, {1.1, 1.1}));

        const auto ab = oracle::random_real_population(g, 12, {2, 2});
        auto ba = ab;
        for (auto &s : ba) {
            std::swap(s[0], s[1]);
        }
        CHECK(mphv(ab, 2).sum == doctest::Approx(mphv(ba, 2).sum).epsilon(1e-14));

        const auto other = oracle::random_real_population(g, 12, {2, 2});
        const auto x = mphv(ab, 2), y = mphv(other, 2);
        CHECK((x.sum < y.sum) == (x.averaged < y.averaged));
    }
}
