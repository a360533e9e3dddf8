#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "mpmo/uav.hpp"

using namespace mpmo;
using namespace mpmo::uav;

namespace
{

std::shared_ptr<const World> default_world()
{
    static const auto w = std::make_shared<const World>(generate_world(WorldConfig{}));
    return w;
}

World single_center_world(double weight, WorldConfig c = {})
{
    return World(c, {{25.0, 25.0, weight, 8.0}}, {10.0, 10.0});
}

std::vector<double> random_genome(std::mt19937_64 &g)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(genome_length);
    for (auto &v : x) {
        v = u(g);
    }
    return x;
}

Path level_path(double y, double z)
{
    Path p;
    for (int x = 1; x <= 45; ++x) {
        p.points.push_back({static_cast<double>(x), y, z});
    }
    return p;
}

Path raised(Path p, double dz)
{
    for (auto &q : p.points) {
        q.z += dz;
    }
    return p;
}

} // namespace

TEST_CASE("world generation")
{
    WorldConfig c;
    c.seed = 7;
    std::ostringstream a, b, other;
    write_world(a, generate_world(c));
    write_world(b, generate_world(c));
    CHECK(a.str() == b.str());
    c.seed = 8;
    write_world(other, generate_world(c));
    CHECK(a.str() != other.str());

    const auto &w = *default_world();
    double peak = 0.0;
    for (int x = 0; x <= 50; ++x) {
        for (int y = 0; y <= 50; ++y) {
            peak = std::max(peak, w.pedestrian_density(x, y));
            CHECK(w.vehicle_density(x, y) <= w.config().vehicle_scale * w.pedestrian_density(x, y));
        }
    }
    CHECK(peak == doctest::Approx(w.config().peak_density).epsilon(1e-12));
}

TEST_CASE("world file round trip")
{
    const auto &w = *default_world();
    std::stringstream ss;
    write_world(ss, w);
    const World r = read_world(ss);
    CHECK(r.roads() == w.roads());
    REQUIRE(r.centers().size() == w.centers().size());
    for (double x : {3.0, 17.5, 44.0}) {
        CHECK(r.pedestrian_density(x, x) == w.pedestrian_density(x, x));
        CHECK(r.vehicle_density(x, 20.0) == w.vehicle_density(x, 20.0));
    }
    std::stringstream bad(R"({"format": "other"})");
    CHECK_THROWS(read_world(bad));
}

TEST_CASE("population density decays radially from a lone center")
{
    const World w = single_center_world(0.01);
    for (double angle : {0.0, 1.0, 2.5, 4.0}) {
        double prev = w.pedestrian_density(25.0, 25.0);
        for (double r = 0.5; r < 20.0; r += 0.5) {
            const double v = w.pedestrian_density(25.0 + r * std::cos(angle), 25.0 + r * std::sin(angle));
            CHECK(v <= prev);
            prev = v;
        }
    }
}

TEST_CASE("path decoding")
{
    const auto &w = *default_world();
    const auto mid = decode_path(std::vector<double>(genome_length, 0.5), w);
    REQUIRE(mid.points.size() == 46);
    for (std::size_t i = 1; i <= 44; ++i) {
        CHECK(mid.points[i].x == 1.0 + static_cast<double>(i));
        CHECK(mid.points[i].y == 23.0);
        CHECK(mid.points[i].z == 65.0);
    }
    const auto low = decode_path(std::vector<double>(genome_length, 0.0), w);
    for (std::size_t i = 1; i <= 44; ++i) {
        CHECK(low.points[i].y == 1.0);
        CHECK(low.points[i].z == 10.0);
    }
    std::mt19937_64 g(51);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = decode_path(random_genome(g), w);
        CHECK(p.points.front().x == 1.0);
        CHECK(p.points.front().y == 1.0);
        CHECK(p.points.front().z == p.points[1].z);
        CHECK(p.points.back().x == 45.0);
        CHECK(p.points.back().y == 45.0);
        CHECK(p.points.back().z == p.points[44].z);
        CHECK_FALSE(p.clamped);
    }
    std::vector<double> out(genome_length, 0.5);
    out[3] = 1.5;
    const auto clamped = decode_path(out, w);
    CHECK(clamped.clamped);
    CHECK(clamped.points[2].z == 120.0);
    CHECK_THROWS_AS(decode_path(std::vector<double>(87, 0.5), w), contract_violation);
}

TEST_CASE("length")
{
    const auto &w = *default_world();
    Path two;
    two.points = {{0, 0, 50}, {1, 0, 50}, {2, 0, 50}};
    CHECK(f_length(two, w) == doctest::Approx(200.0).epsilon(1e-15));
    Path diag;
    for (int i = 1; i <= 45; ++i) {
        diag.points.push_back({static_cast<double>(i), static_cast<double>(i), 40.0});
    }
    const double straight = std::sqrt(44.0 * 44.0 + 44.0 * 44.0) * 100.0;
    CHECK(f_length(diag, w) == doctest::Approx(straight).epsilon(1e-12));
    std::mt19937_64 g(52);
    for (int trial = 0; trial < 50; ++trial) {
        CHECK(f_length(decode_path(random_genome(g), w), w) >= straight);
    }
}

TEST_CASE("fuel")
{
    const auto &w = *default_world();
    // 10 m level flight at ground level takes one second at 10 m/s.
    const double level = segment_fuel({0, 0, 0}, {0.1, 0, 0}, w);
    const double expected = std::pow(1.38, 1.5) * std::sqrt(std::pow(9.81, 3) / (2 * 1.225 * 0.1 * 4));
    CHECK(level == doctest::Approx(expected).epsilon(1e-12));
    CHECK(level == doctest::Approx(50.3).epsilon(1e-3));
    const double up = segment_fuel({0, 0, 40}, {0.1, 0, 45}, w);
    const double down = segment_fuel({0.1, 0, 45}, {0, 0, 40}, w);
    CHECK(up - down == doctest::Approx(5 * 1.38 * 9.81).epsilon(1e-12));
    CHECK(up - down == doctest::Approx(67.69).epsilon(1e-4));
}

TEST_CASE("height change")
{
    Path p;
    p.points = {{0, 0, 10}, {1, 0, 15}, {2, 0, 12}};
    CHECK(f_height(p) == 8.0);
    CHECK(f_height(level_path(5, 30)) == 0.0);
    std::mt19937_64 g(53);
    for (int trial = 0; trial < 50; ++trial) {
        const auto q = decode_path(random_genome(g), *default_world());
        CHECK(f_height(q) >= std::abs(q.points.back().z - q.points.front().z));
    }
}

TEST_CASE("hover point distance")
{
    const auto &w = *default_world();
    Path over;
    over.points = {{1, 1, 20}, {25, 30, 20}, {34, 20, 20}, {40, 35, 20}, {45, 45, 20}};
    CHECK(f_distance(over, w) == 0.0);

    WorldConfig c;
    c.hover_points = {{10.0, 10.0}};
    const World one(c, {}, {10.0, 10.0});
    Path p;
    p.points = {{13, 10, 50}, {20, 20, 50}};
    CHECK(f_distance(p, one) == doctest::Approx(300.0).epsilon(1e-15));

    std::mt19937_64 g(54);
    for (int trial = 0; trial < 30; ++trial) {
        auto q = decode_path(random_genome(g), w);
        const double before = f_distance(q, w);
        q.points.push_back({std::uniform_real_distribution<double>(0, 50)(g), 3.0, 60.0});
        CHECK(f_distance(q, w) <= before);
    }
}

TEST_CASE("fatality risk")
{
    std::mt19937_64 g(55);
    WorldConfig empty_cfg;
    empty_cfg.peak_density = 0.0;
    const World empty = generate_world(empty_cfg);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = decode_path(random_genome(g), empty);
        CHECK(f_fatal(p, empty) == 0.0);
        CHECK(f_noise(p, empty) == 0.0);
    }

    WorldConfig twice = default_world()->config();
    twice.p_crash_per_hour *= 2.0;
    const World w2(twice, default_world()->centers(), default_world()->roads());
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = decode_path(random_genome(g), *default_world());
        CHECK(f_fatal(p, w2) == doctest::Approx(2.0 * f_fatal(p, *default_world())).epsilon(1e-14));
    }

    // Same path shape over the densest spot and over an empty corner.
    const World lone = single_center_world(0.01);
    Path dense, sparse;
    for (int k = 0; k < 5; ++k) {
        dense.points.push_back({25.0, 23.0 + k, 50.0});
        sparse.points.push_back({25.0 + 200.0, 23.0 + k, 50.0});
    }
    CHECK(f_fatal(sparse, lone) < f_fatal(dense, lone));
    CHECK(f_fatal(dense, lone) > 0.0);
}

TEST_CASE("property risk")
{
    const auto &w = *default_world();
    const double median = std::exp(3.04670);
    CHECK(std::abs(property_risk(median, w) - 0.02493) <= 1e-5);
    for (double z : {1.0, 10.0, 20.0, median}) {
        CHECK(property_risk(z, w) == property_risk(median, w));
    }
    CHECK(property_risk(120.0, w) < property_risk(30.0, w));
    CHECK_THROWS_AS(property_risk(0.0, w), contract_violation);
    CHECK(lognormal_density(median, 3.04670, 0.76023)
          == doctest::Approx(1.0 / (median * 0.76023 * std::sqrt(2 * std::numbers::pi))).epsilon(1e-14));
}

TEST_CASE("noise")
{
    const World lone = single_center_world(0.01);
    const World empty = single_center_world(0.0);
    CHECK(noise_cost({25, 25, 30}, empty) == 0.0);
    double prev = noise_cost({25, 25, 10}, lone);
    CHECK(prev > 0.0);
    for (double z = 11.0; z <= 100.0; z += 1.0) {
        const double v = noise_cost({25, 25, z}, lone);
        CHECK(v < prev);
        prev = v;
    }
    CHECK(noise_cost({25, 25, 101}, lone) == 0.0);

    WorldConfig half;
    half.noise_source_db = 40.0;
    const World quiet = single_center_world(0.01, half);
    // At z = 0.5 m both source levels stay above the 40 dB threshold.
    CHECK(noise_cost({25, 25, 0.5}, quiet) == doctest::Approx(0.5 * noise_cost({25, 25, 0.5}, lone)).epsilon(1e-15));
}

TEST_CASE("constraints")
{
    const auto &w = *default_world();
    Path corner;
    corner.points = {{0, 0, 50}, {1, 0, 50}, {1, 1, 50}};
    auto r = constraint_violations(corner, w);
    CHECK(r.violations[1] == doctest::Approx(std::numbers::pi / 6).epsilon(1e-14));
    CHECK(r.violations[0] == 0.0);
    CHECK(r.violations[2] == 0.0);

    r = constraint_violations(level_path(20, 60), w);
    CHECK(r.violations == std::array<double, 3>{0, 0, 0});

    Path climb;
    climb.points = {{0, 0, 10}, {1, 0, 110}};
    CHECK(constraint_violations(climb, w).violations[2] == 0.0);
    climb.points[1].z = 111;
    CHECK(constraint_violations(climb, w).violations[2] > 0.0);

    Path high;
    high.points = {{0, 0, 5}, {1, 0, 125}};
    r = constraint_violations(high, w);
    CHECK(r.violations[0] == doctest::Approx(10.0).epsilon(1e-15));

    // The appended terminal segment is vertical when y44 = 45.
    std::vector<double> genome(genome_length);
    for (std::size_t i = 0; i < 44; ++i) {
        genome[2 * i] = static_cast<double>(i + 1) / 44.0;
        genome[2 * i + 1] = 0.5;
    }
    const auto diag = decode_path(genome, w);
    r = constraint_violations(diag, w);
    CHECK(r.skipped_segments == 1);
    CHECK(r.violations == std::array<double, 3>{0, 0, 0});
}

TEST_CASE("altitude trade-off on a level path")
{
    const World lone = single_center_world(0.01);
    const double median = std::exp(3.04670);
    for (double z : {20.0, median, 40.0, 80.0}) {
        const auto p = level_path(25.0, z);
        const auto q = raised(p, 10.0);
        CHECK(f_noise(q, lone) <= f_noise(p, lone));
        CHECK(f_fuel(q, lone) > f_fuel(p, lone));
        if (z >= median) {
            CHECK(f_eco(q, lone) <= f_eco(p, lone));
        }
    }
    CHECK(f_noise(level_path(25.0, 60.0), lone) < f_noise(level_path(25.0, 30.0), lone));
}

TEST_CASE("cases")
{
    const auto w = default_world();
    std::mt19937_64 g(56);
    const auto c1 = make_case(Case::c1, w), c2 = make_case(Case::c2, w), c3 = make_case(Case::c3, w),
               c4 = make_case(Case::c4, w);
    CHECK(c1.dim == 88);
    CHECK(c1.arities == std::vector<std::size_t>{2, 2});
    CHECK(c1.constrained());

    std::vector<double> level(genome_length, 0.5);
    CHECK(c2.evaluate(level)[0][0] == f_length(decode_path(level, *w), *w));

    for (int trial = 0; trial < 20; ++trial) {
        const auto x = random_genome(g);
        const auto path = decode_path(x, *w);
        CHECK(c1.evaluate(x)[0] == c4.evaluate(x)[0]);
        CHECK(c3.evaluate(x)[0][0] == f_fuel(path, *w));
        CHECK(c1.evaluate(x)[1] == std::vector<double>{f_fatal(path, *w), f_eco(path, *w)});
        CHECK(c4.evaluate(x)[1][1] == f_noise(path, *w));
        CHECK(c1.constraints(x).size() == 3);
        for (auto c : {Case::c1, Case::c2, Case::c3, Case::c4, Case::c5, Case::c6}) {
            const auto p = make_case(c, w);
            const auto objs = p.evaluate(x);
            CHECK(objs == p.evaluate(x));
            for (const auto &v : objs) {
                for (double o : v) {
                    CHECK(o >= 0.0);
                    CHECK(std::isfinite(o));
                }
            }
        }
    }
    CHECK(parse_case("C5") == Case::c5);
    CHECK(to_string(Case::c6) == "C6");
    CHECK_THROWS_AS(parse_case("C7"), std::invalid_argument);
    CHECK_THROWS_AS(make_case(Case::c1, nullptr), contract_violation);
}
