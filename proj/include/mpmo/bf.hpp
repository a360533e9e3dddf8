#pragma once

// Time-parameterised basic functions BF1..BF6. Each party of a suite problem
// is one family evaluated at a fixed time t.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mpmo/core.hpp"

namespace mpmo::bf
{

enum class Family { bf1 = 1, bf2, bf3, bf4, bf5, bf6 };

std::string to_string(Family f);

/// Number of objectives: 2 for BF1..BF3, 3 for BF4..BF6.
std::size_t arity(Family f);

/// Leading variables that are free on the Pareto set (x1, or x1 and x2).
std::size_t free_variables(Family f);

/// Smallest supported dimension.
std::size_t min_dimension(Family f);

/// Time-derived parameters of one family at one t. Fields that a family does
/// not use are left at zero.
struct Context {
    Family family;
    double t;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double r = 0.0;

    Context(Family f, double time);
};

/// Floored modulus; result has the sign of `m` (so mod(-3, 2) == 1).
double floored_mod(double a, double m);

Bounds bounds(Family f, std::size_t n);

/// Distance term d(x, t). Equals 1 exactly on the Pareto set; BF6 includes the
/// absolute sine-product penalty.
double distance(Family f, std::span<const double> x, double t);

/// BF6 penalty |prod_j sin(floor(alpha (2 x_j - r)) pi/2)| on its own.
double bf6_penalty(std::span<const double> x, double t);

ObjectiveVector evaluate(Family f, std::span<const double> x, double t);

/// BF3 offset term max(0, (1/(2 beta) + 0.1) sin(2 beta pi x1)).
double bf3_offset(double x1, double t);

/// `count` points on the analytic Pareto set. Free variables come from a
/// uniform grid (ceil(count^(1/free)) nodes per free dimension, restricted to
/// the family's admissible set, then thinned by even striding to exactly
/// `count`). Seed 0 gives the end-point-aligned grid; any other seed applies a
/// seeded Cranley-Patterson shift to the grid. Tail variables follow the
/// Pareto-set formula in ascending index order.
std::vector<DecisionVector> ps_sample(Family f, double t, std::size_t count, std::uint64_t seed, std::size_t n);

} // namespace mpmo::bf
