#include "mpmo/bf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mpmo/random.hpp"

namespace mpmo::bf
{

namespace
{

constexpr double pi = std::numbers::pi;

void require_dimension(Family f, std::size_t n)
{
    if (n < min_dimension(f)) {
        throw dimension_error(to_string(f) + " needs n >= " + std::to_string(min_dimension(f)) + ", got "
                              + std::to_string(n));
    }
}

// sin(k pi / 2) for integer k, exactly.
double sin_half_pi_multiple(double k)
{
    const auto m = static_cast<long long>(floored_mod(k, 4.0));
    switch (m) {
    case 1:
        return 1.0;
    case 3:
        return -1.0;
    default:
        return 0.0;
    }
}

// Pareto-set value of tail variable i (0-based, i >= free_variables(f)).
// BF3 reads the already-set x[i - 1].
double tail_target(const Context &c, std::span<const double> x, std::size_t i)
{
    const double x1 = x[0];
    switch (c.family) {
    case Family::bf1:
        return 1.0 / (1.0 + std::exp(c.alpha * (x1 - 2.5)));
    case Family::bf2:
        return c.gamma * std::sin(4.0 * pi * std::pow(x1, c.beta)) / (1.0 + std::abs(c.gamma));
    case Family::bf3:
        return std::cos(4.0 * c.t + x1 + x[i - 1]);
    case Family::bf4:
        return std::sin(2.0 * pi * (x1 + x[1])) / (1.0 + std::abs(c.beta));
    case Family::bf5:
        return 0.5 * c.alpha * x1;
    case Family::bf6:
        return std::sin(c.t * x1);
    }
    return 0.0;
}

double penalty(const Context &c, std::span<const double> x)
{
    double prod = 1.0;
    for (std::size_t j = 0; j < 2; ++j) {
        prod *= sin_half_pi_multiple(std::floor(c.alpha * (2.0 * x[j] - c.r)));
    }
    return std::abs(prod);
}

double distance_term(const Context &c, std::span<const double> x)
{
    double d = 1.0;
    for (std::size_t i = free_variables(c.family); i < x.size(); ++i) {
        const double diff = x[i] - tail_target(c, x, i);
        d += diff * diff;
    }
    if (c.family == Family::bf6) {
        d += penalty(c, x);
    }
    return d;
}

// Negative bases only arise from rounding at the domain edge.
double nonneg_pow(double base, double exponent)
{
    return std::pow(std::max(base, 0.0), exponent);
}

bool bf6_admissible(const Context &c, double x1, double x2)
{
    auto even = [&](double xj) {
        return floored_mod(std::abs(std::floor(c.alpha * (2.0 * xj - c.r))), 2.0) == 0.0;
    };
    return even(x1) || even(x2);
}

// Grid nodes in [0, 1]: end-point aligned for seed 0, seeded shifted lattice
// otherwise.
std::vector<double> unit_grid(std::size_t g, double shift, bool aligned)
{
    std::vector<double> u(g);
    for (std::size_t k = 0; k < g; ++k) {
        if (aligned) {
            u[k] = g == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(g - 1);
        } else {
            const double v = (static_cast<double>(k) + shift) / static_cast<double>(g);
            u[k] = v - std::floor(v);
        }
    }
    if (!aligned) {
        std::sort(u.begin(), u.end());
    }
    return u;
}

// BF3 admissible x1 (excluding the isolated 0): union of [(2i-1)/(2b), i/b].
double bf3_union_point(double u, double beta)
{
    const double s = 0.5 * u;
    const double width = 1.0 / (2.0 * beta);
    const double i = std::min(beta - 1.0, std::floor(s / width));
    return (2.0 * i + 1.0) * width + (s - i * width);
}

// Smallest g with g^free >= count.
std::size_t nodes_per_dim(std::size_t count, std::size_t free)
{
    std::size_t g = 1;
    auto covers = [&](std::size_t k) {
        std::size_t total = 1;
        for (std::size_t d = 0; d < free; ++d) {
            total *= k;
        }
        return total >= count;
    };
    while (!covers(g)) {
        ++g;
    }
    return g;
}

template <typename T>
std::vector<T> thin(std::vector<T> items, std::size_t count)
{
    if (items.size() <= count) {
        return items;
    }
    std::vector<T> out;
    out.reserve(count);
    const std::size_t total = items.size();
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(std::move(items[i * total / count]));
    }
    return out;
}

} // namespace

std::string to_string(Family f)
{
    return "BF" + std::to_string(static_cast<int>(f));
}

std::size_t arity(Family f)
{
    return static_cast<int>(f) <= 3 ? 2 : 3;
}

std::size_t free_variables(Family f)
{
    return static_cast<int>(f) <= 3 ? 1 : 2;
}

std::size_t min_dimension(Family f)
{
    return static_cast<int>(f) <= 3 ? 2 : 3;
}

double floored_mod(double a, double m)
{
    return a - m * std::floor(a / m);
}

Context::Context(Family f, double time) : family(f), t(time)
{
    switch (f) {
    case Family::bf1:
        alpha = 5.0 * std::cos(0.5 * pi * t);
        break;
    case Family::bf2:
        alpha = 2.25 + 2.0 * std::cos(2.0 * pi * t);
        beta = 1.0;
        gamma = std::sin(0.5 * pi * t);
        break;
    case Family::bf3:
        beta = 1.0 + std::floor(10.0 * std::abs(std::sin(0.5 * pi * t)));
        break;
    case Family::bf4:
        alpha = 2.25 + 2.0 * std::cos(0.5 * pi * t);
        beta = std::sin(0.5 * pi * t);
        break;
    case Family::bf5:
        alpha = std::abs(std::sin(0.5 * pi * t));
        break;
    case Family::bf6:
        alpha = std::floor(10.0 * std::sin(pi * t));
        r = 1.0 - floored_mod(alpha, 2.0);
        break;
    }
}

Bounds bounds(Family f, std::size_t n)
{
    require_dimension(f, n);
    Bounds b;
    b.lower.assign(n, -1.0);
    b.upper.assign(n, 1.0);
    switch (f) {
    case Family::bf1:
        b.lower.assign(n, 0.0);
        b.lower[0] = 1.0;
        b.upper[0] = 4.0;
        break;
    case Family::bf2:
    case Family::bf3:
        b.lower[0] = 0.0;
        break;
    case Family::bf4:
    case Family::bf6:
        b.lower[0] = b.lower[1] = 0.0;
        break;
    case Family::bf5:
        b.lower.assign(n, 0.0);
        break;
    }
    return b;
}

double distance(Family f, std::span<const double> x, double t)
{
    require_dimension(f, x.size());
    return distance_term(Context(f, t), x);
}

double bf6_penalty(std::span<const double> x, double t)
{
    require_dimension(Family::bf6, x.size());
    return penalty(Context(Family::bf6, t), x);
}

double bf3_offset(double x1, double t)
{
    const Context c(Family::bf3, t);
    return std::max(0.0, (1.0 / (2.0 * c.beta) + 0.1) * std::sin(2.0 * c.beta * pi * x1));
}

ObjectiveVector evaluate(Family f, std::span<const double> x, double t)
{
    require_dimension(f, x.size());
    const Context c(f, t);
    const double d = distance_term(c, x);
    const double x1 = x[0];
    switch (f) {
    case Family::bf1:
        return {d * ((1.0 + t) / x1), d * (x1 / (1.0 + t))};
    case Family::bf2: {
        const double wave = 0.1 * std::sin(3.0 * pi * x1);
        return {d * (x1 + wave), d * nonneg_pow(1.0 - x1 + wave, c.alpha)};
    }
    case Family::bf3: {
        const double a = bf3_offset(x1, t);
        return {d * (x1 + a), d * (1.0 - x1 + a)};
    }
    case Family::bf4: {
        const double s1 = std::sin(0.5 * pi * x1), c1 = std::cos(0.5 * pi * x1);
        const double s2 = std::sin(0.5 * pi * x[1]), c2 = std::cos(0.5 * pi * x[1]);
        return {d * nonneg_pow(s1, c.alpha), d * nonneg_pow(s2 * c1, c.alpha), d * nonneg_pow(c2 * c1, c.alpha)};
    }
    case Family::bf5: {
        auto y = [&](double xi) { return (pi / 6.0) * c.alpha + (pi / 2.0 - (pi / 3.0) * c.alpha) * xi; };
        const double y1 = y(x1), y2 = y(x[1]);
        return {d * std::sin(y1), d * std::sin(y2) * std::cos(y1), d * std::cos(y2) * std::cos(y1)};
    }
    case Family::bf6: {
        const double c1 = std::cos(0.5 * pi * x1), c2 = std::cos(0.5 * pi * x[1]);
        return {d * c1 * c2, d * c1 * std::sin(0.5 * pi * x[1]), d * std::sin(0.5 * pi * x1)};
    }
    }
    return {};
}

std::vector<DecisionVector> ps_sample(Family f, double t, std::size_t count, std::uint64_t seed, std::size_t n)
{
    require_dimension(f, n);
    if (count == 0) {
        throw contract_violation("ps_sample: count must be >= 1");
    }
    const Context c(f, t);
    const Bounds b = bounds(f, n);
    const std::size_t free = free_variables(f);
    const bool aligned = seed == 0;
    Rng rng(seed);
    const double shift1 = aligned ? 0.0 : rng.uniform();
    const double shift2 = aligned ? 0.0 : rng.uniform();

    auto make_point = [&](double x1, double x2) {
        DecisionVector x(n, 0.0);
        x[0] = x1;
        if (free == 2) {
            x[1] = x2;
        }
        for (std::size_t i = free; i < n; ++i) {
            x[i] = tail_target(c, x, i);
        }
        return x;
    };

    std::vector<DecisionVector> pts;
    if (free == 1) {
        std::size_t g = nodes_per_dim(count, 1);
        if (f == Family::bf3) {
            pts.push_back(make_point(0.0, 0.0));
            g = count > 1 ? count - 1 : 1;
        }
        for (double u : unit_grid(g, shift1, aligned)) {
            double x1 = 0.0;
            if (f == Family::bf3) {
                x1 = bf3_union_point(u, c.beta);
            } else {
                x1 = b.lower[0] + (b.upper[0] - b.lower[0]) * u;
            }
            pts.push_back(make_point(x1, 0.0));
        }
    } else {
        std::size_t g = nodes_per_dim(count, 2);
        while (true) {
            pts.clear();
            const auto u1 = unit_grid(g, shift1, aligned);
            const auto u2 = unit_grid(g, shift2, aligned);
            for (double a : u1) {
                for (double bb : u2) {
                    if (f == Family::bf6 && !bf6_admissible(c, a, bb)) {
                        continue;
                    }
                    pts.push_back(make_point(a, bb));
                }
            }
            if (pts.size() >= count) {
                break;
            }
            g += g / 4 + 1;
        }
    }
    return thin(std::move(pts), count);
}

} // namespace mpmo::bf
