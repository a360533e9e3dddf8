#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpmo
{

/// Raised when a caller breaks a documented precondition (length mismatch,
/// empty input, party-structure mismatch, ...).
class contract_violation : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// Raised when a problem is requested with an unsupported dimension.
class dimension_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

using DecisionVector = std::vector<double>;
using ObjectiveVector = std::vector<double>;

/// Objective vectors of one solution, one entry per party. Party j owns
/// arities[j] objectives; all of them are minimised.
using PartyObjectives = std::vector<ObjectiveVector>;

struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t size() const { return lower.size(); }
    bool contains(std::span<const double> x) const;
    void validate() const;
};

/// An evaluatable multiparty problem. Evaluators are pure.
struct MPProblem {
    using Evaluator = std::function<PartyObjectives(std::span<const double>)>;
    using ConstraintEvaluator = std::function<std::vector<double>(std::span<const double>)>;
    using PsSampler = std::function<std::vector<DecisionVector>(std::size_t count, std::uint64_t seed)>;

    std::string id;
    std::size_t dim = 0;
    std::vector<std::size_t> arities;
    Bounds bounds;
    Evaluator evaluate;
    // Violation magnitudes, 0 = satisfied. Empty when unconstrained.
    ConstraintEvaluator constraints;
    PsSampler ps_sampler;

    std::size_t parties() const { return arities.size(); }
    bool constrained() const { return static_cast<bool>(constraints); }
};

/// Sum of violation magnitudes.
double total_violation(std::span<const double> violations);

/// Throws contract_violation unless `objs` has the party layout `arities` and
/// only finite values.
void check_structure(const PartyObjectives &objs, std::span<const std::size_t> arities);

std::vector<std::size_t> arities_of(const PartyObjectives &objs);

// Pareto dominance for minimisation: a <= b everywhere and a < b somewhere.
// Exact comparisons, no epsilon.
bool pareto_dominates(std::span<const double> a, std::span<const double> b);

/// Fast nondominated sorting. Rank 0 is the nondominated layer; ranks are
/// contiguous from 0.
std::vector<int> nondominated_sort(const std::vector<ObjectiveVector> &objs);

/// Multiparty dominance: no party in which b dominates a, and at least one
/// party in which a dominates b. Not transitive in general.
bool mp_dominates(const PartyObjectives &a, const PartyObjectives &b);

/// Indices of members not multiparty-dominated by any other member, in input
/// order. O(n^2 M) pairwise scan on the active SIMD kernel.
std::vector<std::size_t> mp_nondominated_filter(const std::vector<PartyObjectives> &pop);

/// Convenience: pick `idx` out of `items`.
template <typename T>
std::vector<T> select(const std::vector<T> &items, const std::vector<std::size_t> &idx)
{
    std::vector<T> out;
    out.reserve(idx.size());
    for (auto i : idx) {
        out.push_back(items[i]);
    }
    return out;
}

} // namespace mpmo
