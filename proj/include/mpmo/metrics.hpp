#pragma once

// MPIGD and MPHV scoring.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mpmo/core.hpp"
#include "mpmo/suite.hpp"

namespace mpmo::metrics
{

/// Mean over reference points of the smallest party-summed Euclidean distance
/// to the obtained set. Lower is better.
double mpigd(const std::vector<PartyObjectives> &reference, const std::vector<PartyObjectives> &obtained);
double mpigd(const suite::ReferenceFront &reference, const std::vector<PartyObjectives> &obtained);

/// Exact area dominated by 2-D points and bounded by `ref`. Points with any
/// coordinate >= ref add nothing.
double hv2d(const std::vector<ObjectiveVector> &points, std::array<double, 2> ref);

struct MonteCarloEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Dominated volume inside the box [0, ref] estimated from `samples` seeded
/// uniform draws.
MonteCarloEstimate hv_monte_carlo(const std::vector<ObjectiveVector> &points, const std::vector<double> &ref,
                                  std::size_t samples, std::uint64_t seed);

struct PartyBounds {
    std::vector<double> ideal;
    std::vector<double> nadir;
};

using NormalizationBounds = std::vector<PartyBounds>;

/// Ideal/nadir per party and objective over the multiparty-nondominated union
/// of all `sets`.
NormalizationBounds normalization_bounds(const std::vector<std::vector<PartyObjectives>> &sets);

/// (v - ideal) / (nadir - ideal); degenerate dimensions map to 0.
std::vector<PartyObjectives> apply_normalization(const std::vector<PartyObjectives> &set,
                                                 const NormalizationBounds &bounds);

struct NormalizedSets {
    std::vector<std::vector<PartyObjectives>> sets;
    NormalizationBounds bounds;
};

NormalizedSets normalize_sets(const std::vector<std::vector<PartyObjectives>> &sets);

constexpr double hv_reference = 1.1;
constexpr std::size_t hv_mc_samples = 1'000'000;
constexpr std::uint64_t hv_mc_seed = 1;

struct MphvResult {
    double sum = 0.0;      // scored value
    double averaged = 0.0; // sum / K
    std::vector<double> per_party;
};

/// Sum of per-party hypervolumes of an already normalised set, reference point
/// (1.1, ..., 1.1). Two-objective parties are exact; others use Monte Carlo
/// with `hv_mc_samples` draws.
MphvResult mphv(const std::vector<PartyObjectives> &normalized, std::size_t parties);

struct MetricReport {
    std::string metric_name;
    double value = 0.0;
    std::string reference_id;
    NormalizationBounds normalization;
};

} // namespace mpmo::metrics
