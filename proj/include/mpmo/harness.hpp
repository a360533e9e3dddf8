#pragma once

// Experiment orchestration: budgets, seeded runs, persisted run records,
// MPIGD/MPHV scoring and the five-statistic result tables.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mpmo/algo.hpp"
#include "mpmo/metrics.hpp"
#include "mpmo/suite.hpp"

namespace mpmo::harness
{

constexpr std::size_t uav_budget = 100000;
constexpr std::size_t uav_dimension = 88;

struct ProblemKey {
    std::string id;
    std::size_t dim = 0;

    auto operator<=>(const ProblemKey &) const = default;
};

bool is_uav(const std::string &id);

/// 1000 * n * (number of parties) for E1..E11, 100000 for C1..C6.
std::size_t fe_budget(const std::string &id, std::size_t dim);

/// Primary metric of a problem: "MPIGD" for E1..E11, "MPHV" for C1..C6.
std::string primary_metric(const std::string &id);

/// Parses "1..30", "1,2,5" or "1..3,7".
std::vector<std::uint64_t> parse_seed_list(const std::string &text);

struct ExperimentConfig {
    std::vector<ProblemKey> problems;
    std::vector<std::uint64_t> seeds;
    std::string algo = "mpnds"; // "mpnds" or "random"
    algo::EAConfig ea;          // seed and budget are set per run
    std::uint64_t world_seed = 1;
    std::size_t front_resolution = suite::default_resolution;
    std::uint64_t front_seed = 0;
    std::filesystem::path out_dir = "results";
    std::filesystem::path fronts_dir; // defaults to out_dir / "fronts"
    std::size_t jobs = 1;
    bool force = false;
    bool mphv_for_suite = false; // also score E problems with MPHV
    std::size_t trace_points = 10;

    /// True when the seeds are exactly 1..30.
    bool competition_seeds() const;
    void validate() const;
};

/// Expands suite selectors: suite "e" -> E1..E11 x dims, "uav" -> C1..C6 at
/// d = 88, "all" -> both. An explicit `problems` list filters the selection.
std::vector<ProblemKey> expand_problems(const std::string &suite, const std::vector<std::string> &problems,
                                        const std::vector<std::size_t> &dims);

/// Reads a JSON experiment description. Keys mirror the CLI flags: suite,
/// problems, dims, seeds, algo, out, fronts, world_seed, resolution, jobs,
/// force, mphv_for_suite, ea{population_size, crossover_prob, crossover_eta,
/// mutation_eta, mutation_prob, tournament_size}.
ExperimentConfig config_from_json(const nlohmann::json &j);

struct RunRecord {
    std::string algo;
    std::string problem;
    std::size_t dim = 0;
    std::uint64_t seed = 0;
    std::size_t fe_budget = 0;
    std::size_t fe_used = 0;
    std::map<std::string, double> metrics;
    double wall_time_s = 0.0;
    std::string config_hash;
    std::string reference_version; // front file or world id the run was scored against
    bool ok = true;
    std::string error;
    std::vector<DecisionVector> archive_x;
    std::vector<PartyObjectives> archive_objs;
    std::vector<algo::TracePoint> trace;
};

nlohmann::json to_json(const RunRecord &r);
RunRecord record_from_json(const nlohmann::json &j);

std::filesystem::path record_path(const std::filesystem::path &out_dir, const std::string &algo,
                                  const ProblemKey &key, std::uint64_t seed);

/// Stable 64-bit FNV-1a over everything that determines a run's outcome except
/// its seed, rendered as 16 hex digits.
std::string config_hash(const ExperimentConfig &cfg, const ProblemKey &key);

/// Executes every (problem, seed) pair not already completed with the same
/// config hash (unless cfg.force), persists one JSON record per run under
/// out_dir/runs/<algo>/, and scores them. MPHV normalisation bounds are frozen
/// per problem under out_dir/bounds/ the first time they are computed.
std::vector<RunRecord> run_experiment(const ExperimentConfig &cfg);

/// Loads every record under out_dir/runs.
std::vector<RunRecord> load_records(const std::filesystem::path &out_dir);

struct Stats {
    double best = 0.0;
    double median = 0.0;
    double worst = 0.0;
    double mean = 0.0;
    double stdev = 0.0;

    bool operator==(const Stats &) const = default;
};

/// `lower_is_better` picks the direction of best/worst. Median of an even
/// count is the mean of the two middle order statistics; stdev uses N - 1.
Stats summarize(std::vector<double> values, bool lower_is_better);

struct StatTable {
    std::map<ProblemKey, Stats> cells;

    std::optional<Stats> find(const std::string &id, std::size_t dim) const;
    bool operator==(const StatTable &) const = default;
};

/// Groups ok records by (problem, dim) and summarises their primary metric.
/// A cell containing a failed run, or a run without the metric, is left out.
StatTable aggregate(const std::vector<RunRecord> &records);

enum class TableFormat { text, csv, latex };

TableFormat parse_format(const std::string &name);

/// Three blocks: E1..E6 at d = 10/30/50, E7..E11 at d = 10/30/50, C1..C6 at
/// d = 88; five statistic rows per dimension. Missing cells print as an em
/// dash in text/LaTeX and as an empty field in CSV.
void emit_table(std::ostream &os, const StatTable &table, TableFormat format);

StatTable parse_csv_table(std::istream &is);

} // namespace mpmo::harness
