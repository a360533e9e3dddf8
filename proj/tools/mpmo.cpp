// mpmo: run experiments, build reference fronts, report result tables and
// generate UAV worlds.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpmo/harness.hpp"
#include "mpmo/kernels.hpp"
#include "mpmo/suite.hpp"
#include "mpmo/uav.hpp"

namespace fs = std::filesystem;
using namespace mpmo;

namespace
{

struct RunArgs {
    std::string config;
    std::string suite = "all";
    std::vector<std::string> problems;
    std::vector<std::size_t> dims;
    std::string seeds = "1..30";
    std::string algo = "mpnds";
    std::string out = "results";
    std::string fronts;
    std::uint64_t world_seed = 1;
    std::size_t resolution = suite::default_resolution;
    std::size_t jobs = 1;
    bool force = false;
    bool mphv_for_suite = false;
};

int cmd_run(const RunArgs &a, const CLI::App &sub)
{
    nlohmann::json j = nlohmann::json::object();
    if (!a.config.empty()) {
        std::ifstream is(a.config);
        if (!is) {
            throw std::runtime_error("cannot read config " + a.config);
        }
        j = nlohmann::json::parse(is);
    }
    // Explicit flags override the file.
    auto given = [&](const char *name) { return sub.count(name) > 0; };
    if (given("--suite") || !j.contains("suite")) {
        j["suite"] = a.suite;
    }
    if (given("--problems")) {
        j["problems"] = a.problems;
    }
    if (given("--dims")) {
        j["dims"] = a.dims;
    }
    if (given("--seeds") || !j.contains("seeds")) {
        j["seeds"] = a.seeds;
    }
    if (given("--algo")) {
        j["algo"] = a.algo;
    }
    if (given("--out")) {
        j["out"] = a.out;
    }
    if (given("--fronts")) {
        j["fronts"] = a.fronts;
    }
    if (given("--world-seed")) {
        j["world_seed"] = a.world_seed;
    }
    if (given("--resolution")) {
        j["resolution"] = a.resolution;
    }
    if (given("--jobs")) {
        j["jobs"] = a.jobs;
    }
    if (a.force) {
        j["force"] = true;
    }
    if (a.mphv_for_suite) {
        j["mphv_for_suite"] = true;
    }
    const auto cfg = harness::config_from_json(j);
    cfg.validate();
    if (!cfg.competition_seeds()) {
        std::cerr << "note: seeds differ from 1..30; results are not competition-comparable\n";
    }
    std::cerr << "kernels: " << kernels::active().name << '\n';
    const auto records = harness::run_experiment(cfg);
    std::size_t failed = 0;
    for (const auto &r : records) {
        if (!r.ok) {
            ++failed;
            std::cerr << "failed: " << r.algo << ' ' << r.problem << " d=" << r.dim << " seed=" << r.seed << ": "
                      << r.error << '\n';
        }
    }
    std::cout << records.size() - failed << " of " << records.size() << " runs ok; records in "
              << (cfg.out_dir / "runs" / cfg.algo).string() << '\n';
    return failed == 0 ? 0 : 3;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Multiparty multiobjective optimisation benchmark"};
    app.require_subcommand(1);

    RunArgs run;
    auto *run_cmd = app.add_subcommand("run", "Run an algorithm over a set of problems and seeds");
    run_cmd->add_option("--config", run.config, "JSON experiment file; flags override its keys");
    run_cmd->add_option("--suite", run.suite, "e, uav or all")->check(CLI::IsMember({"e", "uav", "all"}));
    run_cmd->add_option("--problems", run.problems, "Subset of problem ids, e.g. E1 E5 C3")->delimiter(',');
    run_cmd->add_option("--dims", run.dims, "Decision dimensions for E problems")->delimiter(',');
    run_cmd->add_option("--seeds", run.seeds, "Seed list such as 1..30 or 1,4,7");
    run_cmd->add_option("--algo", run.algo, "mpnds or random")->check(CLI::IsMember({"mpnds", "random"}));
    run_cmd->add_option("--out", run.out, "Output directory");
    run_cmd->add_option("--fronts", run.fronts, "Reference front cache (default <out>/fronts)");
    run_cmd->add_option("--world-seed", run.world_seed, "UAV world seed");
    run_cmd->add_option("--resolution", run.resolution, "Reference front resolution per party");
    run_cmd->add_option("--jobs", run.jobs, "Worker threads")->check(CLI::PositiveNumber);
    run_cmd->add_flag("--force", run.force, "Re-run completed configurations");
    run_cmd->add_flag("--mphv-suite", run.mphv_for_suite, "Also score E problems with MPHV");

    std::string rf_problem;
    std::size_t rf_dim = 10;
    std::size_t rf_resolution = suite::default_resolution;
    std::uint64_t rf_seed = 0;
    std::string rf_out;
    auto *rf_cmd = app.add_subcommand("reffront", "Build a reference front for one E problem");
    rf_cmd->add_option("--problem", rf_problem, "E1..E11")->required();
    rf_cmd->add_option("--dim", rf_dim, "Decision dimension");
    rf_cmd->add_option("--resolution", rf_resolution, "Pareto-set samples per party");
    rf_cmd->add_option("--seed", rf_seed, "0 = aligned grid, otherwise shifted lattice");
    rf_cmd->add_option("--out", rf_out, "Output file (default stdout)");

    std::string rep_in = "results";
    std::string rep_format = "text";
    auto *rep_cmd = app.add_subcommand("report", "Summarise run records into the result table");
    rep_cmd->add_option("--in", rep_in, "Results directory");
    rep_cmd->add_option("--algo", run.algo, "Only records of this algorithm");
    rep_cmd->add_option("--format", rep_format, "text, csv or latex")
        ->check(CLI::IsMember({"text", "csv", "latex"}));

    std::uint64_t world_seed = 1;
    std::string world_out;
    auto *world_cmd = app.add_subcommand("world", "Generate a UAV world");
    world_cmd->add_option("--seed", world_seed, "World seed");
    world_cmd->add_option("--out", world_out, "Output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            return cmd_run(run, *run_cmd);
        }
        if (*rf_cmd) {
            if (!suite::is_suite_id(rf_problem)) {
                throw std::invalid_argument("unknown problem " + rf_problem);
            }
            const auto front = suite::build_reference_front(rf_problem, rf_dim, rf_resolution, rf_seed);
            if (rf_out.empty()) {
                suite::write_front(std::cout, front);
            } else {
                suite::save_front(rf_out, front);
                std::cerr << front.points.size() << " points written to " << rf_out << '\n';
            }
            return 0;
        }
        if (*rep_cmd) {
            auto records = harness::load_records(rep_in);
            if (rep_cmd->count("--algo") > 0) {
                std::erase_if(records, [&](const harness::RunRecord &r) { return r.algo != run.algo; });
            } else {
                std::erase_if(records, [](const harness::RunRecord &r) { return r.algo != "mpnds"; });
            }
            if (records.empty()) {
                throw std::runtime_error("no run records under " + rep_in);
            }
            harness::emit_table(std::cout, harness::aggregate(records), harness::parse_format(rep_format));
            return 0;
        }
        if (*world_cmd) {
            uav::WorldConfig wc;
            wc.seed = world_seed;
            const auto world = uav::generate_world(wc);
            if (world_out.empty()) {
                uav::write_world(std::cout, world);
            } else {
                uav::save_world(world_out, world);
            }
            return 0;
        }
    } catch (const std::exception &e) {
        std::cerr << "mpmo: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
