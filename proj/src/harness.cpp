#include "mpmo/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mpmo/suite.hpp"
#include "mpmo/uav.hpp"

namespace mpmo::harness
{

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

const std::vector<std::size_t> suite_dims{10, 30, 50};

std::string format_g(double v, int digits)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::uint64_t fnv1a(const std::string &s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_json_file(const fs::path &file, const json &j)
{
    fs::create_directories(file.parent_path());
    const auto tmp = file.string() + ".tmp";
    {
        std::ofstream os(tmp);
        if (!os) {
            throw std::runtime_error("cannot write " + tmp);
        }
        os << j.dump(1) << '\n';
    }
    fs::rename(tmp, file);
}

json read_json_file(const fs::path &file)
{
    std::ifstream is(file);
    if (!is) {
        throw std::runtime_error("cannot read " + file.string());
    }
    return json::parse(is);
}

json ea_json(const algo::EAConfig &ea)
{
    return {{"population_size", ea.population_size}, {"crossover_prob", ea.crossover_prob},
            {"crossover_eta", ea.crossover_eta},     {"mutation_eta", ea.mutation_eta},
            {"mutation_prob", ea.mutation_prob},     {"tournament_size", ea.tournament_size}};
}

json bounds_json(const metrics::NormalizationBounds &b)
{
    json arr = json::array();
    for (const auto &p : b) {
        arr.push_back({{"ideal", p.ideal}, {"nadir", p.nadir}});
    }
    return arr;
}

metrics::NormalizationBounds bounds_from_json(const json &arr)
{
    metrics::NormalizationBounds b;
    for (const auto &p : arr) {
        b.push_back({p.at("ideal").get<std::vector<double>>(), p.at("nadir").get<std::vector<double>>()});
    }
    return b;
}

std::shared_ptr<const uav::World> load_or_make_world(const fs::path &out_dir, std::uint64_t seed)
{
    const fs::path file = out_dir / ("world_s" + std::to_string(seed) + ".json");
    if (fs::exists(file)) {
        return std::make_shared<const uav::World>(uav::load_world(file));
    }
    uav::WorldConfig wc;
    wc.seed = seed;
    auto world = std::make_shared<const uav::World>(uav::generate_world(wc));
    fs::create_directories(out_dir);
    uav::save_world(file, *world);
    return world;
}

struct Task {
    ProblemKey key;
    std::uint64_t seed = 0;
    fs::path file;
    std::string hash;
};

} // namespace

bool is_uav(const std::string &id)
{
    return uav::is_case_id(id);
}

std::size_t fe_budget(const std::string &id, std::size_t dim)
{
    if (is_uav(id)) {
        return uav_budget;
    }
    return 1000 * dim * suite::spec(id).parties.size();
}

std::string primary_metric(const std::string &id)
{
    if (is_uav(id)) {
        return "MPHV";
    }
    if (suite::is_suite_id(id)) {
        return "MPIGD";
    }
    throw std::invalid_argument("unknown problem: " + id);
}

std::vector<std::uint64_t> parse_seed_list(const std::string &text)
{
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) {
            continue;
        }
        const auto dots = part.find("..");
        try {
            if (dots == std::string::npos) {
                seeds.push_back(std::stoull(part));
            } else {
                const auto lo = std::stoull(part.substr(0, dots));
                const auto hi = std::stoull(part.substr(dots + 2));
                if (hi < lo) {
                    throw std::invalid_argument("descending range");
                }
                for (auto s = lo; s <= hi; ++s) {
                    seeds.push_back(s);
                }
            }
        } catch (const std::exception &) {
            throw std::invalid_argument("bad seed list: " + text);
        }
    }
    if (seeds.empty()) {
        throw std::invalid_argument("empty seed list");
    }
    return seeds;
}

bool ExperimentConfig::competition_seeds() const
{
    std::vector<std::uint64_t> expected(30);
    std::iota(expected.begin(), expected.end(), std::uint64_t{1});
    return seeds == expected;
}

void ExperimentConfig::validate() const
{
    if (problems.empty()) {
        throw std::invalid_argument("experiment: no problems selected");
    }
    if (seeds.empty()) {
        throw std::invalid_argument("experiment: no seeds");
    }
    if (algo != "mpnds" && algo != "random") {
        throw std::invalid_argument("experiment: unknown algorithm '" + algo + "'");
    }
    for (const auto &k : problems) {
        if (is_uav(k.id)) {
            if (k.dim != uav_dimension) {
                throw std::invalid_argument("experiment: UAV cases run at d = 88");
            }
        } else {
            const auto &s = suite::spec(k.id);
            if (k.dim < bf::min_dimension(s.parties.front().family)) {
                throw std::invalid_argument("experiment: dimension too small for " + k.id);
            }
        }
    }
    if (jobs == 0) {
        throw std::invalid_argument("experiment: jobs must be >= 1");
    }
}

std::vector<ProblemKey> expand_problems(const std::string &suite_name, const std::vector<std::string> &problems,
                                        const std::vector<std::size_t> &dims)
{
    const bool want_e = suite_name == "e" || suite_name == "all";
    const bool want_c = suite_name == "uav" || suite_name == "all";
    if (!want_e && !want_c) {
        throw std::invalid_argument("unknown suite '" + suite_name + "' (expected e, uav or all)");
    }
    for (const auto &p : problems) {
        if (!suite::is_suite_id(p) && !is_uav(p)) {
            throw std::invalid_argument("unknown problem: " + p);
        }
    }
    auto wanted = [&](const std::string &id) {
        return problems.empty() || std::find(problems.begin(), problems.end(), id) != problems.end();
    };
    std::vector<ProblemKey> keys;
    if (want_e) {
        const auto &use_dims = dims.empty() ? suite_dims : dims;
        for (const auto &id : suite::problem_ids()) {
            if (!wanted(id)) {
                continue;
            }
            for (auto d : use_dims) {
                keys.push_back({id, d});
            }
        }
    }
    if (want_c) {
        for (const auto &id : uav::case_ids()) {
            if (wanted(id)) {
                keys.push_back({id, uav_dimension});
            }
        }
    }
    if (keys.empty()) {
        throw std::invalid_argument("no problems match the selection");
    }
    return keys;
}

ExperimentConfig config_from_json(const json &j)
{
    ExperimentConfig cfg;
    const std::string suite_name = j.value("suite", "all");
    const auto problems = j.value("problems", std::vector<std::string>{});
    const auto dims = j.value("dims", std::vector<std::size_t>{});
    cfg.problems = expand_problems(suite_name, problems, dims);
    if (j.contains("seeds")) {
        const auto &s = j.at("seeds");
        cfg.seeds = s.is_string() ? parse_seed_list(s.get<std::string>()) : s.get<std::vector<std::uint64_t>>();
    } else {
        cfg.seeds = parse_seed_list("1..30");
    }
    cfg.algo = j.value("algo", cfg.algo);
    cfg.out_dir = j.value("out", cfg.out_dir.string());
    if (j.contains("fronts")) {
        cfg.fronts_dir = j.at("fronts").get<std::string>();
    }
    cfg.world_seed = j.value("world_seed", cfg.world_seed);
    cfg.front_resolution = j.value("resolution", cfg.front_resolution);
    cfg.front_seed = j.value("front_seed", cfg.front_seed);
    cfg.jobs = j.value("jobs", cfg.jobs);
    cfg.force = j.value("force", cfg.force);
    cfg.mphv_for_suite = j.value("mphv_for_suite", cfg.mphv_for_suite);
    cfg.trace_points = j.value("trace_points", cfg.trace_points);
    if (j.contains("ea")) {
        const auto &e = j.at("ea");
        cfg.ea.population_size = e.value("population_size", cfg.ea.population_size);
        cfg.ea.crossover_prob = e.value("crossover_prob", cfg.ea.crossover_prob);
        cfg.ea.crossover_eta = e.value("crossover_eta", cfg.ea.crossover_eta);
        cfg.ea.mutation_eta = e.value("mutation_eta", cfg.ea.mutation_eta);
        cfg.ea.mutation_prob = e.value("mutation_prob", cfg.ea.mutation_prob);
        cfg.ea.tournament_size = e.value("tournament_size", cfg.ea.tournament_size);
    }
    return cfg;
}

json to_json(const RunRecord &r)
{
    json trace = json::array();
    for (const auto &t : r.trace) {
        trace.push_back({t.evaluations, std::isfinite(t.value) ? json(t.value) : json(nullptr)});
    }
    json metrics = json::object();
    for (const auto &[k, v] : r.metrics) {
        metrics[k] = v;
    }
    return {{"algo", r.algo},
            {"problem", r.problem},
            {"dim", r.dim},
            {"seed", r.seed},
            {"fe_budget", r.fe_budget},
            {"fe_used", r.fe_used},
            {"metrics", metrics},
            {"wall_time_s", r.wall_time_s},
            {"config_hash", r.config_hash},
            {"reference_version", r.reference_version},
            {"status", r.ok ? "ok" : "failed"},
            {"error", r.error},
            {"archive_x", r.archive_x},
            {"archive_objs", r.archive_objs},
            {"trace", trace}};
}

RunRecord record_from_json(const json &j)
{
    RunRecord r;
    r.algo = j.at("algo");
    r.problem = j.at("problem");
    r.dim = j.at("dim");
    r.seed = j.at("seed");
    r.fe_budget = j.at("fe_budget");
    r.fe_used = j.at("fe_used");
    for (const auto &[k, v] : j.at("metrics").items()) {
        r.metrics[k] = v.get<double>();
    }
    r.wall_time_s = j.value("wall_time_s", 0.0);
    r.config_hash = j.at("config_hash");
    r.reference_version = j.value("reference_version", "");
    r.ok = j.value("status", "ok") == "ok";
    r.error = j.value("error", "");
    r.archive_x = j.at("archive_x").get<std::vector<DecisionVector>>();
    r.archive_objs = j.at("archive_objs").get<std::vector<PartyObjectives>>();
    for (const auto &t : j.value("trace", json::array())) {
        r.trace.push_back({t.at(0).get<std::size_t>(),
                           t.at(1).is_null() ? std::numeric_limits<double>::quiet_NaN() : t.at(1).get<double>()});
    }
    return r;
}

fs::path record_path(const fs::path &out_dir, const std::string &algo, const ProblemKey &key, std::uint64_t seed)
{
    return out_dir / "runs" / algo / (key.id + "_d" + std::to_string(key.dim) + "_s" + std::to_string(seed) + ".json");
}

std::string config_hash(const ExperimentConfig &cfg, const ProblemKey &key)
{
    json j{{"algo", cfg.algo},
           {"problem", key.id},
           {"dim", key.dim},
           {"budget", fe_budget(key.id, key.dim)},
           {"trace_points", cfg.trace_points}};
    if (cfg.algo == "mpnds") {
        j["ea"] = ea_json(cfg.ea);
    }
    if (is_uav(key.id)) {
        j["world_seed"] = cfg.world_seed;
    } else {
        j["front"] = {cfg.front_resolution, cfg.front_seed};
    }
    return hex64(fnv1a(j.dump()));
}

std::vector<RunRecord> load_records(const fs::path &out_dir)
{
    std::vector<RunRecord> out;
    const fs::path runs = out_dir / "runs";
    if (!fs::exists(runs)) {
        return out;
    }
    std::vector<fs::path> files;
    for (const auto &e : fs::recursive_directory_iterator(runs)) {
        if (e.is_regular_file() && e.path().extension() == ".json") {
            files.push_back(e.path());
        }
    }
    std::sort(files.begin(), files.end());
    for (const auto &f : files) {
        out.push_back(record_from_json(read_json_file(f)));
    }
    return out;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig &cfg)
{
    cfg.validate();
    const fs::path fronts_dir = cfg.fronts_dir.empty() ? cfg.out_dir / "fronts" : cfg.fronts_dir;
    fs::create_directories(cfg.out_dir);

    // Shared read-only resources, built up front in a fixed order.
    std::map<ProblemKey, suite::ReferenceFront> fronts;
    std::shared_ptr<const uav::World> world;
    std::string world_version;
    for (const auto &key : cfg.problems) {
        if (is_uav(key.id)) {
            if (!world) {
                world = load_or_make_world(cfg.out_dir, cfg.world_seed);
                std::ostringstream ws;
                uav::write_world(ws, *world);
                world_version = "world_s" + std::to_string(cfg.world_seed) + "@" + hex64(fnv1a(ws.str()));
            }
        } else if (!fronts.count(key)) {
            fronts.emplace(key, suite::load_or_build_front(fronts_dir, key.id, key.dim, cfg.front_resolution,
                                                           cfg.front_seed));
        }
    }

    std::vector<Task> tasks;
    for (const auto &key : cfg.problems) {
        const std::string hash = config_hash(cfg, key);
        for (auto seed : cfg.seeds) {
            tasks.push_back({key, seed, record_path(cfg.out_dir, cfg.algo, key, seed), hash});
        }
    }

    std::vector<RunRecord> records(tasks.size());
    std::vector<char> fresh(tasks.size(), 0);
    // UAV checkpoint archives, one per trace point, scored once bounds exist.
    std::vector<std::vector<std::vector<PartyObjectives>>> snapshots(tasks.size());

    auto execute = [&](std::size_t i) {
        const Task &task = tasks[i];
        if (!cfg.force && fs::exists(task.file)) {
            try {
                RunRecord existing = record_from_json(read_json_file(task.file));
                if (existing.ok && existing.config_hash == task.hash) {
                    records[i] = std::move(existing);
                    return;
                }
            } catch (const std::exception &) {
                // Unreadable record: run again.
            }
        }
        fresh[i] = 1;
        RunRecord &rec = records[i];
        rec.algo = cfg.algo;
        rec.problem = task.key.id;
        rec.dim = task.key.dim;
        rec.seed = task.seed;
        rec.fe_budget = fe_budget(task.key.id, task.key.dim);
        rec.config_hash = task.hash;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const bool uav_case = is_uav(task.key.id);
            const MPProblem problem = uav_case ? uav::make_case(uav::parse_case(task.key.id), world)
                                               : suite::make_problem(task.key.id, task.key.dim);
            const suite::ReferenceFront *front = uav_case ? nullptr : &fronts.at(task.key);
            rec.reference_version = uav_case ? world_version
                                             : suite::front_file_name(task.key.id, task.key.dim,
                                                                      cfg.front_resolution, cfg.front_seed);
            algo::RunHooks hooks;
            hooks.trace_points = cfg.trace_points;
            auto &snaps = snapshots[i];
            hooks.trace_metric = [front, &snaps](const std::vector<algo::Individual> &archive) {
                auto objs = algo::objectives_of(archive);
                if (front != nullptr) {
                    return objs.empty() ? std::numeric_limits<double>::quiet_NaN() : metrics::mpigd(*front, objs);
                }
                snaps.push_back(std::move(objs));
                return std::numeric_limits<double>::quiet_NaN();
            };

            algo::RunResult result;
            if (cfg.algo == "mpnds") {
                algo::EAConfig ea = cfg.ea;
                ea.seed = task.seed;
                ea.fe_budget = rec.fe_budget;
                result = algo::run_baseline(problem, ea, hooks);
            } else {
                result = algo::run_random_search(problem, task.seed, rec.fe_budget, hooks);
            }
            rec.fe_used = result.evaluations;
            rec.trace = result.trace;
            for (const auto &ind : result.archive) {
                rec.archive_x.push_back(ind.x);
                rec.archive_objs.push_back(ind.objs);
            }
            if (front != nullptr) {
                if (rec.archive_objs.empty()) {
                    throw std::runtime_error("empty final archive");
                }
                rec.metrics["MPIGD"] = metrics::mpigd(*front, rec.archive_objs);
            }
        } catch (const std::exception &e) {
            rec.ok = false;
            rec.error = e.what();
        }
        rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    {
        std::atomic<std::size_t> next{0};
        const std::size_t workers = std::min(cfg.jobs, std::max<std::size_t>(tasks.size(), 1));
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < tasks.size(); i = next++) {
                    execute(i);
                }
            });
        }
    }

    // MPHV: normalisation bounds are frozen per problem from every algorithm's
    // runs present in the output directory.
    std::set<ProblemKey> hv_keys;
    for (const auto &key : cfg.problems) {
        if (is_uav(key.id) || cfg.mphv_for_suite) {
            hv_keys.insert(key);
        }
    }
    if (!hv_keys.empty()) {
        const auto on_disk = load_records(cfg.out_dir);
        for (const auto &key : hv_keys) {
            const fs::path bounds_file = cfg.out_dir / "bounds" / (key.id + "_d" + std::to_string(key.dim) + ".json");
            metrics::NormalizationBounds bounds;
            if (fs::exists(bounds_file)) {
                bounds = bounds_from_json(read_json_file(bounds_file).at("bounds"));
            } else {
                std::vector<std::vector<PartyObjectives>> sets;
                std::set<std::pair<std::string, std::uint64_t>> seen;
                for (std::size_t i = 0; i < tasks.size(); ++i) {
                    if (tasks[i].key == key && records[i].ok && !records[i].archive_objs.empty()) {
                        sets.push_back(records[i].archive_objs);
                        seen.insert({records[i].algo, records[i].seed});
                    }
                }
                for (const auto &r : on_disk) {
                    if (r.problem == key.id && r.dim == key.dim && r.ok && !r.archive_objs.empty()
                        && !seen.count({r.algo, r.seed})) {
                        sets.push_back(r.archive_objs);
                    }
                }
                if (sets.empty()) {
                    continue; // nothing feasible yet; every run scores 0 below
                }
                bounds = metrics::normalization_bounds(sets);
                write_json_file(bounds_file, {{"problem", key.id}, {"dim", key.dim}, {"bounds", bounds_json(bounds)},
                                              {"runs", sets.size()}});
            }
            const std::size_t parties = bounds.size();
            for (std::size_t i = 0; i < tasks.size(); ++i) {
                auto &rec = records[i];
                if (tasks[i].key != key || !rec.ok || (rec.metrics.count("MPHV") && !fresh[i])) {
                    continue;
                }
                fresh[i] = 1;
                auto score = [&](const std::vector<PartyObjectives> &objs) {
                    return objs.empty() ? metrics::MphvResult{}
                                        : metrics::mphv(metrics::apply_normalization(objs, bounds), parties);
                };
                const auto hv = score(rec.archive_objs);
                rec.metrics["MPHV"] = hv.sum;
                rec.metrics["MPHV_avg"] = hv.averaged;
                const auto &snaps = snapshots[i];
                if (snaps.size() == rec.trace.size()) {
                    for (std::size_t t = 0; t < snaps.size(); ++t) {
                        rec.trace[t].value = score(snaps[t]).sum;
                    }
                }
            }
        }
        // Runs of a problem whose bounds could not be formed have no feasible
        // solutions at all.
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            if (hv_keys.count(tasks[i].key) && records[i].ok && !records[i].metrics.count("MPHV")) {
                records[i].metrics["MPHV"] = 0.0;
                records[i].metrics["MPHV_avg"] = 0.0;
                for (auto &t : records[i].trace) {
                    t.value = 0.0;
                }
                fresh[i] = 1;
            }
        }
    }

    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (!fresh[i]) {
            continue;
        }
        write_json_file(tasks[i].file, to_json(records[i]));
        if (world && is_uav(tasks[i].key.id) && records[i].ok) {
            const fs::path pf = cfg.out_dir / "paths" / cfg.algo
                                / (tasks[i].key.id + "_s" + std::to_string(tasks[i].seed) + ".tsv");
            fs::create_directories(pf.parent_path());
            std::ofstream os(pf);
            for (std::size_t k = 0; k < records[i].archive_x.size(); ++k) {
                os << "# solution " << k << '\n';
                uav::write_path(os, uav::decode_path(records[i].archive_x[k], *world));
            }
        }
    }
    return records;
}

Stats summarize(std::vector<double> values, bool lower_is_better)
{
    if (values.empty()) {
        throw contract_violation("summarize: no values");
    }
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    Stats s;
    s.best = lower_is_better ? values.front() : values.back();
    s.worst = lower_is_better ? values.back() : values.front();
    s.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (double v : values) {
        sq += (v - s.mean) * (v - s.mean);
    }
    s.stdev = n > 1 ? std::sqrt(sq / static_cast<double>(n - 1)) : 0.0;
    return s;
}

std::optional<Stats> StatTable::find(const std::string &id, std::size_t dim) const
{
    auto it = cells.find({id, dim});
    if (it == cells.end()) {
        return std::nullopt;
    }
    return it->second;
}

StatTable aggregate(const std::vector<RunRecord> &records)
{
    std::map<ProblemKey, std::vector<double>> values;
    std::set<ProblemKey> incomplete;
    for (const auto &r : records) {
        const ProblemKey key{r.problem, r.dim};
        const std::string metric = primary_metric(r.problem);
        auto it = r.metrics.find(metric);
        if (!r.ok || it == r.metrics.end() || !std::isfinite(it->second)) {
            incomplete.insert(key);
            continue;
        }
        values[key].push_back(it->second);
    }
    StatTable table;
    for (auto &[key, v] : values) {
        if (incomplete.count(key)) {
            continue;
        }
        table.cells[key] = summarize(std::move(v), primary_metric(key.id) == "MPIGD");
    }
    return table;
}

TableFormat parse_format(const std::string &name)
{
    if (name == "text") {
        return TableFormat::text;
    }
    if (name == "csv") {
        return TableFormat::csv;
    }
    if (name == "latex") {
        return TableFormat::latex;
    }
    throw std::invalid_argument("unknown format '" + name + "' (expected text, csv or latex)");
}

namespace
{

struct Block {
    std::string metric;
    std::vector<std::string> columns; // "-" marks an unused column
    std::vector<std::size_t> dims;
};

const std::vector<Block> &table_blocks()
{
    static const std::vector<Block> blocks{
        {"MPIGD", {"E1", "E2", "E3", "E4", "E5", "E6"}, {10, 30, 50}},
        {"MPIGD", {"E7", "E8", "E9", "E10", "E11", "-"}, {10, 30, 50}},
        {"MPHV", {"C1", "C2", "C3", "C4", "C5", "C6"}, {88}},
    };
    return blocks;
}

const std::array<const char *, 5> stat_names{"Best", "Median", "Worst", "Mean", "StDev"};

double stat_value(const Stats &s, std::size_t k)
{
    switch (k) {
    case 0:
        return s.best;
    case 1:
        return s.median;
    case 2:
        return s.worst;
    case 3:
        return s.mean;
    default:
        return s.stdev;
    }
}

double &stat_ref(Stats &s, std::size_t k)
{
    switch (k) {
    case 0:
        return s.best;
    case 1:
        return s.median;
    case 2:
        return s.worst;
    case 3:
        return s.mean;
    default:
        return s.stdev;
    }
}

const char *const dash = "\u2014";

std::vector<std::string> split_csv(const std::string &line)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

void emit_text(std::ostream &os, const StatTable &table)
{
    constexpr int label = 8, stat = 8, cell = 14;
    bool first_block = true;
    for (const auto &b : table_blocks()) {
        if (!first_block) {
            os << '\n';
        }
        first_block = false;
        os << b.metric << (b.metric == "MPIGD" ? " (lower is better)" : " (higher is better)") << '\n';
        os << std::left << std::setw(label) << "" << std::setw(stat) << "";
        for (const auto &c : b.columns) {
            os << std::right << std::setw(cell) << c;
        }
        os << '\n';
        for (auto d : b.dims) {
            for (std::size_t k = 0; k < stat_names.size(); ++k) {
                const std::string dlabel = k == 0 ? "d=" + std::to_string(d) : "";
                os << std::left << std::setw(label) << dlabel << std::setw(stat) << stat_names[k];
                for (const auto &c : b.columns) {
                    std::string v;
                    if (c == "-") {
                        v = "";
                    } else if (auto s = table.find(c, d)) {
                        v = format_g(stat_value(*s, k), 6);
                    } else {
                        v = dash;
                    }
                    // setw counts bytes; the em dash is 3 bytes wide.
                    const int pad = cell - static_cast<int>(v == dash ? 1 : v.size());
                    os << std::string(static_cast<std::size_t>(std::max(pad, 1)), ' ') << v;
                }
                os << '\n';
            }
        }
    }
}

void emit_csv(std::ostream &os, const StatTable &table)
{
    bool first_block = true;
    for (const auto &b : table_blocks()) {
        if (!first_block) {
            os << '\n';
        }
        first_block = false;
        os << b.metric << ',';
        for (const auto &c : b.columns) {
            os << ',' << c;
        }
        os << '\n';
        for (auto d : b.dims) {
            for (std::size_t k = 0; k < stat_names.size(); ++k) {
                os << "d=" << d << ',' << stat_names[k];
                for (const auto &c : b.columns) {
                    os << ',';
                    if (c == "-") {
                        continue;
                    }
                    if (auto s = table.find(c, d)) {
                        os << format_g(stat_value(*s, k), 17);
                    }
                }
                os << '\n';
            }
        }
    }
}

void emit_latex(std::ostream &os, const StatTable &table)
{
    os << "% requires \\usepackage{multirow}\n";
    os << "\\begin{tabular}{|c|l|c|c|c|c|c|c|}\n";
    bool first_block = true;
    for (const auto &b : table_blocks()) {
        if (!first_block) {
            os << "\\multicolumn{8}{c}{} \\\\\n";
        }
        first_block = false;
        os << "\\hline\n" << b.metric << " & ";
        for (const auto &c : b.columns) {
            if (c == "-") {
                os << " & -";
            } else {
                os << " & $" << c.substr(0, 1) << "_{" << c.substr(1) << "}$";
            }
        }
        os << " \\\\\n\\hline\n";
        for (auto d : b.dims) {
            for (std::size_t k = 0; k < stat_names.size(); ++k) {
                if (k == 0) {
                    os << "\\multirow{5}{*}{d=" << d << "}";
                }
                os << " & " << stat_names[k];
                for (const auto &c : b.columns) {
                    os << " & ";
                    if (c == "-") {
                        continue;
                    }
                    if (auto s = table.find(c, d)) {
                        os << format_g(stat_value(*s, k), 6);
                    } else {
                        os << "---";
                    }
                }
                os << " \\\\\n" << (k + 1 < stat_names.size() ? "\\cline{2-8}\n" : "\\hline\n");
            }
        }
    }
    os << "\\end{tabular}\n";
}

} // namespace

void emit_table(std::ostream &os, const StatTable &table, TableFormat format)
{
    switch (format) {
    case TableFormat::text:
        emit_text(os, table);
        break;
    case TableFormat::csv:
        emit_csv(os, table);
        break;
    case TableFormat::latex:
        emit_latex(os, table);
        break;
    }
}

StatTable parse_csv_table(std::istream &is)
{
    StatTable table;
    std::vector<std::string> columns;
    std::map<ProblemKey, std::size_t> filled;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto fields = split_csv(line);
        if (fields.size() < 3) {
            throw std::runtime_error("table csv: short line: " + line);
        }
        if (fields[0].rfind("d=", 0) != 0) {
            columns.assign(fields.begin() + 2, fields.end());
            continue;
        }
        const std::size_t dim = std::stoul(fields[0].substr(2));
        const auto stat = std::find(stat_names.begin(), stat_names.end(), fields[1]);
        if (stat == stat_names.end()) {
            throw std::runtime_error("table csv: unknown statistic " + fields[1]);
        }
        const auto k = static_cast<std::size_t>(stat - stat_names.begin());
        for (std::size_t c = 0; c < columns.size() && c + 2 < fields.size(); ++c) {
            const std::string &v = fields[c + 2];
            if (columns[c] == "-" || v.empty()) {
                continue;
            }
            const ProblemKey key{columns[c], dim};
            double value = 0.0;
            const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
            if (ec != std::errc{} || end != v.data() + v.size()) {
                throw std::runtime_error("table csv: bad number " + v);
            }
            stat_ref(table.cells[key], k) = value;
            ++filled[key];
        }
    }
    for (const auto &[key, n] : filled) {
        if (n != stat_names.size()) {
            throw std::runtime_error("table csv: incomplete cell " + key.id);
        }
    }
    return table;
}

} // namespace mpmo::harness
