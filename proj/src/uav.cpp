#include "mpmo/uav.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "mpmo/random.hpp"

namespace mpmo::uav
{

namespace
{

double horizontal_norm(double dx, double dy, double cell)
{
    return std::hypot(dx * cell, dy * cell);
}

double segment_length(const Point3 &a, const Point3 &b, double cell)
{
    const double dx = (b.x - a.x) * cell;
    const double dy = (b.y - a.y) * cell;
    const double dz = b.z - a.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double rbf_sum(const std::vector<PopulationCenter> &centers, double x, double y)
{
    double s = 0.0;
    for (const auto &c : centers) {
        const double dx = x - c.cx;
        const double dy = y - c.cy;
        s += c.weight * std::exp(-(dx * dx + dy * dy) / (2.0 * c.spread * c.spread));
    }
    return s;
}

void validate(const WorldConfig &c)
{
    auto positive = [](double v, const char *what) {
        if (!(v > 0.0)) {
            throw contract_violation(std::string("world config: ") + what + " must be positive");
        }
    };
    positive(c.extent, "extent");
    positive(c.cell_size, "cell_size");
    positive(c.h_min, "h_min");
    positive(c.h_max, "h_max");
    positive(c.alpha_max, "alpha_max");
    positive(c.beta_max, "beta_max");
    positive(c.spread_min, "spread_min");
    positive(c.spread_max, "spread_max");
    positive(c.road_width, "road_width");
    positive(c.building_sigma, "building_sigma");
    positive(c.impact_area_m2, "impact_area_m2");
    positive(c.e0_pedestrian_j, "e0_pedestrian_j");
    positive(c.e0_vehicle_j, "e0_vehicle_j");
    positive(c.weight_kg, "weight_kg");
    positive(c.gravity, "gravity");
    positive(c.rho0, "rho0");
    positive(c.rotor_area_m2, "rotor_area_m2");
    positive(c.rotors, "rotors");
    positive(c.speed_ms, "speed_ms");
    positive(c.scale_height_km, "scale_height_km");
    if (!(c.h_min < c.h_max)) {
        throw contract_violation("world config: h_min must be below h_max");
    }
    if (c.peak_density < 0.0 || c.vehicle_scale < 0.0 || c.p_crash_per_hour < 0.0 || c.noise_d_interest_m < 0.0) {
        throw contract_violation("world config: densities and probabilities must be non-negative");
    }
    if (c.spread_min > c.spread_max) {
        throw contract_violation("world config: spread_min > spread_max");
    }
}

} // namespace

double EnergyLogisticKernel::operator()(double z) const
{
    const double e = weight_ * gravity_ * std::max(z, 0.0);
    return e / (e + e0_);
}

World::World(WorldConfig config, std::vector<PopulationCenter> centers, std::array<double, 2> roads)
    : config_(std::move(config)), centers_(std::move(centers)), roads_(roads)
{
    validate(config_);
    pedestrian_kernel_ =
        std::make_shared<EnergyLogisticKernel>(config_.weight_kg, config_.gravity, config_.e0_pedestrian_j);
    vehicle_kernel_ = std::make_shared<EnergyLogisticKernel>(config_.weight_kg, config_.gravity, config_.e0_vehicle_j);
}

double World::pedestrian_density(double x, double y) const
{
    return rbf_sum(centers_, x, y);
}

double World::vehicle_density(double x, double y) const
{
    const double w2 = 2.0 * config_.road_width * config_.road_width;
    const double dx = x - roads_[0];
    const double dy = y - roads_[1];
    const double ridge = std::max(std::exp(-dx * dx / w2), std::exp(-dy * dy / w2));
    return config_.vehicle_scale * pedestrian_density(x, y) * ridge;
}

void World::set_kernels(std::shared_ptr<const ImpactKernel> pedestrian, std::shared_ptr<const ImpactKernel> vehicle)
{
    if (!pedestrian || !vehicle) {
        throw contract_violation("world: impact kernels must not be null");
    }
    pedestrian_kernel_ = std::move(pedestrian);
    vehicle_kernel_ = std::move(vehicle);
}

World generate_world(const WorldConfig &config)
{
    validate(config);
    Rng rng(config.seed);
    std::vector<PopulationCenter> centers(config.n_centers);
    const double lo = config.center_margin;
    const double hi = config.extent - config.center_margin;
    for (auto &c : centers) {
        c.cx = rng.uniform(lo, hi);
        c.cy = rng.uniform(lo, hi);
        c.spread = rng.uniform(config.spread_min, config.spread_max);
        c.weight = rng.uniform(0.5, 1.0);
    }
    std::array<double, 2> roads{rng.uniform(10.0, config.extent - 10.0), rng.uniform(10.0, config.extent - 10.0)};

    double peak = 0.0;
    const auto last = static_cast<int>(std::floor(config.extent));
    for (int gx = 0; gx <= last; ++gx) {
        for (int gy = 0; gy <= last; ++gy) {
            peak = std::max(peak, rbf_sum(centers, gx, gy));
        }
    }
    const double scale = peak > 0.0 ? config.peak_density / peak : 0.0;
    for (auto &c : centers) {
        c.weight *= scale;
    }
    return World(config, std::move(centers), roads);
}

namespace
{

nlohmann::json point_json(const Point2 &p)
{
    return nlohmann::json::array({p.x, p.y});
}

Point2 json_point(const nlohmann::json &j)
{
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

} // namespace

void write_world(std::ostream &os, const World &world)
{
    const auto &c = world.config();
    nlohmann::json j;
    j["format"] = "mpmo-world/1";
    j["seed"] = c.seed;
    j["geometry"] = {{"extent", c.extent},       {"cell_size", c.cell_size}, {"h_min", c.h_min},
                     {"h_max", c.h_max},         {"alpha_max", c.alpha_max}, {"beta_max", c.beta_max}};
    j["population"] = {{"n_centers", c.n_centers},         {"peak_density", c.peak_density},
                       {"spread_min", c.spread_min},       {"spread_max", c.spread_max},
                       {"center_margin", c.center_margin}, {"vehicle_scale", c.vehicle_scale},
                       {"road_width", c.road_width}};
    j["buildings"] = {{"mu", c.building_mu}, {"sigma", c.building_sigma}};
    j["risk"] = {{"p_crash_per_hour", c.p_crash_per_hour},
                 {"impact_area_m2", c.impact_area_m2},
                 {"e0_pedestrian_j", c.e0_pedestrian_j},
                 {"e0_vehicle_j", c.e0_vehicle_j},
                 {"pedestrian_kernel", world.pedestrian_kernel().name()},
                 {"vehicle_kernel", world.vehicle_kernel().name()},
                 {"noise_k", c.noise_k},
                 {"noise_source_db", c.noise_source_db},
                 {"noise_threshold_db", c.noise_threshold_db},
                 {"noise_d_interest_m", c.noise_d_interest_m}};
    j["vehicle"] = {{"weight_kg", c.weight_kg},   {"gravity", c.gravity},       {"rho0", c.rho0},
                    {"rotor_area_m2", c.rotor_area_m2}, {"rotors", c.rotors}, {"speed_ms", c.speed_ms},
                    {"scale_height_km", c.scale_height_km}};
    nlohmann::json hover = nlohmann::json::array();
    for (const auto &h : c.hover_points) {
        hover.push_back(point_json(h));
    }
    j["mission"] = {{"start", point_json(c.start)}, {"goal", point_json(c.goal)}, {"hover_points", hover}};
    nlohmann::json centers = nlohmann::json::array();
    for (const auto &p : world.centers()) {
        centers.push_back({{"cx", p.cx}, {"cy", p.cy}, {"weight", p.weight}, {"spread", p.spread}});
    }
    j["centers"] = centers;
    j["roads"] = {world.roads()[0], world.roads()[1]};
    os << j.dump(2) << '\n';
}

World read_world(std::istream &is)
{
    const auto j = nlohmann::json::parse(is);
    if (j.value("format", "") != "mpmo-world/1") {
        throw std::runtime_error("world file: unsupported format");
    }
    WorldConfig c;
    c.seed = j.at("seed").get<std::uint64_t>();
    const auto &g = j.at("geometry");
    c.extent = g.at("extent");
    c.cell_size = g.at("cell_size");
    c.h_min = g.at("h_min");
    c.h_max = g.at("h_max");
    c.alpha_max = g.at("alpha_max");
    c.beta_max = g.at("beta_max");
    const auto &p = j.at("population");
    c.n_centers = p.at("n_centers");
    c.peak_density = p.at("peak_density");
    c.spread_min = p.at("spread_min");
    c.spread_max = p.at("spread_max");
    c.center_margin = p.at("center_margin");
    c.vehicle_scale = p.at("vehicle_scale");
    c.road_width = p.at("road_width");
    c.building_mu = j.at("buildings").at("mu");
    c.building_sigma = j.at("buildings").at("sigma");
    const auto &r = j.at("risk");
    c.p_crash_per_hour = r.at("p_crash_per_hour");
    c.impact_area_m2 = r.at("impact_area_m2");
    c.e0_pedestrian_j = r.at("e0_pedestrian_j");
    c.e0_vehicle_j = r.at("e0_vehicle_j");
    c.noise_k = r.at("noise_k");
    c.noise_source_db = r.at("noise_source_db");
    c.noise_threshold_db = r.at("noise_threshold_db");
    c.noise_d_interest_m = r.at("noise_d_interest_m");
    const auto &v = j.at("vehicle");
    c.weight_kg = v.at("weight_kg");
    c.gravity = v.at("gravity");
    c.rho0 = v.at("rho0");
    c.rotor_area_m2 = v.at("rotor_area_m2");
    c.rotors = v.at("rotors");
    c.speed_ms = v.at("speed_ms");
    c.scale_height_km = v.at("scale_height_km");
    const auto &m = j.at("mission");
    c.start = json_point(m.at("start"));
    c.goal = json_point(m.at("goal"));
    c.hover_points.clear();
    for (const auto &h : m.at("hover_points")) {
        c.hover_points.push_back(json_point(h));
    }
    std::vector<PopulationCenter> centers;
    for (const auto &e : j.at("centers")) {
        centers.push_back({e.at("cx"), e.at("cy"), e.at("weight"), e.at("spread")});
    }
    const auto &roads = j.at("roads");
    return World(c, std::move(centers), {roads.at(0).get<double>(), roads.at(1).get<double>()});
}

void save_world(const std::filesystem::path &file, const World &world)
{
    std::ofstream os(file);
    if (!os) {
        throw std::runtime_error("cannot write " + file.string());
    }
    write_world(os, world);
}

World load_world(const std::filesystem::path &file)
{
    std::ifstream is(file);
    if (!is) {
        throw std::runtime_error("cannot read " + file.string());
    }
    return read_world(is);
}

Path decode_path(std::span<const double> genome, const World &world)
{
    if (genome.size() != genome_length) {
        throw contract_violation("decode_path: genome must have 88 genes");
    }
    const auto &c = world.config();
    Path path;
    path.points.reserve(track_columns + 2);
    auto gene = [&](std::size_t k) {
        const double g = genome[k];
        if (!(g >= 0.0 && g <= 1.0)) {
            path.clamped = true;
            return std::isnan(g) ? 0.0 : std::clamp(g, 0.0, 1.0);
        }
        return g;
    };
    const double y_span = c.goal.y - c.start.y;
    std::vector<Point3> track(track_columns);
    for (std::size_t i = 1; i <= track_columns; ++i) {
        track[i - 1] = {c.start.x + static_cast<double>(i), c.start.y + y_span * gene(2 * i - 2),
                        c.h_min + (c.h_max - c.h_min) * gene(2 * i - 1)};
    }
    path.points.push_back({c.start.x, c.start.y, track.front().z});
    path.points.insert(path.points.end(), track.begin(), track.end());
    path.points.push_back({c.goal.x, c.goal.y, track.back().z});
    return path;
}

void write_path(std::ostream &os, const Path &path)
{
    os << "i\tx\ty\tz\n";
    for (std::size_t i = 0; i < path.points.size(); ++i) {
        const auto &p = path.points[i];
        os << i << '\t' << p.x << '\t' << p.y << '\t' << p.z << '\n';
    }
}

double f_length(const Path &path, const World &world)
{
    const double cell = world.config().cell_size;
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
        s += segment_length(path.points[i], path.points[i + 1], cell);
    }
    return s;
}

double segment_fuel(const Point3 &from, const Point3 &to, const World &world)
{
    const auto &c = world.config();
    const double len = segment_length(from, to, c.cell_size);
    const double mean_alt_km = (from.z + to.z) / 1000.0;
    const double rho = c.rho0 * std::exp(-mean_alt_km / (2.0 * c.scale_height_km));
    const double hover_power = std::pow(c.weight_kg, 1.5)
                               * std::sqrt(c.gravity * c.gravity * c.gravity / (2.0 * rho * c.rotor_area_m2 * c.rotors));
    const double climb = std::max(0.0, to.z - from.z);
    return hover_power * len / c.speed_ms + climb * c.weight_kg * c.gravity;
}

double f_fuel(const Path &path, const World &world)
{
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
        s += segment_fuel(path.points[i], path.points[i + 1], world);
    }
    return s;
}

double f_height(const Path &path)
{
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
        s += std::abs(path.points[i + 1].z - path.points[i].z);
    }
    return s;
}

double f_distance(const Path &path, const World &world)
{
    const double cell = world.config().cell_size;
    double s = 0.0;
    for (const auto &h : world.config().hover_points) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto &p : path.points) {
            best = std::min(best, horizontal_norm(p.x - h.x, p.y - h.y, cell));
        }
        s += best;
    }
    return s;
}

double f_fatal(const Path &path, const World &world)
{
    const auto &c = world.config();
    const auto &pts = path.points;
    double s = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        // Exposure time of a track point: half of each adjacent segment.
        double len = 0.0;
        if (i > 0) {
            len += 0.5 * segment_length(pts[i - 1], pts[i], c.cell_size);
        }
        if (i + 1 < pts.size()) {
            len += 0.5 * segment_length(pts[i], pts[i + 1], c.cell_size);
        }
        const double p_crash = c.p_crash_per_hour * (len / c.speed_ms) / 3600.0;
        const auto &p = pts[i];
        const double pedestrians = world.pedestrian_density(p.x, p.y) * world.pedestrian_kernel()(p.z);
        const double vehicles = world.vehicle_density(p.x, p.y) * world.vehicle_kernel()(p.z);
        s += p_crash * c.impact_area_m2 * pedestrians + p_crash * c.impact_area_m2 * vehicles;
    }
    return s;
}

double lognormal_density(double z, double mu, double sigma)
{
    const double l = std::log(z) - mu;
    return std::exp(-(l * l) / (2.0 * sigma * sigma)) / (z * sigma * std::sqrt(2.0 * std::numbers::pi));
}

double property_risk(double z, const World &world)
{
    if (!(z > 0.0)) {
        throw contract_violation("property_risk: altitude must be positive");
    }
    const auto &c = world.config();
    const double median = std::exp(c.building_mu);
    return lognormal_density(z <= median ? median : z, c.building_mu, c.building_sigma);
}

double f_eco(const Path &path, const World &world)
{
    double s = 0.0;
    for (const auto &p : path.points) {
        s += property_risk(p.z, world);
    }
    return s;
}

double noise_cost(const Point3 &p, const World &world)
{
    const auto &c = world.config();
    const double d = c.noise_d_interest_m;
    const double r2 = p.z * p.z + d * d;
    if (!(r2 > 0.0)) {
        throw contract_violation("noise_cost: zero distance to the area of interest");
    }
    const double received_db = c.noise_source_db - 10.0 * std::log10(r2);
    if (received_db < c.noise_threshold_db) {
        return 0.0;
    }
    return c.noise_k * world.pedestrian_density(p.x, p.y) * c.noise_source_db / r2;
}

double f_noise(const Path &path, const World &world)
{
    double s = 0.0;
    for (const auto &p : path.points) {
        s += noise_cost(p, world);
    }
    return s;
}

ConstraintReport constraint_violations(const Path &path, const World &world)
{
    const auto &c = world.config();
    const auto &pts = path.points;
    ConstraintReport report;
    auto &[terrain, turning, slope] = report.violations;

    for (const auto &p : pts) {
        terrain += std::max(0.0, c.h_min - p.z) + std::max(0.0, p.z - c.h_max);
    }

    const std::size_t segments = pts.size() < 2 ? 0 : pts.size() - 1;
    std::vector<std::array<double, 2>> proj(segments);
    std::vector<double> proj_len(segments);
    for (std::size_t i = 0; i < segments; ++i) {
        proj[i] = {(pts[i + 1].x - pts[i].x) * c.cell_size, (pts[i + 1].y - pts[i].y) * c.cell_size};
        proj_len[i] = std::hypot(proj[i][0], proj[i][1]);
        if (proj_len[i] == 0.0) {
            ++report.skipped_segments;
            continue;
        }
        const double beta = std::atan((pts[i + 1].z - pts[i].z) / proj_len[i]);
        slope += std::max(0.0, std::abs(beta) - c.beta_max);
    }
    for (std::size_t i = 0; i + 1 < segments; ++i) {
        if (proj_len[i] == 0.0 || proj_len[i + 1] == 0.0) {
            continue;
        }
        const double cosine = (proj[i][0] * proj[i + 1][0] + proj[i][1] * proj[i + 1][1]) / (proj_len[i] * proj_len[i + 1]);
        const double alpha = std::acos(std::clamp(cosine, -1.0, 1.0));
        turning += std::max(0.0, std::abs(alpha) - c.alpha_max);
    }
    return report;
}

const std::vector<std::string> &case_ids()
{
    static const std::vector<std::string> ids{"C1", "C2", "C3", "C4", "C5", "C6"};
    return ids;
}

bool is_case_id(const std::string &id)
{
    const auto &ids = case_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

Case parse_case(const std::string &id)
{
    const auto &ids = case_ids();
    const auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) {
        throw std::invalid_argument("unknown UAV case: " + id);
    }
    return static_cast<Case>(it - ids.begin() + 1);
}

std::string to_string(Case c)
{
    return "C" + std::to_string(static_cast<int>(c));
}

MPProblem make_case(Case c, std::shared_ptr<const World> world)
{
    if (!world) {
        throw contract_violation("make_case: world must not be null");
    }
    const int k = static_cast<int>(c);
    if (k < 1 || k > 6) {
        throw std::invalid_argument("unknown UAV case");
    }
    enum class Effort { length, length_height, fuel };
    const Effort effort = (k == 1 || k == 4) ? Effort::length : (k == 2 || k == 5) ? Effort::length_height : Effort::fuel;
    const bool noise = k >= 4;

    MPProblem p;
    p.id = to_string(c);
    p.dim = genome_length;
    p.arities = {2, 2};
    p.bounds.lower.assign(genome_length, 0.0);
    p.bounds.upper.assign(genome_length, 1.0);
    p.evaluate = [world, effort, noise](std::span<const double> genome) {
        const Path path = decode_path(genome, *world);
        double first = 0.0;
        switch (effort) {
        case Effort::length:
            first = f_length(path, *world);
            break;
        case Effort::length_height:
            first = f_length(path, *world) + f_height(path);
            break;
        case Effort::fuel:
            first = f_fuel(path, *world);
            break;
        }
        const double second = noise ? f_noise(path, *world) : f_eco(path, *world);
        return PartyObjectives{{first, f_distance(path, *world)}, {f_fatal(path, *world), second}};
    };
    p.constraints = [world](std::span<const double> genome) {
        const auto report = constraint_violations(decode_path(genome, *world), *world);
        return std::vector<double>(report.violations.begin(), report.violations.end());
    };
    return p;
}

} // namespace mpmo::uav
