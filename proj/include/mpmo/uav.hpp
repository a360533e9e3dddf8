#pragma once

// Biparty UAV path planning: a synthetic urban world, an 88-gene path
// encoding, seven objectives (efficiency and third-party risk) and the
// altitude/turning/slope constraints. Cases C1..C6 pair them into problems.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "mpmo/core.hpp"

namespace mpmo::uav
{

constexpr std::size_t genome_length = 88;
constexpr std::size_t track_columns = 44;

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

struct PopulationCenter {
    double cx = 0.0;
    double cy = 0.0;
    double weight = 0.0; // persons / m^2 at the peak of this basis function
    double spread = 0.0; // grid units
};

/// Ground-impact lethality as a function of flight altitude (m), in [0, 1).
class ImpactKernel
{
public:
    virtual ~ImpactKernel() = default;
    virtual double operator()(double z) const = 0;
    virtual std::string name() const = 0;
};

/// R(z) = E / (E + E0) with E = W G z, the potential energy released on impact.
class EnergyLogisticKernel final : public ImpactKernel
{
public:
    EnergyLogisticKernel(double weight_kg, double gravity, double e0_joules)
        : weight_(weight_kg), gravity_(gravity), e0_(e0_joules)
    {
    }
    double operator()(double z) const override;
    std::string name() const override { return "energy_logistic"; }
    double e0() const { return e0_; }

private:
    double weight_;
    double gravity_;
    double e0_;
};

struct WorldConfig {
    std::uint64_t seed = 1;

    // Geometry.
    double extent = 50.0;     // grid units per side
    double cell_size = 100.0; // meters per grid unit
    double h_min = 10.0;      // m
    double h_max = 120.0;     // m
    double alpha_max = std::numbers::pi / 3.0; // rad
    double beta_max = std::numbers::pi / 4.0;  // rad

    // Population and traffic.
    std::size_t n_centers = 5;
    double peak_density = 0.01; // persons / m^2
    double spread_min = 5.0;
    double spread_max = 15.0;
    double center_margin = 5.0; // centers stay this far inside the extent
    double vehicle_scale = 0.2;
    double road_width = 2.0; // grid units

    // Buildings (lognormal heights, meters).
    double building_mu = 3.04670;
    double building_sigma = 0.76023;

    // Third-party risk.
    double p_crash_per_hour = 1e-4;
    double impact_area_m2 = 0.5;
    double e0_pedestrian_j = 100.0;
    double e0_vehicle_j = 1e5;
    double noise_k = 1.0;
    double noise_source_db = 80.0;
    double noise_threshold_db = 40.0;
    double noise_d_interest_m = 0.0;

    // Vehicle.
    double weight_kg = 1.38;
    double gravity = 9.81;
    double rho0 = 1.225;
    double rotor_area_m2 = 0.1;
    double rotors = 4.0;
    double speed_ms = 10.0;
    double scale_height_km = 10.7;

    // Mission (grid units).
    Point2 start{1.0, 1.0};
    Point2 goal{45.0, 45.0};
    std::vector<Point2> hover_points{{25.0, 30.0}, {34.0, 20.0}, {40.0, 35.0}};
};

/// Immutable after generation.
class World
{
public:
    World(WorldConfig config, std::vector<PopulationCenter> centers, std::array<double, 2> roads);

    const WorldConfig &config() const { return config_; }
    const std::vector<PopulationCenter> &centers() const { return centers_; }
    /// Road ridge positions: a north-south road at x = roads[0] and an
    /// east-west road at y = roads[1].
    const std::array<double, 2> &roads() const { return roads_; }

    /// Pedestrian density (persons / m^2) at grid coordinates.
    double pedestrian_density(double x, double y) const;
    /// Vehicle occupant density: pedestrian field masked to the road ridges.
    double vehicle_density(double x, double y) const;

    const ImpactKernel &pedestrian_kernel() const { return *pedestrian_kernel_; }
    const ImpactKernel &vehicle_kernel() const { return *vehicle_kernel_; }
    void set_kernels(std::shared_ptr<const ImpactKernel> pedestrian, std::shared_ptr<const ImpactKernel> vehicle);

private:
    WorldConfig config_;
    std::vector<PopulationCenter> centers_;
    std::array<double, 2> roads_;
    std::shared_ptr<const ImpactKernel> pedestrian_kernel_;
    std::shared_ptr<const ImpactKernel> vehicle_kernel_;
};

/// Deterministic in config.seed: center positions, spreads and road positions
/// come from a seeded generator, then weights are rescaled so the density
/// maximum over the integer grid equals config.peak_density.
World generate_world(const WorldConfig &config);

void write_world(std::ostream &os, const World &world);
World read_world(std::istream &is);
void save_world(const std::filesystem::path &file, const World &world);
World load_world(const std::filesystem::path &file);

struct Point3 {
    double x = 0.0; // grid units
    double y = 0.0; // grid units
    double z = 0.0; // meters
};

struct Path {
    std::vector<Point3> points;
    bool clamped = false; // some gene was outside [0, 1]
};

/// Column sweep: track point i (1..44) sits at x = 1 + i, y = 1 + 44 g[2i-2],
/// z = H_min + (H_max - H_min) g[2i-1]; the start shares z with point 1 and the
/// appended goal shares z with point 44.
Path decode_path(std::span<const double> genome, const World &world);

/// Tab-separated "i x y z" rows.
void write_path(std::ostream &os, const Path &path);

double f_length(const Path &path, const World &world);
double f_fuel(const Path &path, const World &world);
double f_height(const Path &path);
double f_distance(const Path &path, const World &world);
double f_fatal(const Path &path, const World &world);
double f_eco(const Path &path, const World &world);
double f_noise(const Path &path, const World &world);

/// Energy of one segment (J).
double segment_fuel(const Point3 &from, const Point3 &to, const World &world);

/// Lognormal building-height density psi(z; mu, sigma).
double lognormal_density(double z, double mu, double sigma);

/// Property risk index of one track point.
double property_risk(double z, const World &world);

/// Noise cost of one track point (0 below the threshold level).
double noise_cost(const Point3 &p, const World &world);

struct ConstraintReport {
    std::array<double, 3> violations{}; // terrain, turning, slope
    std::size_t skipped_segments = 0;   // zero horizontal projection
};

ConstraintReport constraint_violations(const Path &path, const World &world);

enum class Case { c1 = 1, c2, c3, c4, c5, c6 };

const std::vector<std::string> &case_ids();
bool is_case_id(const std::string &id);
Case parse_case(const std::string &id);
std::string to_string(Case c);

/// Two parties (efficiency | safety), two objectives each, 88 genes in [0, 1],
/// constraint vector = (terrain, turning, slope).
MPProblem make_case(Case c, std::shared_ptr<const World> world);

} // namespace mpmo::uav
