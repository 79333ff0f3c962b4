#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "uavpls/channel.hpp"
#include "uavpls/geometry.hpp"
#include "uavpls/noma.hpp"
#include "uavpls/sampling.hpp"

namespace uavpls {

/// Two served users per beam: strong (NOMA rank 1) and weak (NOMA rank 2).
inline constexpr std::size_t kServedUsers = 2;

struct SimConfig
{
    std::uint64_t trials = 10000;
    std::pair<std::size_t, std::size_t> served_ranks{1, 20};  ///< 1-based ranks (j, i)
    SecrecyTargets targets{{4.0, 1.0}};
    PowerAllocation alloc{{0.25, 0.75}};
    double lambda_u = 1.0;
    double lambda_e = 0.1;
    std::uint64_t seed = 1;
    FadingModel user_fading = FadingModel::rayleigh;
    FadingModel eve_fading = FadingModel::none;
    unsigned workers = 0;  ///< 0 selects the hardware concurrency
    unsigned max_resamples = 1000;

    void validate() const;
};

struct EveLocation
{
    double rel_angle = 0.0;    ///< |theta - theta_bar| [rad]
    double pl_distance = 0.0;  ///< sqrt(d^2 + h^2) [m]
};

struct RealizationOutcome
{
    std::array<double, kServedUsers> secrecy_rates{};
    std::array<double, kServedUsers> oma_secrecy_rates{};
    std::optional<EveLocation> eve;  ///< most detrimental Eve, absent when none survive
    std::size_t eve_count = 0;
    unsigned resamples = 0;  ///< user draws rejected for having too few users
};

struct SweepResult
{
    double h = 0.0;
    double q = 0.0;
    double delta_e = 0.0;
    double l_e = 0.0;
    std::array<double, kServedUsers> outage{};
    std::array<double, kServedUsers> outage_oma{};
    double r_noma = 0.0;
    double r_oma = 0.0;
    double r_noma_se = 0.0;  ///< standard error of r_noma
    double r_oma_se = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t resamples = 0;
};

RealizationOutcome run_realization(const ScenarioGeometry& geom, const LinkBudget& budget,
                                   const ProtectedZone& zone, const SimConfig& cfg,
                                   std::uint64_t trial_id);

/**
 * Evaluates several zones on the same realizations.
 *
 * Each trial's users and unthinned Eves are drawn once and every zone thins
 * that same Eve set, so the result for a zone is bit-identical to calling
 * estimate_outage_and_rates() with that zone alone.
 */
std::vector<SweepResult> evaluate_zones(const ScenarioGeometry& geom, const LinkBudget& budget,
                                        std::span<const ProtectedZone> zones,
                                        const SimConfig& cfg);

SweepResult estimate_outage_and_rates(const ScenarioGeometry& geom, const LinkBudget& budget,
                                      const ProtectedZone& zone, const SimConfig& cfg);

enum class Objective
{
    noma,
    oma,
};

struct ZoneOptimum
{
    std::size_t best_index = 0;
    std::vector<SweepResult> curve;  ///< one entry per grid angle, ascending

    const SweepResult& best() const { return curve.at(best_index); }
    double delta_e() const { return best().delta_e; }
    double l_e() const { return best().l_e; }
};

/// Uniform grid over [delta_e_min(q), delta_e_max], both ends included.
std::vector<double> zone_angle_grid(const ScenarioGeometry& geom, double q, std::size_t grid_points);

/// Grid search for the zone shape maximizing the outage sum secrecy rate.
/// Ties go to the smaller angle.
ZoneOptimum optimize_zone(const ScenarioGeometry& geom, const LinkBudget& budget, double q,
                          const SimConfig& cfg, std::size_t grid_points,
                          Objective objective = Objective::noma);

enum class SweepMode
{
    optimized,    ///< shape re-optimized per altitude
    fixed_shape,  ///< shape optimized once at the reference altitude
    oma,          ///< shape optimized for the OMA rate
};

std::string_view to_string(SweepMode mode);

/// Results ordered altitude-major, then by q in the order given.
std::vector<SweepResult> altitude_sweep(const ScenarioGeometry& geom,
                                        const LinkBudget& budget_template,
                                        std::span<const double> q_list, const SimConfig& cfg,
                                        std::span<const double> h_list, SweepMode mode,
                                        std::size_t grid_points, double fixed_reference_h = 10.0);

struct EveLocationStats
{
    double h = 0.0;
    double lambda_e = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t trials_without_eve = 0;
    std::vector<double> rel_angles;    ///< sorted ascending
    std::vector<double> pl_distances;  ///< sorted ascending

    /// Fraction of Eve-bearing trials whose worst Eve sits beyond `angle`.
    double fraction_angle_above(double angle) const;
    double median_pl_distance() const;
};

/// Most-detrimental-Eve location over the full Eve region (no zone).
std::vector<EveLocationStats> eve_location_statistics(const ScenarioGeometry& geom,
                                                      const LinkBudget& budget,
                                                      const SimConfig& cfg,
                                                      std::span<const double> h_list,
                                                      std::span<const double> lambda_e_list);

struct CdfPoint
{
    double value = 0.0;
    double cdf = 0.0;
};

/// Step points of the empirical CDF of sorted samples (duplicates merged).
std::vector<CdfPoint> empirical_cdf(std::span<const double> sorted);

}  // namespace uavpls
