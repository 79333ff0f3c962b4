#include "uavpls/sampling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace uavpls {

namespace {

void attach_fading(NodeSet& nodes, FadingModel fading, RandomStream& rng)
{
    nodes.fading_power.reserve(nodes.points.size());
    for (std::size_t i = 0; i < nodes.points.size(); ++i)
        nodes.fading_power.push_back(fading == FadingModel::rayleigh ? sample_fading_power(rng)
                                                                     : 1.0);
}

}  // namespace

std::string_view to_string(FadingModel model)
{
    switch (model) {
    case FadingModel::rayleigh:
        return "rayleigh";
    case FadingModel::none:
        return "none";
    }
    return "unknown";
}

FadingModel fading_model_from_string(std::string_view name)
{
    if (name == "rayleigh")
        return FadingModel::rayleigh;
    if (name == "none")
        return FadingModel::none;
    throw std::invalid_argument("unknown fading model '" + std::string(name) +
                                "' (expected \"rayleigh\" or \"none\")");
}

std::vector<PolarPoint> sample_hppp_sector(double r_in, double r_out, double ang_width,
                                           double density, RandomStream& rng, double center)
{
    if (!(r_in >= 0.0 && r_in < r_out))
        throw std::invalid_argument("sample_hppp_sector: require 0 <= r_in < r_out");
    if (!(ang_width > 0.0))
        throw std::invalid_argument("sample_hppp_sector: ang_width must be positive");
    if (!(density >= 0.0))
        throw std::invalid_argument("sample_hppp_sector: density must be non-negative");

    const double ring = r_out * r_out - r_in * r_in;
    const auto count = rng.poisson(density * ring * ang_width / 2);

    std::vector<PolarPoint> points;
    points.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const double r = std::sqrt(rng.uniform() * ring + r_in * r_in);
        const double theta = center + (rng.uniform() - 0.5) * ang_width;
        points.push_back({r, normalize_angle(theta)});
    }
    return points;
}

double sample_fading_power(RandomStream& rng) { return rng.exponential(); }

NodeSet sample_users(const ScenarioGeometry& geom, double lambda_u, RandomStream& rng,
                     FadingModel fading)
{
    NodeSet users;
    users.points =
        sample_hppp_sector(geom.l1(), geom.l2(), geom.delta(), lambda_u, rng, geom.theta_bar());
    attach_fading(users, fading, rng);
    return users;
}

NodeSet sample_eve_region(const ScenarioGeometry& geom, double lambda_e, RandomStream& rng,
                          FadingModel fading)
{
    NodeSet eves;
    if (geom.le_max() > geom.l2()) {
        eves.points = sample_hppp_sector(geom.l2(), geom.le_max(), geom.delta(), lambda_e, rng,
                                         geom.theta_bar());
    }

    // Both side slices are drawn as one sector of their combined width, then
    // each half is pushed outward past the user span.
    const double slice_width = geom.delta_e_max() - geom.delta();
    if (slice_width > 0.0) {
        const auto slices =
            sample_hppp_sector(geom.l1(), geom.le_max(), slice_width, lambda_e, rng, 0.0);
        for (const auto& p : slices) {
            const double offset = p.theta >= 0.0 ? geom.delta() / 2 + p.theta
                                                 : -geom.delta() / 2 + p.theta;
            eves.points.push_back({p.r, normalize_angle(geom.theta_bar() + offset)});
        }
    }
    attach_fading(eves, fading, rng);
    return eves;
}

NodeSet thin_by_zone(const ScenarioGeometry& geom, const ProtectedZone& zone, const NodeSet& nodes)
{
    NodeSet kept;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (zone_contains(geom, zone, nodes.points[i]))
            continue;
        kept.points.push_back(nodes.points[i]);
        kept.fading_power.push_back(nodes.fading_power[i]);
    }
    return kept;
}

NodeSet sample_eves(const ScenarioGeometry& geom, double lambda_e, const ProtectedZone& zone,
                    RandomStream& rng, FadingModel fading)
{
    return thin_by_zone(geom, zone, sample_eve_region(geom, lambda_e, rng, fading));
}

}  // namespace uavpls
