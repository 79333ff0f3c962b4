#pragma once

#include <string_view>
#include <vector>

#include "uavpls/geometry.hpp"
#include "uavpls/random_stream.hpp"

namespace uavpls {

/// Small-scale fading applied to a node population.
enum class FadingModel
{
    rayleigh,  ///< |alpha|^2 ~ Exp(1), i.e. alpha ~ CN(0, 1)
    none,      ///< line-of-sight only, |alpha|^2 = 1
};

std::string_view to_string(FadingModel model);
FadingModel fading_model_from_string(std::string_view name);

/// Node locations with their fading power draws (same length).
struct NodeSet
{
    std::vector<PolarPoint> points;
    std::vector<double> fading_power;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

/// HPPP on the annular sector [r_in, r_out] x [center - w/2, center + w/2].
std::vector<PolarPoint> sample_hppp_sector(double r_in, double r_out, double ang_width,
                                           double density, RandomStream& rng,
                                           double center = 0.0);

double sample_fading_power(RandomStream& rng);

NodeSet sample_users(const ScenarioGeometry& geom, double lambda_u, RandomStream& rng,
                     FadingModel fading = FadingModel::rayleigh);

/// HPPP over the whole Eve region, drawn as the radial extension beyond l2
/// plus the two side slices.
NodeSet sample_eve_region(const ScenarioGeometry& geom, double lambda_e, RandomStream& rng,
                          FadingModel fading = FadingModel::rayleigh);

/// Keeps the nodes outside the zone. Consumes no randomness.
NodeSet thin_by_zone(const ScenarioGeometry& geom, const ProtectedZone& zone, const NodeSet& nodes);

/// HPPP on the Eve region minus the protected zone, realized by thinning.
NodeSet sample_eves(const ScenarioGeometry& geom, double lambda_e, const ProtectedZone& zone,
                    RandomStream& rng, FadingModel fading = FadingModel::rayleigh);

}  // namespace uavpls
