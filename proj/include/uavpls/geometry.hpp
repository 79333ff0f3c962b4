#pragma once

#include <numbers>

namespace uavpls {

/// Horizontal position of a ground node relative to the UAV ground projection.
struct PolarPoint
{
    double r = 0.0;      ///< horizontal distance [m]
    double theta = 0.0;  ///< azimuth [rad], normalized to (-pi, pi]
};

/// Wraps an angle into (-pi, pi].
double normalize_angle(double theta);

/// Signed angular offset of `theta` from `axis`, wrapped into (-pi, pi].
inline double angle_offset(double theta, double axis) { return normalize_angle(theta - axis); }

/**
 * User and eavesdropper regions seen from the UAV ground projection.
 *
 * Both are annular sectors sharing the inner radius l1 and the symmetry axis
 * theta_bar. The user sector spans [l1, l2] x delta; the Eve region is the
 * larger sector [l1, le_max] x delta_e_max with the user sector removed.
 */
class ScenarioGeometry
{
  public:
    ScenarioGeometry(double l1, double l2, double le_max, double delta, double delta_e_max,
                     double theta_bar = 0.0);

    double l1() const { return l1_; }
    double l2() const { return l2_; }
    double le_max() const { return le_max_; }
    double delta() const { return delta_; }
    double delta_e_max() const { return delta_e_max_; }
    double theta_bar() const { return theta_bar_; }

    bool in_user_region(const PolarPoint& p) const;
    bool in_eve_region(const PolarPoint& p) const;

    /// Twice the Eve region area; shows up in every zone-shape formula.
    double eve_area_term() const;

  private:
    double l1_;
    double l2_;
    double le_max_;
    double delta_;
    double delta_e_max_;
    double theta_bar_;
};

/// Eve-free zone of fixed area fraction q, symmetric about the beam axis.
struct ProtectedZone
{
    double q = 0.0;        ///< fraction of the Eve region area
    double delta_e = 0.0;  ///< angular width [rad]
    double l_e = 0.0;      ///< outer radius [m]

    static ProtectedZone none() { return {}; }
    bool empty() const { return q <= 0.0; }
};

double eve_region_area(const ScenarioGeometry& geom);

/// Smallest zone angle for fraction q, i.e. the angle at which the zone
/// radius reaches le_max.
double delta_e_min(const ScenarioGeometry& geom, double q);

/// Closed-form minimum angle assuming the zone stays inside the user angular
/// span (delta_e <= delta). Only meaningful when the result is <= delta.
double delta_e_min_narrow(const ScenarioGeometry& geom, double q);

/// Zone radius keeping the zone area at q times the Eve region area.
/// Throws std::domain_error if delta_e lies outside [delta_e_min, delta_e_max].
double l_e_for_angle(const ScenarioGeometry& geom, double q, double delta_e);

/// Builds the constant-area zone for a given angle.
ProtectedZone make_zone(const ScenarioGeometry& geom, double q, double delta_e);

/// Zone for q = 1: the whole Eve region.
ProtectedZone full_zone(const ScenarioGeometry& geom);

double zone_area(const ScenarioGeometry& geom, const ProtectedZone& zone);

bool zone_contains(const ScenarioGeometry& geom, const ProtectedZone& zone, const PolarPoint& p);

constexpr double deg_from_rad(double rad) { return rad * 180.0 / std::numbers::pi; }
constexpr double rad_from_deg(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace uavpls
