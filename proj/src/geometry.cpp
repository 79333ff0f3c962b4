#include "uavpls/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace uavpls {

namespace {

constexpr double kAngleSlack = 1e-12;

double sq(double x) { return x * x; }

}  // namespace

double normalize_angle(double theta)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double wrapped = std::remainder(theta, two_pi);
    if (wrapped <= -std::numbers::pi)
        wrapped += two_pi;
    return wrapped;
}

ScenarioGeometry::ScenarioGeometry(double l1, double l2, double le_max, double delta,
                                   double delta_e_max, double theta_bar)
    : l1_(l1), l2_(l2), le_max_(le_max), delta_(delta), delta_e_max_(delta_e_max),
      theta_bar_(normalize_angle(theta_bar))
{
    if (!(l1 > 0.0 && l1 < l2))
        throw std::invalid_argument("scenario: require 0 < l1 < l2");
    if (!(l2 <= le_max))
        throw std::invalid_argument("scenario: require l2 <= le_max");
    if (!(delta > 0.0 && delta <= delta_e_max))
        throw std::invalid_argument("scenario: require 0 < delta <= delta_e_max");
    if (!(delta_e_max < 2.0 * std::numbers::pi))
        throw std::invalid_argument("scenario: delta_e_max must be below 2*pi");
    if (!std::isfinite(theta_bar))
        throw std::invalid_argument("scenario: theta_bar must be finite");
}

bool ScenarioGeometry::in_user_region(const PolarPoint& p) const
{
    const double off = std::abs(angle_offset(p.theta, theta_bar_));
    return off <= delta_ / 2 && p.r >= l1_ && p.r <= l2_;
}

bool ScenarioGeometry::in_eve_region(const PolarPoint& p) const
{
    const double off = std::abs(angle_offset(p.theta, theta_bar_));
    if (off > delta_e_max_ / 2 || p.r < l1_ || p.r > le_max_)
        return false;
    return !in_user_region(p);
}

double ScenarioGeometry::eve_area_term() const
{
    return (sq(le_max_) - sq(l1_)) * delta_e_max_ - (sq(l2_) - sq(l1_)) * delta_;
}

double eve_region_area(const ScenarioGeometry& geom) { return geom.eve_area_term() / 2; }

double delta_e_min_narrow(const ScenarioGeometry& geom, double q)
{
    const double radial = sq(geom.le_max()) - sq(geom.l2());
    if (radial <= 0.0)
        return q > 0.0 ? geom.delta_e_max() : 0.0;
    return q * geom.eve_area_term() / radial;
}

double delta_e_min(const ScenarioGeometry& geom, double q)
{
    if (!(q >= 0.0 && q <= 1.0))
        throw std::domain_error("delta_e_min: q must lie in [0, 1]");
    const double narrow = delta_e_min_narrow(geom, q);
    if (narrow <= geom.delta())
        return narrow;
    // Zone wider than the user span: solve the wide-zone relation for l_e = le_max.
    const double user_term = (sq(geom.l2()) - sq(geom.l1())) * geom.delta();
    const double wide = (q * geom.eve_area_term() + user_term) / (sq(geom.le_max()) - sq(geom.l1()));
    return std::min(wide, geom.delta_e_max());
}

double l_e_for_angle(const ScenarioGeometry& geom, double q, double delta_e)
{
    const double lo = delta_e_min(geom, q);
    const double hi = geom.delta_e_max();
    if (delta_e < lo - kAngleSlack * std::max(1.0, lo) || delta_e > hi * (1.0 + kAngleSlack)) {
        std::ostringstream msg;
        msg << "l_e_for_angle: delta_e=" << delta_e << " outside [" << lo << ", " << hi
            << "] for q=" << q;
        throw std::domain_error(msg.str());
    }

    const double l1_sq = sq(geom.l1());
    const double l2_sq = sq(geom.l2());
    const double area_term = q * geom.eve_area_term();
    double le_sq = 0.0;

    if (delta_e <= geom.delta()) {
        if (q == 0.0)
            return geom.l2();
        le_sq = l2_sq + area_term / delta_e;
    } else {
        // Zone overhangs the user span; the overhang reaches down to l1.
        const double user_term = (l2_sq - l1_sq) * geom.delta();
        le_sq = l1_sq + (area_term + user_term) / delta_e;
        if (le_sq < l2_sq)
            le_sq = l1_sq + area_term / (delta_e - geom.delta());
    }
    return std::clamp(std::sqrt(le_sq), geom.l1(), geom.le_max());
}

ProtectedZone make_zone(const ScenarioGeometry& geom, double q, double delta_e)
{
    if (q <= 0.0)
        return ProtectedZone::none();
    return {q, delta_e, l_e_for_angle(geom, q, delta_e)};
}

ProtectedZone full_zone(const ScenarioGeometry& geom)
{
    return {1.0, geom.delta_e_max(), geom.le_max()};
}

double zone_area(const ScenarioGeometry& geom, const ProtectedZone& zone)
{
    if (zone.empty())
        return 0.0;
    const double le_sq = sq(zone.l_e);
    if (zone.delta_e <= geom.delta())
        return std::max(0.0, le_sq - sq(geom.l2())) * zone.delta_e / 2;
    const double overhang = (le_sq - sq(geom.l1())) * (zone.delta_e - geom.delta()) / 2;
    if (zone.l_e >= geom.l2())
        return (le_sq - sq(geom.l2())) * geom.delta() / 2 + overhang;
    return overhang;
}

bool zone_contains(const ScenarioGeometry& geom, const ProtectedZone& zone, const PolarPoint& p)
{
    if (zone.empty())
        return false;
    const double off = std::abs(angle_offset(p.theta, geom.theta_bar()));
    if (off > zone.delta_e / 2 || p.r > zone.l_e)
        return false;
    const double r_floor = off > geom.delta() / 2 ? geom.l1() : geom.l2();
    return p.r >= r_floor;
}

}  // namespace uavpls
