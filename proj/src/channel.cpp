#include "uavpls/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace uavpls {

void LinkBudget::validate() const
{
    if (m_antennas < 1)
        throw std::invalid_argument("budget.m_antennas must be >= 1");
    if (!(p_tx > 0.0) || !std::isfinite(p_tx))
        throw std::invalid_argument("budget.p_tx must be positive");
    if (!(n0 > 0.0) || !std::isfinite(n0))
        throw std::invalid_argument("budget.n0 must be positive");
    if (!(n0_e > 0.0) || !std::isfinite(n0_e))
        throw std::invalid_argument("budget.n0_e must be positive");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("budget.gamma must be positive");
    if (!(altitude >= 0.0) || !std::isfinite(altitude))
        throw std::invalid_argument("budget.altitude must be non-negative");
}

double mw_from_dbm(double dbm) { return std::pow(10.0, dbm / 10.0); }

double path_loss(double d, double h, double gamma)
{
    return 1.0 + std::pow(d * d + h * h, gamma / 2.0);
}

double fejer_kernel(int m, double x)
{
    const double m_real = static_cast<double>(m);
    const double half = std::sin(x / 2.0);
    if (std::abs(half) < 1e-9) {
        // Near a multiple of 2*pi: quadratic Taylor term around the peak.
        const double y = std::remainder(x, 2.0 * std::numbers::pi);
        return m_real * (1.0 - (m_real * m_real - 1.0) * y * y / 12.0);
    }
    const double ratio = std::sin(m_real * x / 2.0) / half;
    return ratio * ratio / m_real;
}

double effective_gain(const LinkBudget& budget, const PolarPoint& p, double fading_power)
{
    const double array_gain =
        fejer_kernel(budget.m_antennas, std::numbers::pi * angle_offset(budget.theta_bar, p.theta));
    return fading_power * array_gain / path_loss(p.r, budget.altitude, budget.gamma);
}

DetrimentalEve most_detrimental_eve(std::span<const double> eve_gains)
{
    DetrimentalEve worst;
    for (std::size_t i = 0; i < eve_gains.size(); ++i) {
        if (!worst.index || eve_gains[i] > worst.gain) {
            worst.index = i;
            worst.gain = eve_gains[i];
        }
    }
    return worst;
}

}  // namespace uavpls
