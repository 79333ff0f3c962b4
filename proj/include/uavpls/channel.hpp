#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "uavpls/geometry.hpp"

namespace uavpls {

/// Transmitter, receiver noise and propagation parameters, all linear.
struct LinkBudget
{
    int m_antennas = 100;
    double p_tx = 10.0;         ///< [mW]
    double n0 = 3.1622776601683794e-4;    ///< user noise [mW]
    double n0_e = 3.1622776601683794e-4;  ///< Eve noise [mW]
    double gamma = 2.0;         ///< path-loss exponent
    double altitude = 10.0;     ///< hovering altitude h [m]
    double theta_bar = 0.0;     ///< beam azimuth [rad]

    /// Throws std::invalid_argument naming the first bad field.
    void validate() const;
};

double mw_from_dbm(double dbm);

/// 1 + (d^2 + h^2)^(gamma/2).
double path_loss(double d, double h, double gamma);

/// (1/M) (sin(Mx/2) / sin(x/2))^2, equal to M at multiples of 2*pi.
double fejer_kernel(int m, double x);

/// |h^H b|^2 for a node at `p`: fading * F_M(pi (theta_bar - theta)) / PL.
double effective_gain(const LinkBudget& budget, const PolarPoint& p, double fading_power);

struct DetrimentalEve
{
    std::optional<std::size_t> index;  ///< empty when there is no Eve
    double gain = 0.0;
};

/// Eve with the largest effective gain; gain 0 and no index for an empty list.
DetrimentalEve most_detrimental_eve(std::span<const double> eve_gains);

}  // namespace uavpls
