#include "uavpls/noma.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace uavpls {

PowerAllocation::PowerAllocation(std::vector<double> betas_sq) : betas_sq_(std::move(betas_sq))
{
    if (betas_sq_.empty())
        throw std::invalid_argument("power allocation must have at least one user");
    double sum = 0.0;
    for (std::size_t i = 0; i < betas_sq_.size(); ++i) {
        if (!(betas_sq_[i] >= 0.0))
            throw std::invalid_argument("power allocation fractions must be non-negative");
        if (i > 0 && betas_sq_[i] < betas_sq_[i - 1])
            throw std::invalid_argument(
                "power allocation must be non-decreasing from the strongest user");
        sum += betas_sq_[i];
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("power allocation fractions must sum to 1");

    prefix_.resize(betas_sq_.size() + 1, 0.0);
    std::partial_sum(betas_sq_.begin(), betas_sq_.end(), prefix_.begin() + 1);
}

double PowerAllocation::stronger_share(std::size_t k) const { return prefix_.at(k - 1); }

SecrecyTargets::SecrecyTargets(std::vector<double> rbar) : rbar_(std::move(rbar))
{
    for (double r : rbar_)
        if (!(r > 0.0) || !std::isfinite(r))
            throw std::invalid_argument("secrecy targets must be positive");
}

double SecrecyTargets::total() const { return std::accumulate(rbar_.begin(), rbar_.end(), 0.0); }

std::vector<std::size_t> order_users(std::span<const double> gains)
{
    std::vector<std::size_t> order(gains.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });
    return order;
}

namespace {

double sic_sinr(std::size_t k, double gain, const PowerAllocation& alloc, double p_tx, double noise)
{
    if (k < 1 || k > alloc.size())
        throw std::out_of_range("NOMA rank out of range");
    const double signal = p_tx * gain * alloc[k - 1];
    const double interference = k == 1 ? 0.0 : p_tx * gain * alloc.stronger_share(k);
    return signal / (interference + noise);
}

}  // namespace

double sinr_user(std::size_t k, double gain_k, const PowerAllocation& alloc, double p_tx, double n0)
{
    return sic_sinr(k, gain_k, alloc, p_tx, n0);
}

double sinr_eve(std::size_t k, double g_e, const PowerAllocation& alloc, double p_tx, double n0_e)
{
    return sic_sinr(k, g_e, alloc, p_tx, n0_e);
}

double secrecy_rate(double sinr_k, double sinr_e)
{
    return std::max(0.0, std::log2(1.0 + sinr_k) - std::log2(1.0 + sinr_e));
}

double outage_sum_rate(std::span<const double> outage_probs, const SecrecyTargets& targets)
{
    if (outage_probs.size() != targets.size())
        throw std::invalid_argument("outage_sum_rate: outage and target lists differ in length");
    double total = 0.0;
    for (std::size_t k = 0; k < targets.size(); ++k)
        total += (1.0 - outage_probs[k]) * targets[k];
    return total;
}

OmaRates oma_rates(double gain_k, double g_e, double p_tx, double n0, double n0_e, double share)
{
    if (!(share > 0.0 && share <= 1.0))
        throw std::invalid_argument("oma_rates: share must lie in (0, 1]");
    return {share * std::log2(1.0 + p_tx * gain_k / n0), share * std::log2(1.0 + p_tx * g_e / n0_e)};
}

}  // namespace uavpls
