#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace uavpls {

/// Power fractions beta_k^2, index 0 = strongest user (smallest share).
class PowerAllocation
{
  public:
    explicit PowerAllocation(std::vector<double> betas_sq);

    std::size_t size() const { return betas_sq_.size(); }
    double operator[](std::size_t i) const { return betas_sq_[i]; }
    const std::vector<double>& values() const { return betas_sq_; }

    /// Sum of beta_l^2 over ranks strictly stronger than 1-based rank k.
    double stronger_share(std::size_t k) const;

  private:
    std::vector<double> betas_sq_;
    std::vector<double> prefix_;
};

/// Per-user secrecy-rate targets [bits per channel use], all positive.
class SecrecyTargets
{
  public:
    explicit SecrecyTargets(std::vector<double> rbar);

    std::size_t size() const { return rbar_.size(); }
    double operator[](std::size_t i) const { return rbar_[i]; }
    const std::vector<double>& values() const { return rbar_; }
    double total() const;

  private:
    std::vector<double> rbar_;
};

/// Indices sorting gains best-first; ties keep the original order.
std::vector<std::size_t> order_users(std::span<const double> gains);

/// SINR of 1-based NOMA rank k after SIC.
double sinr_user(std::size_t k, double gain_k, const PowerAllocation& alloc, double p_tx, double n0);

/// SINR at the most detrimental Eve when decoding the rank-k message.
double sinr_eve(std::size_t k, double g_e, const PowerAllocation& alloc, double p_tx, double n0_e);

/// [log2(1 + sinr_k) - log2(1 + sinr_e)]^+
double secrecy_rate(double sinr_k, double sinr_e);

/// Sum over users of (1 - P_k^o) * Rbar_k.
double outage_sum_rate(std::span<const double> outage_probs, const SecrecyTargets& targets);

struct OmaRates
{
    double user = 0.0;
    double eve = 0.0;
};

/// Time-division baseline: one slot of fraction `share` at full power.
OmaRates oma_rates(double gain_k, double g_e, double p_tx, double n0, double n0_e, double share);

}  // namespace uavpls
