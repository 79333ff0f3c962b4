#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "uavpls/channel.hpp"
#include "uavpls/engine.hpp"
#include "uavpls/geometry.hpp"

namespace uavpls {

/// Raised for malformed or invalid experiment configs; the message names the field.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct BudgetConfig
{
    double p_tx_dbm = 10.0;
    double n0_dbm = -35.0;
    double n0_e_dbm = -35.0;
    int m_antennas = 100;
    double gamma = 2.0;
};

struct SweepConfig
{
    std::vector<double> h_list_m{10.0, 25.0, 50.0, 100.0, 150.0};
    std::vector<double> q_list{0.0, 0.2, 0.5};
    std::size_t grid_points = 64;
    std::vector<double> lambda_e_list{0.1, 1.0};
    double fixed_reference_h_m = 10.0;
};

/// Everything needed to reproduce a run. Omitted fields take the defaults
/// of the reference scenario (stadium-like sector, 100-element array).
struct ExperimentConfig
{
    ScenarioGeometry scenario{25.0, 100.0, 150.0, 0.02, 0.04, 0.0};
    BudgetConfig budget;
    SimConfig sim;
    SweepConfig sweep;

    /// Linear link budget at altitude h.
    LinkBudget link_budget(double h) const;
    nlohmann::json to_json() const;
};

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config(const std::filesystem::path& path);

}  // namespace uavpls
