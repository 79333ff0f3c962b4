#include "uavpls/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace uavpls {

namespace {

using nlohmann::json;

// Reads optional members of one config section, rejecting unknown keys and
// reporting type errors with the dotted field name.
class Section
{
  public:
    Section(const json& doc, std::string name) : name_(std::move(name))
    {
        if (!doc.contains(name_))
            return;
        node_ = &doc.at(name_);
        if (!node_->is_object())
            throw ConfigError(name_ + ": expected an object");
    }

    template<class T>
    void read(const std::string& key, T& out)
    {
        seen_.insert(key);
        if (!node_ || !node_->contains(key))
            return;
        const json& v = node_->at(key);
        try {
            if constexpr (std::is_same_v<T, double>) {
                if (!v.is_number())
                    throw ConfigError("expected a number");
                out = v.get<double>();
                if (!std::isfinite(out))
                    throw ConfigError("must be finite");
            } else if constexpr (std::is_integral_v<T>) {
                if (!v.is_number_integer() || (std::is_unsigned_v<T> && v.get<long long>() < 0))
                    throw ConfigError(std::is_unsigned_v<T> ? "expected a non-negative integer"
                                                            : "expected an integer");
                out = v.get<T>();
            } else if constexpr (std::is_same_v<T, std::string>) {
                if (!v.is_string())
                    throw ConfigError("expected a string");
                out = v.get<std::string>();
            } else {
                if (!v.is_array())
                    throw ConfigError("expected an array of numbers");
                T items;
                for (const auto& item : v) {
                    if (!item.is_number())
                        throw ConfigError("expected an array of numbers");
                    items.push_back(item.get<typename T::value_type>());
                }
                out = std::move(items);
            }
        } catch (const ConfigError& e) {
            throw ConfigError(field(key) + ": " + e.what());
        } catch (const json::exception& e) {
            throw ConfigError(field(key) + ": " + e.what());
        }
    }

    bool has(const std::string& key) const { return node_ && node_->contains(key); }

    void reject_unknown() const
    {
        if (!node_)
            return;
        for (const auto& [key, _] : node_->items())
            if (!seen_.count(key))
                throw ConfigError("unknown field '" + field(key) + "'");
    }

    std::string field(const std::string& key) const { return name_ + "." + key; }

  private:
    std::string name_;
    const json* node_ = nullptr;
    std::set<std::string> seen_;
};

template<class Fn>
void checked(const std::string& context, Fn&& fn)
{
    try {
        fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        const std::string what = e.what();
        throw ConfigError(what.starts_with(context + ":") ? what : context + ": " + what);
    }
}

}  // namespace

LinkBudget ExperimentConfig::link_budget(double h) const
{
    LinkBudget b;
    b.m_antennas = budget.m_antennas;
    b.p_tx = mw_from_dbm(budget.p_tx_dbm);
    b.n0 = mw_from_dbm(budget.n0_dbm);
    b.n0_e = mw_from_dbm(budget.n0_e_dbm);
    b.gamma = budget.gamma;
    b.altitude = h;
    b.theta_bar = scenario.theta_bar();
    return b;
}

nlohmann::json ExperimentConfig::to_json() const
{
    json doc;
    doc["scenario"] = {{"l1", scenario.l1()},
                       {"l2", scenario.l2()},
                       {"le_max", scenario.le_max()},
                       {"delta", scenario.delta()},
                       {"delta_e_max", scenario.delta_e_max()},
                       {"theta_bar", scenario.theta_bar()}};
    doc["budget"] = {{"p_tx_dbm", budget.p_tx_dbm},
                     {"n0_dbm", budget.n0_dbm},
                     {"n0_e_dbm", budget.n0_e_dbm},
                     {"m_antennas", budget.m_antennas},
                     {"gamma", budget.gamma}};
    doc["sim"] = {{"trials", sim.trials},
                  {"seed", sim.seed},
                  {"lambda_u", sim.lambda_u},
                  {"lambda_e", sim.lambda_e},
                  {"served_ranks", {sim.served_ranks.first, sim.served_ranks.second}},
                  {"targets_bpcu", sim.targets.values()},
                  {"betas_sq", sim.alloc.values()},
                  {"user_fading", std::string(to_string(sim.user_fading))},
                  {"eve_fading", std::string(to_string(sim.eve_fading))}};
    doc["sweep"] = {{"h_list_m", sweep.h_list_m},
                    {"q_list", sweep.q_list},
                    {"grid_points", sweep.grid_points},
                    {"lambda_e_list", sweep.lambda_e_list},
                    {"fixed_reference_h_m", sweep.fixed_reference_h_m}};
    return doc;
}

ExperimentConfig parse_config(const nlohmann::json& doc)
{
    if (!doc.is_object())
        throw ConfigError("config: expected a JSON object at top level");
    for (const auto& [key, _] : doc.items())
        if (key != "scenario" && key != "budget" && key != "sim" && key != "sweep")
            throw ConfigError("unknown field '" + key + "'");

    ExperimentConfig cfg;

    Section scen(doc, "scenario");
    double l1 = cfg.scenario.l1(), l2 = cfg.scenario.l2(), le_max = cfg.scenario.le_max();
    double delta = cfg.scenario.delta(), delta_e_max = cfg.scenario.delta_e_max();
    double theta_bar = cfg.scenario.theta_bar();
    scen.read("l1", l1);
    scen.read("l2", l2);
    scen.read("le_max", le_max);
    scen.read("delta", delta);
    scen.read("delta_e_max", delta_e_max);
    scen.read("theta_bar", theta_bar);
    scen.reject_unknown();
    checked("scenario", [&] {
        cfg.scenario = ScenarioGeometry(l1, l2, le_max, delta, delta_e_max, theta_bar);
    });

    Section bud(doc, "budget");
    bud.read("p_tx_dbm", cfg.budget.p_tx_dbm);
    bud.read("n0_dbm", cfg.budget.n0_dbm);
    cfg.budget.n0_e_dbm = cfg.budget.n0_dbm;
    bud.read("n0_e_dbm", cfg.budget.n0_e_dbm);
    bud.read("m_antennas", cfg.budget.m_antennas);
    bud.read("gamma", cfg.budget.gamma);
    bud.reject_unknown();
    if (cfg.budget.m_antennas < 1)
        throw ConfigError("budget.m_antennas: must be >= 1");
    if (!(cfg.budget.gamma > 0.0))
        throw ConfigError("budget.gamma: must be positive");

    Section sim(doc, "sim");
    sim.read("trials", cfg.sim.trials);
    sim.read("seed", cfg.sim.seed);
    sim.read("lambda_u", cfg.sim.lambda_u);
    sim.read("lambda_e", cfg.sim.lambda_e);
    std::vector<std::size_t> ranks{cfg.sim.served_ranks.first, cfg.sim.served_ranks.second};
    sim.read("served_ranks", ranks);
    std::vector<double> targets = cfg.sim.targets.values();
    sim.read("targets_bpcu", targets);
    std::vector<double> betas = cfg.sim.alloc.values();
    sim.read("betas_sq", betas);
    std::string user_fading(to_string(cfg.sim.user_fading));
    std::string eve_fading(to_string(cfg.sim.eve_fading));
    sim.read("user_fading", user_fading);
    sim.read("eve_fading", eve_fading);
    sim.read("workers", cfg.sim.workers);
    sim.reject_unknown();
    if (ranks.size() != 2)
        throw ConfigError("sim.served_ranks: expected two ranks [j, i]");
    cfg.sim.served_ranks = {ranks[0], ranks[1]};
    checked("sim.targets_bpcu", [&] { cfg.sim.targets = SecrecyTargets(targets); });
    checked("sim.betas_sq", [&] { cfg.sim.alloc = PowerAllocation(betas); });
    checked("sim.user_fading", [&] { cfg.sim.user_fading = fading_model_from_string(user_fading); });
    checked("sim.eve_fading", [&] { cfg.sim.eve_fading = fading_model_from_string(eve_fading); });
    checked("sim", [&] { cfg.sim.validate(); });

    Section sw(doc, "sweep");
    sw.read("h_list_m", cfg.sweep.h_list_m);
    sw.read("q_list", cfg.sweep.q_list);
    sw.read("grid_points", cfg.sweep.grid_points);
    sw.read("lambda_e_list", cfg.sweep.lambda_e_list);
    sw.read("fixed_reference_h_m", cfg.sweep.fixed_reference_h_m);
    sw.reject_unknown();
    if (cfg.sweep.h_list_m.empty())
        throw ConfigError("sweep.h_list_m: must not be empty");
    for (double h : cfg.sweep.h_list_m)
        if (!(h >= 0.0))
            throw ConfigError("sweep.h_list_m: altitudes must be non-negative");
    for (double q : cfg.sweep.q_list)
        if (!(q >= 0.0 && q <= 1.0))
            throw ConfigError("sweep.q_list: fractions must lie in [0, 1]");
    for (double l : cfg.sweep.lambda_e_list)
        if (!(l >= 0.0))
            throw ConfigError("sweep.lambda_e_list: densities must be non-negative");
    if (cfg.sweep.grid_points < 2)
        throw ConfigError("sweep.grid_points: must be >= 2");
    if (!(cfg.sweep.fixed_reference_h_m >= 0.0))
        throw ConfigError("sweep.fixed_reference_h_m: must be non-negative");

    checked("budget", [&] { cfg.link_budget(cfg.sweep.h_list_m.front()).validate(); });
    return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in, nullptr, true, true);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config '" + path.string() + "': " + e.what());
    }
    return parse_config(doc);
}

}  // namespace uavpls
