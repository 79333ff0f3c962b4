#include "uavpls/engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

namespace uavpls {

namespace {

// Stream layout under RandomStream(seed, trial): child 0 draws the Eve
// region, child 1 + attempt draws the users.
constexpr std::uint64_t kEveChild = 0;
constexpr std::uint64_t kUserChildBase = 1;

constexpr std::uint8_t kNomaOk0 = 1u << 0;
constexpr std::uint8_t kNomaOk1 = 1u << 1;
constexpr std::uint8_t kOmaOk0 = 1u << 2;
constexpr std::uint8_t kOmaOk1 = 1u << 3;

unsigned resolve_workers(unsigned requested, std::uint64_t trials)
{
    unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::uint64_t>(n, std::max<std::uint64_t>(trials, 1)));
}

// Runs fn(trial) for every trial in [0, trials). Each trial writes only its
// own output slot, so results do not depend on the partition.
template<class Fn>
void for_each_trial(std::uint64_t trials, unsigned workers, Fn&& fn)
{
    const unsigned n = resolve_workers(workers, trials);
    if (n <= 1) {
        for (std::uint64_t t = 0; t < trials; ++t)
            fn(t);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) {
        pool.emplace_back([&, w] {
            try {
                const std::uint64_t begin = trials * w / n;
                const std::uint64_t end = trials * (w + 1) / n;
                for (std::uint64_t t = begin; t < end; ++t)
                    fn(t);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

struct TrialDraw
{
    std::array<double, kServedUsers> served_gains{};
    NodeSet eves;
    std::vector<double> eve_gains;
    unsigned resamples = 0;
};

TrialDraw draw_trial(const ScenarioGeometry& geom, const LinkBudget& budget, const SimConfig& cfg,
                     std::uint64_t trial_id)
{
    const RandomStream trial_stream(cfg.seed, trial_id);
    TrialDraw draw;

    const std::size_t need = cfg.served_ranks.second;
    NodeSet users;
    for (;;) {
        auto stream = trial_stream.child(kUserChildBase + draw.resamples);
        users = sample_users(geom, cfg.lambda_u, stream, cfg.user_fading);
        if (users.size() >= need)
            break;
        if (++draw.resamples > cfg.max_resamples)
            throw std::runtime_error("trial " + std::to_string(trial_id) + ": fewer than " +
                                     std::to_string(need) + " users after " +
                                     std::to_string(cfg.max_resamples) + " resamples");
    }

    std::vector<double> gains(users.size());
    for (std::size_t u = 0; u < users.size(); ++u)
        gains[u] = effective_gain(budget, users.points[u], users.fading_power[u]);
    const auto order = order_users(gains);
    draw.served_gains = {gains[order[cfg.served_ranks.first - 1]],
                         gains[order[cfg.served_ranks.second - 1]]};

    auto eve_stream = trial_stream.child(kEveChild);
    draw.eves = sample_eve_region(geom, cfg.lambda_e, eve_stream, cfg.eve_fading);
    draw.eve_gains.resize(draw.eves.size());
    for (std::size_t e = 0; e < draw.eves.size(); ++e)
        draw.eve_gains[e] = effective_gain(budget, draw.eves.points[e], draw.eves.fading_power[e]);
    return draw;
}

struct ZoneEval
{
    DetrimentalEve worst;
    std::size_t survivors = 0;
};

ZoneEval worst_surviving_eve(const ScenarioGeometry& geom, const ProtectedZone& zone,
                             const TrialDraw& draw)
{
    ZoneEval out;
    for (std::size_t e = 0; e < draw.eves.size(); ++e) {
        if (zone_contains(geom, zone, draw.eves.points[e]))
            continue;
        ++out.survivors;
        if (!out.worst.index || draw.eve_gains[e] > out.worst.gain)
            out.worst = {e, draw.eve_gains[e]};
    }
    return out;
}

struct Rates
{
    std::array<double, kServedUsers> noma{};
    std::array<double, kServedUsers> oma{};
};

Rates secrecy_rates(const LinkBudget& budget, const SimConfig& cfg,
                    const std::array<double, kServedUsers>& served_gains, double g_e)
{
    Rates rates;
    const double share = 1.0 / static_cast<double>(kServedUsers);
    for (std::size_t k = 1; k <= kServedUsers; ++k) {
        const double g = served_gains[k - 1];
        rates.noma[k - 1] = secrecy_rate(sinr_user(k, g, cfg.alloc, budget.p_tx, budget.n0),
                                         sinr_eve(k, g_e, cfg.alloc, budget.p_tx, budget.n0_e));
        const auto oma = oma_rates(g, g_e, budget.p_tx, budget.n0, budget.n0_e, share);
        rates.oma[k - 1] = std::max(0.0, oma.user - oma.eve);
    }
    return rates;
}

std::uint8_t success_mask(const Rates& rates, const SecrecyTargets& targets)
{
    std::uint8_t mask = 0;
    // Outage is the strict event C_k < Rbar_k.
    if (!(rates.noma[0] < targets[0]))
        mask |= kNomaOk0;
    if (!(rates.noma[1] < targets[1]))
        mask |= kNomaOk1;
    if (!(rates.oma[0] < targets[0]))
        mask |= kOmaOk0;
    if (!(rates.oma[1] < targets[1]))
        mask |= kOmaOk1;
    return mask;
}

double standard_error(double sum, double sum_sq, std::uint64_t n)
{
    if (n < 2)
        return 0.0;
    const double nn = static_cast<double>(n);
    const double var = std::max(0.0, (sum_sq - sum * sum / nn) / (nn - 1.0));
    return std::sqrt(var / nn);
}

}  // namespace

void SimConfig::validate() const
{
    if (trials < 1)
        throw std::invalid_argument("sim.trials must be >= 1");
    if (!(served_ranks.first >= 1 && served_ranks.first < served_ranks.second))
        throw std::invalid_argument("sim.served_ranks must satisfy 1 <= j < i");
    if (targets.size() != kServedUsers)
        throw std::invalid_argument("sim.targets_bpcu must list one target per served user (2)");
    if (alloc.size() != kServedUsers)
        throw std::invalid_argument("sim.betas_sq must list one fraction per served user (2)");
    if (!(lambda_u > 0.0) || !std::isfinite(lambda_u))
        throw std::invalid_argument("sim.lambda_u must be positive");
    if (!(lambda_e >= 0.0) || !std::isfinite(lambda_e))
        throw std::invalid_argument("sim.lambda_e must be non-negative");
}

RealizationOutcome run_realization(const ScenarioGeometry& geom, const LinkBudget& budget,
                                   const ProtectedZone& zone, const SimConfig& cfg,
                                   std::uint64_t trial_id)
{
    const TrialDraw draw = draw_trial(geom, budget, cfg, trial_id);
    const ZoneEval eval = worst_surviving_eve(geom, zone, draw);
    const Rates rates = secrecy_rates(budget, cfg, draw.served_gains, eval.worst.gain);

    RealizationOutcome out;
    out.secrecy_rates = rates.noma;
    out.oma_secrecy_rates = rates.oma;
    out.eve_count = eval.survivors;
    out.resamples = draw.resamples;
    if (eval.worst.index) {
        const auto& p = draw.eves.points[*eval.worst.index];
        out.eve = EveLocation{std::abs(angle_offset(p.theta, geom.theta_bar())),
                              std::hypot(p.r, budget.altitude)};
    }
    return out;
}

std::vector<SweepResult> evaluate_zones(const ScenarioGeometry& geom, const LinkBudget& budget,
                                        std::span<const ProtectedZone> zones,
                                        const SimConfig& cfg)
{
    cfg.validate();
    budget.validate();
    const std::size_t nz = zones.size();
    const std::uint64_t trials = cfg.trials;

    std::vector<std::uint8_t> masks(trials * nz);
    std::vector<unsigned> resamples(trials);
    for_each_trial(trials, cfg.workers, [&](std::uint64_t t) {
        const TrialDraw draw = draw_trial(geom, budget, cfg, t);
        resamples[t] = draw.resamples;
        for (std::size_t z = 0; z < nz; ++z) {
            const ZoneEval eval = worst_surviving_eve(geom, zones[z], draw);
            const Rates rates = secrecy_rates(budget, cfg, draw.served_gains, eval.worst.gain);
            masks[t * nz + z] = success_mask(rates, cfg.targets);
        }
    });

    std::uint64_t total_resamples = 0;
    for (unsigned r : resamples)
        total_resamples += r;

    std::vector<SweepResult> results(nz);
    for (std::size_t z = 0; z < nz; ++z) {
        std::array<std::uint64_t, 4> ok{};
        double noma_sum = 0.0, noma_sq = 0.0, oma_sum = 0.0, oma_sq = 0.0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            const std::uint8_t m = masks[t * nz + z];
            for (unsigned bit = 0; bit < 4; ++bit)
                ok[bit] += (m >> bit) & 1u;
            const double noma_score = ((m & kNomaOk0) ? cfg.targets[0] : 0.0) +
                                      ((m & kNomaOk1) ? cfg.targets[1] : 0.0);
            const double oma_score = ((m & kOmaOk0) ? cfg.targets[0] : 0.0) +
                                     ((m & kOmaOk1) ? cfg.targets[1] : 0.0);
            noma_sum += noma_score;
            noma_sq += noma_score * noma_score;
            oma_sum += oma_score;
            oma_sq += oma_score * oma_score;
        }

        SweepResult& r = results[z];
        const double n = static_cast<double>(trials);
        r.h = budget.altitude;
        r.q = zones[z].q;
        r.delta_e = zones[z].delta_e;
        r.l_e = zones[z].l_e;
        for (std::size_t k = 0; k < kServedUsers; ++k) {
            r.outage[k] = 1.0 - static_cast<double>(ok[k]) / n;
            r.outage_oma[k] = 1.0 - static_cast<double>(ok[2 + k]) / n;
        }
        r.r_noma = outage_sum_rate(r.outage, cfg.targets);
        r.r_oma = outage_sum_rate(r.outage_oma, cfg.targets);
        r.r_noma_se = standard_error(noma_sum, noma_sq, trials);
        r.r_oma_se = standard_error(oma_sum, oma_sq, trials);
        r.trials = trials;
        r.seed = cfg.seed;
        r.resamples = total_resamples;
    }
    return results;
}

SweepResult estimate_outage_and_rates(const ScenarioGeometry& geom, const LinkBudget& budget,
                                      const ProtectedZone& zone, const SimConfig& cfg)
{
    return evaluate_zones(geom, budget, std::span(&zone, 1), cfg).front();
}

std::vector<double> zone_angle_grid(const ScenarioGeometry& geom, double q, std::size_t grid_points)
{
    if (grid_points < 2)
        throw std::invalid_argument("zone grid needs at least 2 points");
    const double lo = delta_e_min(geom, q);
    const double hi = geom.delta_e_max();
    std::vector<double> grid(grid_points);
    for (std::size_t g = 0; g < grid_points; ++g)
        grid[g] = lo + (hi - lo) * static_cast<double>(g) / static_cast<double>(grid_points - 1);
    grid.back() = hi;
    return grid;
}

ZoneOptimum optimize_zone(const ScenarioGeometry& geom, const LinkBudget& budget, double q,
                          const SimConfig& cfg, std::size_t grid_points, Objective objective)
{
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("optimize_zone: q must lie in (0, 1)");
    const auto grid = zone_angle_grid(geom, q, grid_points);
    std::vector<ProtectedZone> zones;
    zones.reserve(grid.size());
    for (double angle : grid)
        zones.push_back(make_zone(geom, q, angle));

    ZoneOptimum opt;
    opt.curve = evaluate_zones(geom, budget, zones, cfg);
    const auto score = [&](const SweepResult& r) {
        return objective == Objective::noma ? r.r_noma : r.r_oma;
    };
    for (std::size_t g = 1; g < opt.curve.size(); ++g)
        if (score(opt.curve[g]) > score(opt.curve[opt.best_index]))
            opt.best_index = g;
    return opt;
}

std::string_view to_string(SweepMode mode)
{
    switch (mode) {
    case SweepMode::optimized:
        return "optimized";
    case SweepMode::fixed_shape:
        return "fixed-shape";
    case SweepMode::oma:
        return "oma";
    }
    return "unknown";
}

std::vector<SweepResult> altitude_sweep(const ScenarioGeometry& geom,
                                        const LinkBudget& budget_template,
                                        std::span<const double> q_list, const SimConfig& cfg,
                                        std::span<const double> h_list, SweepMode mode,
                                        std::size_t grid_points, double fixed_reference_h)
{
    if (h_list.empty())
        throw std::invalid_argument("altitude_sweep: h_list must not be empty");
    for (double q : q_list)
        if (!(q >= 0.0 && q <= 1.0))
            throw std::invalid_argument("altitude_sweep: q values must lie in [0, 1]");

    const auto at_altitude = [&](double h) {
        LinkBudget b = budget_template;
        b.altitude = h;
        return b;
    };

    // Shapes held constant across altitudes in fixed-shape mode.
    std::vector<ProtectedZone> fixed(q_list.size());
    if (mode == SweepMode::fixed_shape) {
        for (std::size_t i = 0; i < q_list.size(); ++i) {
            const double q = q_list[i];
            if (q > 0.0 && q < 1.0) {
                const auto opt =
                    optimize_zone(geom, at_altitude(fixed_reference_h), q, cfg, grid_points);
                fixed[i] = make_zone(geom, q, opt.delta_e());
            }
        }
    }

    std::vector<SweepResult> results;
    results.reserve(h_list.size() * q_list.size());
    for (double h : h_list) {
        const LinkBudget budget = at_altitude(h);
        for (std::size_t i = 0; i < q_list.size(); ++i) {
            const double q = q_list[i];
            if (q <= 0.0) {
                results.push_back(estimate_outage_and_rates(geom, budget, ProtectedZone::none(), cfg));
            } else if (q >= 1.0) {
                results.push_back(estimate_outage_and_rates(geom, budget, full_zone(geom), cfg));
            } else if (mode == SweepMode::fixed_shape) {
                results.push_back(estimate_outage_and_rates(geom, budget, fixed[i], cfg));
            } else {
                const auto objective = mode == SweepMode::oma ? Objective::oma : Objective::noma;
                results.push_back(
                    optimize_zone(geom, budget, q, cfg, grid_points, objective).best());
            }
        }
    }
    return results;
}

double EveLocationStats::fraction_angle_above(double angle) const
{
    if (rel_angles.empty())
        return 0.0;
    const auto above = rel_angles.end() - std::upper_bound(rel_angles.begin(), rel_angles.end(), angle);
    return static_cast<double>(above) / static_cast<double>(rel_angles.size());
}

double EveLocationStats::median_pl_distance() const
{
    if (pl_distances.empty())
        return 0.0;
    const std::size_t n = pl_distances.size();
    return n % 2 == 1 ? pl_distances[n / 2] : 0.5 * (pl_distances[n / 2 - 1] + pl_distances[n / 2]);
}

std::vector<EveLocationStats> eve_location_statistics(const ScenarioGeometry& geom,
                                                      const LinkBudget& budget,
                                                      const SimConfig& cfg,
                                                      std::span<const double> h_list,
                                                      std::span<const double> lambda_e_list)
{
    cfg.validate();
    std::vector<EveLocationStats> all;
    for (double h : h_list) {
        LinkBudget b = budget;
        b.altitude = h;
        b.validate();
        for (double lambda_e : lambda_e_list) {
            SimConfig c = cfg;
            c.lambda_e = lambda_e;
            c.validate();

            std::vector<std::optional<EveLocation>> worst(c.trials);
            for_each_trial(c.trials, c.workers, [&](std::uint64_t t) {
                auto stream = RandomStream(c.seed, t).child(kEveChild);
                const NodeSet eves = sample_eve_region(geom, c.lambda_e, stream, c.eve_fading);
                std::vector<double> gains(eves.size());
                for (std::size_t e = 0; e < eves.size(); ++e)
                    gains[e] = effective_gain(b, eves.points[e], eves.fading_power[e]);
                const auto det = most_detrimental_eve(gains);
                if (det.index) {
                    const auto& p = eves.points[*det.index];
                    worst[t] = EveLocation{std::abs(angle_offset(p.theta, geom.theta_bar())),
                                           std::hypot(p.r, h)};
                }
            });

            EveLocationStats stats;
            stats.h = h;
            stats.lambda_e = lambda_e;
            stats.trials = c.trials;
            for (const auto& w : worst) {
                if (!w) {
                    ++stats.trials_without_eve;
                    continue;
                }
                stats.rel_angles.push_back(w->rel_angle);
                stats.pl_distances.push_back(w->pl_distance);
            }
            std::sort(stats.rel_angles.begin(), stats.rel_angles.end());
            std::sort(stats.pl_distances.begin(), stats.pl_distances.end());
            all.push_back(std::move(stats));
        }
    }
    return all;
}

std::vector<CdfPoint> empirical_cdf(std::span<const double> sorted)
{
    std::vector<CdfPoint> cdf;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i])
            continue;
        cdf.push_back({sorted[i], static_cast<double>(i + 1) / n});
    }
    return cdf;
}

}  // namespace uavpls
