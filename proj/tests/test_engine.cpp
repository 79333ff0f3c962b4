#include <algorithm>
#include <stdexcept>
#include <cmath>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "uavpls/engine.hpp"

using namespace uavpls;
using doctest::Approx;

namespace {

ScenarioGeometry reference() { return {25.0, 100.0, 150.0, 0.02, 0.04, 0.0}; }

LinkBudget budget_at(double h)
{
    LinkBudget b;
    b.altitude = h;
    return b;
}

SimConfig small_config(std::uint64_t trials = 400)
{
    SimConfig c;
    c.trials = trials;
    c.seed = 99;
    c.workers = 1;
    return c;
}

bool same_bits(const SweepResult& a, const SweepResult& b)
{
    const auto eq = [](double x, double y) { return std::memcmp(&x, &y, sizeof x) == 0; };
    return eq(a.h, b.h) && eq(a.q, b.q) && eq(a.delta_e, b.delta_e) && eq(a.l_e, b.l_e) &&
           eq(a.outage[0], b.outage[0]) && eq(a.outage[1], b.outage[1]) &&
           eq(a.outage_oma[0], b.outage_oma[0]) && eq(a.outage_oma[1], b.outage_oma[1]) &&
           eq(a.r_noma, b.r_noma) && eq(a.r_oma, b.r_oma) && eq(a.r_noma_se, b.r_noma_se) &&
           eq(a.r_oma_se, b.r_oma_se) && a.trials == b.trials && a.seed == b.seed;
}

}  // namespace

TEST_CASE("realization without eves gives the users' own rates")
{
    const auto g = reference();
    auto cfg = small_config();
    cfg.lambda_e = 0.0;
    for (std::uint64_t t = 0; t < 20; ++t) {
        const auto out = run_realization(g, budget_at(10), ProtectedZone::none(), cfg, t);
        CHECK_FALSE(out.eve);
        CHECK(out.eve_count == 0);
        CHECK(out.secrecy_rates[0] > 0.0);
        CHECK(out.secrecy_rates[1] > 0.0);
    }
}

TEST_CASE("full zone removes every eve")
{
    const auto g = reference();
    auto cfg = small_config();
    auto no_eves = cfg;
    no_eves.lambda_e = 0.0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        const auto a = run_realization(g, budget_at(30), full_zone(g), cfg, t);
        const auto b = run_realization(g, budget_at(30), ProtectedZone::none(), no_eves, t);
        CHECK_FALSE(a.eve);
        CHECK(a.secrecy_rates == b.secrecy_rates);
        CHECK(a.oma_secrecy_rates == b.oma_secrecy_rates);
    }
}

TEST_CASE("realizations are reproducible and bounded")
{
    const auto g = reference();
    const auto cfg = small_config();
    const auto zone = make_zone(g, 0.2, 0.03);
    for (std::uint64_t t = 0; t < 50; ++t) {
        const auto a = run_realization(g, budget_at(10), zone, cfg, t);
        const auto b = run_realization(g, budget_at(10), zone, cfg, t);
        CHECK(a.secrecy_rates == b.secrecy_rates);
        REQUIRE(a.eve);
        CHECK(a.eve->rel_angle == b.eve->rel_angle);
        CHECK(a.eve->rel_angle <= 0.02 + 1e-12);
        CHECK(a.eve->pl_distance >= 10.0);
        CHECK(a.secrecy_rates[0] >= 0.0);
        CHECK(a.secrecy_rates[1] >= 0.0);
    }
}

TEST_CASE("low eve angle at high density and low altitude")
{
    const auto g = reference();
    auto cfg = small_config(300);
    cfg.lambda_e = 1.0;
    int beyond = 0;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        const auto out = run_realization(g, budget_at(10), ProtectedZone::none(), cfg, t);
        REQUIRE(out.eve);
        beyond += out.eve->rel_angle > g.delta() / 2;
    }
    CHECK(beyond >= 297);
}

TEST_CASE("no outage when every target is met")
{
    const auto g = reference();
    auto cfg = small_config(200);
    cfg.lambda_e = 0.0;
    auto b = budget_at(10);
    b.p_tx = 1e6;
    const auto r = estimate_outage_and_rates(g, b, ProtectedZone::none(), cfg);
    CHECK(r.outage[0] == 0.0);
    CHECK(r.outage[1] == 0.0);
    CHECK(r.r_noma == 5.0);
    CHECK(r.r_noma_se == 0.0);

    // With the full zone only the users' own rates matter.
    auto with_eves = cfg;
    with_eves.lambda_e = 1.0;
    const auto z = estimate_outage_and_rates(g, b, full_zone(g), with_eves);
    CHECK(z.r_noma == r.r_noma);
    CHECK(z.r_oma == r.r_oma);
}

TEST_CASE("estimates are probabilities with bounded standard error")
{
    const auto g = reference();
    const auto cfg = small_config(500);
    const auto r = estimate_outage_and_rates(g, budget_at(10), make_zone(g, 0.2, 0.03), cfg);
    for (double p : {r.outage[0], r.outage[1], r.outage_oma[0], r.outage_oma[1]}) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
    CHECK(r.r_noma >= 0.0);
    CHECK(r.r_oma >= 0.0);
    CHECK(r.r_noma_se <= 5.0 * std::sqrt(0.25 / cfg.trials) + 1e-12);
    CHECK(r.trials == 500);
    CHECK(r.seed == 99);
    CHECK(r.h == 10.0);
    CHECK(r.q == 0.2);
}

TEST_CASE("batched zones equal single-zone estimates bit for bit")
{
    const auto g = reference();
    const auto cfg = small_config(300);
    const auto b = budget_at(25);
    std::vector<ProtectedZone> zones;
    for (double angle : zone_angle_grid(g, 0.2, 6))
        zones.push_back(make_zone(g, 0.2, angle));
    zones.push_back(ProtectedZone::none());
    const auto batched = evaluate_zones(g, b, zones, cfg);
    for (std::size_t i = 0; i < zones.size(); ++i)
        CHECK(same_bits(batched[i], estimate_outage_and_rates(g, b, zones[i], cfg)));
}

TEST_CASE("results do not depend on the worker count")
{
    const auto g = reference();
    auto one = small_config(701);
    auto many = one;
    many.workers = 5;
    const auto zone = make_zone(g, 0.2, 0.025);
    CHECK(same_bits(estimate_outage_and_rates(g, budget_at(10), zone, one),
                    estimate_outage_and_rates(g, budget_at(10), zone, many)));
}

TEST_CASE("nested zones never lower the secrecy rate")
{
    const auto g = reference();
    const auto cfg = small_config(400);
    // Same angle, growing radius: each zone contains the previous one.
    std::vector<ProtectedZone> zones{ProtectedZone::none()};
    for (double q : {0.1, 0.2, 0.5})
        zones.push_back(make_zone(g, q, 0.04));
    for (std::size_t i = 1; i < zones.size(); ++i)
        CHECK(zones[i].l_e >= zones[i - 1].l_e);

    for (std::uint64_t t = 0; t < 100; ++t) {
        double prev0 = -1.0, prev1 = -1.0;
        for (const auto& z : zones) {
            const auto out = run_realization(g, budget_at(10), z, cfg, t);
            CHECK(out.secrecy_rates[0] >= prev0);
            CHECK(out.secrecy_rates[1] >= prev1);
            prev0 = out.secrecy_rates[0];
            prev1 = out.secrecy_rates[1];
        }
    }
    const auto results = evaluate_zones(g, budget_at(10), zones, cfg);
    for (std::size_t i = 1; i < results.size(); ++i)
        CHECK(results[i].r_noma >= results[i - 1].r_noma);
}

TEST_CASE("sparse users trigger deterministic resampling")
{
    const auto g = reference();
    auto cfg = small_config(50);
    cfg.lambda_u = 0.2;  // mean 18.75 users, often fewer than rank 20
    const auto a = estimate_outage_and_rates(g, budget_at(10), ProtectedZone::none(), cfg);
    const auto b = estimate_outage_and_rates(g, budget_at(10), ProtectedZone::none(), cfg);
    CHECK(a.resamples > 0);
    CHECK(same_bits(a, b));

    cfg.lambda_u = 0.01;
    cfg.max_resamples = 3;
    CHECK_THROWS_AS(estimate_outage_and_rates(g, budget_at(10), ProtectedZone::none(), cfg),
                    std::runtime_error);
}

TEST_CASE("zone angle grid")
{
    const auto g = reference();
    const auto grid = zone_angle_grid(g, 0.2, 64);
    REQUIRE(grid.size() == 64);
    CHECK(grid.front() == Approx(0.011));
    CHECK(grid.back() == 0.04);
    for (std::size_t i = 1; i < grid.size(); ++i)
        CHECK(grid[i] > grid[i - 1]);
    CHECK_THROWS(zone_angle_grid(g, 0.2, 1));
}

TEST_CASE("flat objective picks the smallest angle")
{
    const auto g = reference();
    auto cfg = small_config(100);
    cfg.lambda_e = 0.0;
    const auto opt = optimize_zone(g, budget_at(10), 0.2, cfg, 16);
    CHECK(opt.best_index == 0);
    CHECK(opt.delta_e() == Approx(0.011));
    CHECK(opt.l_e() == Approx(150.0));
    CHECK_THROWS(optimize_zone(g, budget_at(10), 0.0, cfg, 16));
    CHECK_THROWS(optimize_zone(g, budget_at(10), 1.0, cfg, 16));
}

TEST_CASE("optimum is the argmax of its curve")
{
    const auto g = reference();
    const auto cfg = small_config(500);
    const auto opt = optimize_zone(g, budget_at(10), 0.2, cfg, 24);
    REQUIRE(opt.curve.size() == 24);
    for (const auto& r : opt.curve)
        CHECK(r.r_noma <= opt.best().r_noma);
    for (std::size_t i = 0; i < opt.best_index; ++i)
        CHECK(opt.curve[i].r_noma < opt.best().r_noma);
    CHECK(opt.l_e() == l_e_for_angle(g, 0.2, opt.delta_e()));

    const auto oma = optimize_zone(g, budget_at(10), 0.2, cfg, 24, Objective::oma);
    for (const auto& r : oma.curve)
        CHECK(r.r_oma <= oma.best().r_oma);
}

TEST_CASE("altitude sweep modes")
{
    const auto g = reference();
    const auto cfg = small_config(300);
    const std::vector<double> qs{0.0, 0.2};
    const std::vector<double> hs{10.0, 60.0};
    const auto opt = altitude_sweep(g, budget_at(10), qs, cfg, hs, SweepMode::optimized, 12);
    const auto fixed = altitude_sweep(g, budget_at(10), qs, cfg, hs, SweepMode::fixed_shape, 12);
    REQUIRE(opt.size() == 4);
    REQUIRE(fixed.size() == 4);

    CHECK(opt[0].h == 10.0);
    CHECK(opt[0].q == 0.0);
    CHECK(opt[2].h == 60.0);
    // At the reference altitude the fixed shape is the optimum itself.
    CHECK(same_bits(opt[1], fixed[1]));
    CHECK(fixed[3].delta_e == fixed[1].delta_e);
    CHECK(opt[3].r_noma >= fixed[3].r_noma);
    CHECK(same_bits(opt[0], fixed[0]));

    CHECK_THROWS(altitude_sweep(g, budget_at(10), qs, cfg, std::vector<double>{},
                                SweepMode::optimized, 12));
}

TEST_CASE("eve location statistics")
{
    const auto g = reference();
    const auto cfg = small_config(400);
    const std::vector<double> hs{10.0, 100.0};
    const std::vector<double> lambdas{1.0};
    const auto stats = eve_location_statistics(g, budget_at(10), cfg, hs, lambdas);
    REQUIRE(stats.size() == 2);
    CHECK(stats[0].h == 10.0);
    CHECK(stats[0].rel_angles.size() + stats[0].trials_without_eve == 400);
    CHECK(std::is_sorted(stats[0].rel_angles.begin(), stats[0].rel_angles.end()));
    CHECK(stats[0].fraction_angle_above(0.01) > 0.98);
    CHECK(stats[0].median_pl_distance() < 100.0);
    CHECK(stats[1].median_pl_distance() > 100.0);
    CHECK(stats[1].fraction_angle_above(0.01) < 0.1);

    // Rate trials with the same seed see the same worst eve.
    const auto out = run_realization(g, budget_at(10), ProtectedZone::none(), cfg, 0);
    auto single = cfg;
    single.trials = 1;
    const auto one = eve_location_statistics(g, budget_at(10), single, std::vector<double>{10.0},
                                             std::vector<double>{cfg.lambda_e});
    REQUIRE(out.eve);
    CHECK(one[0].rel_angles.front() == out.eve->rel_angle);
}

TEST_CASE("empirical cdf")
{
    const std::vector<double> v{1.0, 2.0, 2.0, 5.0};
    const auto cdf = empirical_cdf(v);
    REQUIRE(cdf.size() == 3);
    CHECK(cdf[0].value == 1.0);
    CHECK(cdf[0].cdf == 0.25);
    CHECK(cdf[1].value == 2.0);
    CHECK(cdf[1].cdf == 0.75);
    CHECK(cdf[2].cdf == 1.0);
    CHECK(empirical_cdf(std::vector<double>{}).empty());
}

TEST_CASE("sim config validation")
{
    SimConfig c;
    CHECK_NOTHROW(c.validate());
    c.served_ranks = {3, 2};
    CHECK_THROWS(c.validate());
    c = SimConfig{};
    c.trials = 0;
    CHECK_THROWS(c.validate());
    c = SimConfig{};
    c.targets = SecrecyTargets({1.0});
    CHECK_THROWS(c.validate());
}
