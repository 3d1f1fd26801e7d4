#include <doctest.h>

#include <cmath>

#include "pcp/config_file.hpp"
#include "pcp/sweep.hpp"

using namespace pcp;

namespace {

RunConfig small_two_species() {
    RunConfig cfg;
    cfg.lattice = {30, 15};
    cfg.params.S = 2;
    cfg.params.D = 1.0;
    cfg.params.beta = {{4.0, 1.5}, {1.5, 4.0}};
    cfg.params.delta = {{1.0, 1.0}, {1.0, 1.0}};
    cfg.init.densities = {0.3, 0.3};
    cfg.t_end = 8.0;
    cfg.seed = 7;
    return cfg;
}

} // namespace

TEST_CASE("axis parsing") {
    const auto axis = parse_axis("beta_2_1=0.5:4:8");
    CHECK(axis.name == "beta_2_1");
    REQUIRE(axis.values.size() == 8);
    CHECK(axis.values.front() == 0.5);
    CHECK(axis.values.back() == 4.0);
    CHECK(parse_axis("D=1:1:1").values == std::vector<double>{1.0});
    CHECK_THROWS_AS(parse_axis("beta_1_1"), ConfigError);
    CHECK_THROWS_AS(parse_axis("beta_1_1=1:2"), ConfigError);
    CHECK_THROWS_AS(parse_axis("beta_1_1=a:b:3"), ConfigError);
    CHECK_THROWS_AS(parse_axis("beta_1_1=1:2:0"), ConfigError);
}

TEST_CASE("apply_param touches the right slot") {
    RunConfig cfg = small_two_species();
    apply_param(cfg, "beta_2_1", 2.25);
    CHECK(cfg.params.birth(2, 1) == 2.25);
    apply_param(cfg, "delta_1_2", 0.75);
    CHECK(cfg.params.death(1, 2) == 0.75);
    apply_param(cfg, "D", 2.0);
    CHECK(cfg.params.D == 2.0);
    CHECK_THROWS_AS(apply_param(cfg, "beta_3_1", 1.0), ConfigError);
    CHECK_THROWS_AS(apply_param(cfg, "gamma_1_1", 1.0), ConfigError);
    CHECK_THROWS_AS(apply_param(cfg, "beta_1_3", 1.0), ConfigError);
}

TEST_CASE("one-point sweep reproduces a direct check plus run") {
    const RunConfig cfg = small_two_species();
    const auto results =
        run_sweep(cfg, {parse_axis("beta_1_1=4:4:1")}, 2, 2);
    REQUIRE(results.size() == 1);
    const auto& point = results[0];

    const auto direct = theorem_check(cfg.params);
    REQUIRE(point.report.has_value());
    CHECK(point.report->dir12.margin == direct.dir12.margin);
    CHECK(point.report->dir21.margin == direct.dir21.margin);
    CHECK(point.report->verdict == direct.verdict);

    // replicas k use seed ^ k, matching standalone runs
    ObserverSchedule schedule;
    schedule.sample_dt = cfg.effective_sample_dt();
    double frac1 = 0.0;
    for (std::uint64_t k = 0; k < 2; ++k) {
        const auto traj = run(cfg.params, cfg.lattice, cfg.init, cfg.t_end, schedule,
                              cfg.seed ^ k);
        const auto verdict = quasi_coexistence(traj, cfg.effective_window_start(),
                                               cfg.effective_window_end(), cfg.threshold);
        if (verdict[0]) frac1 += 0.5;
    }
    CHECK(point.coex_fraction[0] == frac1);
}

TEST_CASE("sweep across the lone-species survival boundary") {
    RunConfig cfg;
    cfg.lattice = {40, 4};
    cfg.params.S = 1;
    cfg.params.D = 1.0;
    cfg.params.beta = {{1.0, 1.0}};
    cfg.params.delta = {{1.0, 1.0}};
    cfg.init.densities = {0.5};
    cfg.t_end = 8.0;
    cfg.seed = 11;
    cfg.threshold = 0.02;

    SweepAxis axis;
    axis.name = "beta_1_1"; // equals beta_1_2 via a paired axis below
    // sweep both seasons together by sweeping twice with one axis each
    const auto low = run_sweep([&] {
        RunConfig c = cfg;
        apply_param(c, "beta_1_1", 0.4);
        apply_param(c, "beta_1_2", 0.4);
        return c;
    }(), {parse_axis("D=1:1:1")}, 6, 4);
    const auto high = run_sweep([&] {
        RunConfig c = cfg;
        apply_param(c, "beta_1_1", 3.0);
        apply_param(c, "beta_1_2", 3.0);
        return c;
    }(), {parse_axis("D=1:1:1")}, 6, 4);
    CHECK_FALSE(low[0].mf_survives[0]);
    CHECK(high[0].mf_survives[0]);
    CHECK(low[0].coex_fraction[0] <= 0.2);
    CHECK(high[0].coex_fraction[0] >= 0.8);
}

TEST_CASE("three-species sweep schema") {
    RunConfig cfg;
    cfg.lattice = {24, 12};
    cfg.params.S = 3;
    cfg.params.D = 1.0;
    cfg.params.beta = {{4.0, 1.0}, {1.0, 4.0}, {2.5, 2.5}};
    cfg.params.delta = {{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
    cfg.init.densities = {0.2, 0.2, 0.2};
    cfg.t_end = 4.0;
    cfg.seed = 3;
    const auto axes = std::vector<SweepAxis>{parse_axis("beta_3_1=2:3:2")};
    const auto results = run_sweep(cfg, axes, 1, 2);
    const std::string csv = sweep_csv(axes, 3, results);
    CHECK(csv.find("coex_frac_3") != std::string::npos);
    CHECK(csv.find("mf_survives_3") != std::string::npos);
    CHECK(csv.find("mf_verdict") == std::string::npos); // no pair verdict beyond S=2
    REQUIRE(results.size() == 2);
    CHECK_FALSE(results[0].report.has_value());
}

TEST_CASE("sweep rejects malformed grids") {
    const RunConfig cfg = small_two_species();
    CHECK_THROWS_AS(run_sweep(cfg, {}, 1, 1), ConfigError);
    CHECK_THROWS_AS(run_sweep(cfg,
                              {parse_axis("D=1:2:2"), parse_axis("beta_1_1=1:2:2"),
                               parse_axis("beta_1_2=1:2:2")},
                              1, 1),
                    ConfigError);
    CHECK_THROWS_AS(run_sweep(cfg, {parse_axis("D=1:2:2")}, 0, 1), ConfigError);
}
