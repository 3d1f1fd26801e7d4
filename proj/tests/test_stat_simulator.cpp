#include <doctest.h>

#include <cmath>
#include <vector>

#include "harris_oracle.hpp"
#include "oracles.hpp"
#include "pcp/simulator.hpp"

using namespace pcp;

namespace {

SeasonalParams one_species(double b1, double b2, double d1, double d2, double D) {
    SeasonalParams p;
    p.S = 1;
    p.D = D;
    p.beta = {{b1, b2}};
    p.delta = {{d1, d2}};
    return p;
}

// Constant-rate single-species Gillespie with no season bookkeeping at
// all: waiting times run straight through every boundary.
double no_season_final_density(const LatticeSpec& spec, Configuration config,
                               double beta, double delta, double t_end, Rng& rng) {
    double t = 0.0;
    while (config.count(1) > 0) {
        const double rate = static_cast<double>(config.count(1)) * (beta + delta);
        t += rng.exponential(rate);
        if (t >= t_end) break;
        const auto x = config.random_occupied(1, rng);
        if (rng.uniform() * (beta + delta) < delta) {
            config.set(x, 0);
        } else {
            const auto y = spec.random_neighbor(x, rng);
            if (config.state(y) == 0) config.set(y, 1);
        }
    }
    return static_cast<double>(config.count(1)) / static_cast<double>(spec.sites());
}

} // namespace

TEST_CASE("season truncation leaves constant-rate statistics unchanged") {
    // same beta in both seasons: the boundary redraw machinery runs (D is
    // small) but must not change the law
    const LatticeSpec spec{50, 5};
    const double beta = 3.0;
    const double delta = 1.0;
    const double t_end = 3.0;
    const auto params = one_species(beta, beta, delta, delta, 0.25);
    InitSpec init;
    init.densities = {0.5};

    std::vector<double> with_seasons;
    std::vector<double> without;
    ObserverSchedule schedule;
    schedule.sample_dt = t_end;
    for (int k = 0; k < 200; ++k) {
        const auto traj = run(params, spec, init, t_end, schedule,
                              0x5ea50000ULL + static_cast<std::uint64_t>(k));
        with_seasons.push_back(traj.density(traj.samples.size() - 1, 1));

        Rng rng(0xf1a70000ULL + static_cast<std::uint64_t>(k));
        Configuration config = init_configuration(spec, 1, init, rng);
        without.push_back(
            no_season_final_density(spec, std::move(config), beta, delta, t_end, rng));
    }
    const double t_stat = oracles::welch_t(with_seasons, without);
    CHECK(std::abs(t_stat) < 2.6); // two-sample test at the 1% level
}

TEST_CASE("engine law matches the graphical-construction oracle") {
    const LatticeSpec spec{20, 2};
    const auto params = one_species(4.0, 1.0, 1.0, 1.0, 0.5);
    const double t_end = 2.0;
    InitSpec init;
    init.densities = {0.3};

    std::vector<double> engine;
    std::vector<double> oracle;
    ObserverSchedule schedule;
    schedule.sample_dt = t_end;
    for (int k = 0; k < 300; ++k) {
        const auto traj = run(params, spec, init, t_end, schedule,
                              0xabc10000ULL + static_cast<std::uint64_t>(k));
        engine.push_back(traj.density(traj.samples.size() - 1, 1));

        Rng rng(0xdef20000ULL + static_cast<std::uint64_t>(k));
        Configuration config = init_configuration(spec, 1, init, rng);
        harris::Stream stream(params, spec, rng.next());
        while (true) {
            const auto mark = stream.next();
            if (mark.t >= t_end) break;
            stream.apply(mark, config);
        }
        oracle.push_back(static_cast<double>(config.count(1)) /
                         static_cast<double>(spec.sites()));
    }
    CHECK(std::abs(oracles::welch_t(engine, oracle)) < 2.6);
    CHECK(oracles::ks_distance(engine, oracle) < 0.12); // 1% KS bound for n = 300 pairs
}

TEST_CASE("adding a competitor can only thin a species (coupled streams)") {
    // one master stream drives both the two-species state and the
    // lone-resident state; the resident's occupancy in the competition
    // run must stay inside the solo run at every event index
    const LatticeSpec spec{10, 2};
    SeasonalParams params;
    params.S = 2;
    params.D = 0.5;
    params.beta = {{5.0, 1.0}, {1.0, 5.0}};
    params.delta = {{1.0, 1.0}, {1.0, 1.0}};

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Rng rng(0xc0117ed0ULL + seed);
        Configuration both(spec, 2);
        Configuration solo(spec, 2);
        for (std::uint32_t site = 0; site < 100; ++site) {
            const double u = rng.uniform();
            if (u < 0.25) {
                both.set(site, 2);
                solo.set(site, 2); // same resident start
            } else if (u < 0.5) {
                both.set(site, 1); // competitor only exists in one copy
            }
        }
        harris::Stream stream(params, spec, rng.next());
        for (int ev = 0; ev < 40000; ++ev) {
            const auto mark = stream.next();
            stream.apply(mark, both);
            stream.apply(mark, solo);
            if (ev % 200 == 0 || ev > 39900) {
                for (std::uint32_t site = 0; site < 100; ++site)
                    if (both.state(site) == 2) REQUIRE(solo.state(site) == 2);
            }
        }
        CHECK(both.consistent());
        CHECK(solo.consistent());
    }
}

TEST_CASE("unit-box densities concentrate as the range grows") {
    // fixed physical torus (6 x 6 units), increasing interaction range
    const double t_end = 2.0;
    std::vector<double> spread;
    for (const int L : {10, 20, 40}) {
        const LatticeSpec spec{6 * L, L};
        const auto params = one_species(3.0, 1.0, 1.0, 1.0, 1.0);
        InitSpec init;
        init.densities = {0.3};
        ObserverSchedule schedule;
        schedule.sample_dt = t_end;
        std::vector<double> box_density;
        for (int k = 0; k < 100; ++k) {
            const auto traj = run(params, spec, init, t_end, schedule,
                                  0xb0c50000ULL + static_cast<std::uint64_t>(L * 1000 + k));
            Configuration config(spec, 1);
            // rebuild the final configuration from the stored grid
            for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(spec.sites()); ++s)
                if (traj.final_grid[s] != 0) config.set(s, traj.final_grid[s]);
            const auto count = box_count(config, spec, 0, 1.0, 1);
            box_density.push_back(static_cast<double>(count) /
                                  (static_cast<double>(L) * static_cast<double>(L)));
        }
        spread.push_back(std::sqrt(oracles::moments(box_density).var));
    }
    CHECK(spread[1] < spread[0]);
    CHECK(spread[2] < spread[1]);
}

TEST_CASE("early growth is dominated by the pure-birth envelope") {
    // one seed particle, no deaths: mean count at t <= 2 must stay below
    // e^{b t} with b = max beta
    const LatticeSpec spec{160, 10};
    auto params = one_species(4.0, 2.0, 1.0, 1.0, 0.5);
    params.delta = {{0.0, 0.0}}; // death-free mode
    InitSpec seed_box;
    seed_box.mode = InitSpec::Mode::Box;
    seed_box.side_units = 1.0 / 10.0;
    seed_box.corner = spec.site_of(80, 80);

    ObserverSchedule schedule;
    schedule.sample_dt = 1.0;
    std::vector<double> count_t1;
    std::vector<double> count_t2;
    for (int k = 0; k < 3000; ++k) {
        const auto traj = run(params, spec, seed_box, 2.0, schedule,
                              0xeeee0000ULL + static_cast<std::uint64_t>(k));
        count_t1.push_back(static_cast<double>(traj.samples[1].counts[0]));
        count_t2.push_back(static_cast<double>(traj.samples[2].counts[0]));
    }
    const auto m1 = oracles::moments(count_t1);
    const auto m2 = oracles::moments(count_t2);
    const double se1 = std::sqrt(m1.var / static_cast<double>(m1.n));
    const double se2 = std::sqrt(m2.var / static_cast<double>(m2.n));
    CHECK(m1.mean - 3.0 * se1 <= std::exp(4.0));
    CHECK(m2.mean - 3.0 * se2 <= std::exp(8.0));
    // and the growth is real: clearly above the subcritical envelope
    CHECK(m1.mean > 1.0);
    CHECK(m2.mean > m1.mean);
}

TEST_CASE("rate bookkeeping and index consistency under event fuzz") {
    const LatticeSpec spec{40, 6};
    SeasonalParams params;
    params.S = 3;
    params.D = 0.7;
    params.beta = {{4.5, 0.5}, {0.5, 4.5}, {2.0, 2.0}};
    params.delta = {{1.0, 2.0}, {2.0, 1.0}, {1.5, 1.5}};
    Rng rng(0xfadedace);
    InitSpec init;
    init.densities = {0.2, 0.2, 0.2};
    SimState state(params, spec, init_configuration(spec, 3, init, rng), 0xfeedbeef);

    std::vector<long long> shadow(3);
    for (int i = 1; i <= 3; ++i) shadow[static_cast<std::size_t>(i - 1)] = state.config().count(i);

    EventRecord ev;
    std::uint64_t events = 0;
    while (events < 200000) {
        const auto out = state.step(1e18, &ev);
        REQUIRE(out != StepOutcome::Absorbed);
        if (out != StepOutcome::Event) continue;
        ++events;
        const auto k = static_cast<std::size_t>(ev.species - 1);
        if (ev.kind == EventKind::Death) --shadow[k];
        if (ev.kind == EventKind::BirthSuccess) ++shadow[k];
        // counts maintained by the engine match the event ledger exactly
        for (int i = 1; i <= 3; ++i)
            REQUIRE(shadow[static_cast<std::size_t>(i - 1)] == state.config().count(i));
        if (events % 20000 == 0) {
            REQUIRE(state.config().consistent());
            const int season = state.season();
            double recomputed = 0.0;
            for (int i = 1; i <= 3; ++i)
                recomputed += static_cast<double>(state.config().count(i)) *
                              (params.birth(i, season) + params.death(i, season));
            REQUIRE(recomputed == state.total_rate()); // exact, not approximate
        }
    }
}

TEST_CASE("mirrored specialists coexist at desk scale") {
    // both invasion margins are positive for this set and the mean-field
    // floor is ~0.11, so the density floor of 0.02 holds with margin
    const LatticeSpec spec{200, 100};
    SeasonalParams params;
    params.S = 2;
    params.D = 2.5;
    params.beta = {{4.0, 1.5}, {1.5, 4.0}};
    params.delta = {{1.0, 1.0}, {1.0, 1.0}};
    InitSpec init;
    init.densities = {0.3, 0.3};
    ObserverSchedule schedule;
    schedule.sample_dt = 0.125; // D / 20
    int both_ok = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto traj = run(params, spec, init, 20.0, schedule, 0xdec0000ULL + seed);
        REQUIRE_FALSE(traj.absorbed);
        const auto verdict = quasi_coexistence(traj, 5.0, 20.0, 0.02);
        if (verdict[0] && verdict[1]) ++both_ok;
    }
    CHECK(both_ok >= 4);
}

TEST_CASE("observation truncation does not change the law") {
    // waiting times are redrawn whenever a sample time is hit; by
    // memorylessness a fine observer grid must leave the statistics of
    // the final state untouched
    const LatticeSpec spec{40, 4};
    const auto params = one_species(3.5, 1.5, 1.0, 1.0, 0.8);
    InitSpec init;
    init.densities = {0.4};
    std::vector<double> coarse;
    std::vector<double> fine;
    for (int k = 0; k < 300; ++k) {
        ObserverSchedule sparse;
        sparse.sample_dt = 3.0;
        const auto a = run(params, spec, init, 3.0, sparse,
                           0x0b5e0000ULL + static_cast<std::uint64_t>(k));
        coarse.push_back(a.density(a.samples.size() - 1, 1));
        ObserverSchedule dense;
        dense.sample_dt = 0.0625;
        const auto b = run(params, spec, init, 3.0, dense,
                           0x0b5f0000ULL + static_cast<std::uint64_t>(k));
        fine.push_back(b.density(b.samples.size() - 1, 1));
    }
    CHECK(std::abs(oracles::welch_t(coarse, fine)) < 2.6);
}

TEST_CASE("two-species engine law matches the graphical-construction oracle") {
    const LatticeSpec spec{16, 2};
    SeasonalParams params;
    params.S = 2;
    params.D = 0.5;
    params.beta = {{5.0, 1.0}, {1.0, 5.0}};
    params.delta = {{1.0, 1.0}, {1.0, 1.0}};
    const double t_end = 2.0;
    InitSpec init;
    init.densities = {0.25, 0.25};

    std::vector<double> engine1;
    std::vector<double> engine2;
    std::vector<double> oracle1;
    std::vector<double> oracle2;
    ObserverSchedule schedule;
    schedule.sample_dt = t_end;
    for (int k = 0; k < 300; ++k) {
        const auto traj = run(params, spec, init, t_end, schedule,
                              0x28a10000ULL + static_cast<std::uint64_t>(k));
        engine1.push_back(traj.density(traj.samples.size() - 1, 1));
        engine2.push_back(traj.density(traj.samples.size() - 1, 2));

        Rng rng(0x28a20000ULL + static_cast<std::uint64_t>(k));
        Configuration config = init_configuration(spec, 2, init, rng);
        harris::Stream stream(params, spec, rng.next());
        while (true) {
            const auto mark = stream.next();
            if (mark.t >= t_end) break;
            stream.apply(mark, config);
        }
        oracle1.push_back(static_cast<double>(config.count(1)) /
                          static_cast<double>(spec.sites()));
        oracle2.push_back(static_cast<double>(config.count(2)) /
                          static_cast<double>(spec.sites()));
    }
    CHECK(std::abs(oracles::welch_t(engine1, oracle1)) < 2.6);
    CHECK(std::abs(oracles::welch_t(engine2, oracle2)) < 2.6);
    CHECK(oracles::ks_distance(engine1, oracle1) < 0.12);
    CHECK(oracles::ks_distance(engine2, oracle2) < 0.12);
}
