#include <doctest.h>

#include "pcp/configuration.hpp"
#include "pcp/rng.hpp"

using namespace pcp;

TEST_CASE("set and clear keep grid and indexes in step") {
    const LatticeSpec spec{10, 2};
    Configuration config(spec, 2);
    CHECK(config.count(1) == 0);
    config.set(3, 1);
    config.set(77, 1);
    config.set(50, 2);
    CHECK(config.count(1) == 2);
    CHECK(config.count(2) == 1);
    CHECK(config.state(77) == 1);
    config.set(77, 0);
    CHECK(config.count(1) == 1);
    CHECK(config.state(77) == 0);
    config.set(3, 2); // direct retype
    CHECK(config.count(1) == 0);
    CHECK(config.count(2) == 2);
    CHECK(config.consistent());
}

TEST_CASE("occupied index survives randomized mutation storms") {
    const LatticeSpec spec{16, 3};
    Configuration config(spec, 3);
    Rng rng(99);
    for (int step = 0; step < 200000; ++step) {
        const auto site = static_cast<std::uint32_t>(rng.below(
            static_cast<std::uint64_t>(spec.sites())));
        const auto state = static_cast<std::uint8_t>(rng.below(4));
        config.set(site, state);
        if (step % 5000 == 0) {
            REQUIRE(config.consistent());
            REQUIRE(config.total_occupied() <= spec.sites());
        }
    }
    REQUIRE(config.consistent());
}

TEST_CASE("random_occupied returns a site of the right species") {
    const LatticeSpec spec{8, 1};
    Configuration config(spec, 2);
    Rng rng(5);
    for (int k = 0; k < 30; ++k)
        config.set(static_cast<std::uint32_t>(rng.below(64)), static_cast<std::uint8_t>(1 + rng.below(2)));
    for (int k = 0; k < 500; ++k) {
        for (int i = 1; i <= 2; ++i) {
            if (config.count(i) == 0) continue;
            const auto site = config.random_occupied(i, rng);
            CHECK(config.state(site) == i);
        }
    }
}

TEST_CASE("neighbor_fraction counts exactly") {
    const LatticeSpec spec{12, 1};
    Configuration config(spec, 2);
    const std::uint32_t x = spec.site_of(5, 5);

    CHECK(neighbor_fraction(config, spec, x, 1) == 0.0); // all empty

    config.set(spec.site_of(4, 5), 1);
    config.set(spec.site_of(6, 6), 1);
    config.set(spec.site_of(5, 4), 1);
    config.set(spec.site_of(0, 0), 1); // far away, must not count
    CHECK(neighbor_fraction(config, spec, x, 1) == doctest::Approx(3.0 / 8.0));

    // fractions over all states sum to one
    double total = 0.0;
    for (int i = 0; i <= 2; ++i) total += neighbor_fraction(config, spec, x, i);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("neighbor_fraction on the whole-torus neighborhood") {
    const LatticeSpec spec{6, 3}; // 2L+1 = 7 > M: neighborhood = torus minus x
    Configuration config(spec, 1);
    for (std::uint32_t s = 0; s < 36; ++s) config.set(s, 1);
    CHECK(neighbor_fraction(config, spec, 7, 1) == 1.0);
}

TEST_CASE("neighbor_fraction sums to one on random configurations") {
    const LatticeSpec spec{9, 2};
    Configuration config(spec, 3);
    Rng rng(17);
    for (std::uint32_t s = 0; s < 81; ++s)
        config.set(s, static_cast<std::uint8_t>(rng.below(4)));
    for (int rep = 0; rep < 20; ++rep) {
        const auto x = static_cast<std::uint32_t>(rng.below(81));
        double total = 0.0;
        for (int i = 0; i <= 3; ++i) total += neighbor_fraction(config, spec, x, i);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("box_count on aligned physical boxes") {
    const LatticeSpec spec{20, 4};
    Configuration config(spec, 1);
    CHECK(box_count(config, spec, 0, 1.0, 1) == 0); // empty grid

    for (std::uint32_t s = 0; s < 400; ++s) config.set(s, 1);
    CHECK(box_count(config, spec, 0, 1.0, 1) == 16); // L^2 sites in a unit box
    CHECK(box_count(config, spec, 0, 2.5, 1) == 100);
    CHECK(box_count(config, spec, spec.site_of(18, 18), 1.0, 1) == 16); // wraps

    CHECK_THROWS_AS(box_count(config, spec, 0, 0.3, 1), std::invalid_argument);
    CHECK_THROWS_AS(box_count(config, spec, 0, 6.0, 1), std::invalid_argument);
}

TEST_CASE("box_count at full range: a unit box holds L^2 sites") {
    const LatticeSpec spec{400, 200};
    Configuration config(spec, 1);
    for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(spec.sites()); ++s)
        config.set(s, 1);
    CHECK(box_count(config, spec, 0, 1.0, 1) == 40000);
}

TEST_CASE("box_count concentrates around p L^2 under product measure") {
    const LatticeSpec spec{200, 50};
    Configuration config(spec, 1);
    Rng rng(31);
    const double p = 0.37;
    for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(spec.sites()); ++s)
        if (rng.uniform() < p) config.set(s, 1);
    const double expect = p * 50.0 * 50.0;
    const double sigma = std::sqrt(50.0 * 50.0 * p * (1.0 - p));
    const auto n = box_count(config, spec, spec.site_of(25, 75), 1.0, 1);
    CHECK(std::abs(static_cast<double>(n) - expect) <= 4.0 * sigma);
}
