#include "pcp/configuration.hpp"

#include <cmath>
#include <stdexcept>

namespace pcp {

double neighbor_fraction(const Configuration& config, const LatticeSpec& spec,
                         std::uint32_t x, int species) {
    if (species < 0 || species > config.species_count())
        throw std::invalid_argument("neighbor_fraction: species out of range");
    long long hits = 0;
    if (spec.whole_torus()) {
        for (std::uint32_t y = 0; y < static_cast<std::uint32_t>(spec.sites()); ++y) {
            if (y == x) continue;
            if (config.state(y) == species) ++hits;
        }
    } else {
        for (int dr = -spec.L; dr <= spec.L; ++dr) {
            for (int dc = -spec.L; dc <= spec.L; ++dc) {
                if (dr == 0 && dc == 0) continue;
                if (config.state(spec.shifted(x, dr, dc)) == species) ++hits;
            }
        }
    }
    return static_cast<double>(hits) / static_cast<double>(neighborhood_size(spec));
}

long long box_count(const Configuration& config, const LatticeSpec& spec,
                    std::uint32_t corner, double side_units, int species) {
    const double sites_exact = side_units * spec.L;
    const long long side_sites = std::llround(sites_exact);
    if (std::abs(sites_exact - static_cast<double>(side_sites)) > 1e-9 || side_sites < 1)
        throw std::invalid_argument("box_count: box side must be a whole number of sites");
    if (side_sites > spec.M)
        throw std::invalid_argument("box_count: box does not fit on the torus");
    long long hits = 0;
    for (long long dr = 0; dr < side_sites; ++dr)
        for (long long dc = 0; dc < side_sites; ++dc)
            if (config.state(spec.shifted(corner, static_cast<int>(dr), static_cast<int>(dc))) == species)
                ++hits;
    return hits;
}

} // namespace pcp
