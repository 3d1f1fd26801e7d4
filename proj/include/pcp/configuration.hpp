#ifndef PCP_CONFIGURATION_HPP
#define PCP_CONFIGURATION_HPP

#include <cstdint>
#include <vector>

#include "pcp/lattice.hpp"
#include "pcp/rng.hpp"

namespace pcp {

// Torus grid of states {0, 1, .., S} (0 = empty) with one occupied-site
// index per species supporting O(1) uniform sampling, insertion and
// swap-removal. Counts are kept as integers; densities are derived on
// demand.
class Configuration {
public:
    Configuration(const LatticeSpec& spec, int species_count)
        : M_(spec.M),
          S_(species_count),
          grid_(static_cast<std::size_t>(spec.sites()), 0),
          slot_(static_cast<std::size_t>(spec.sites()), 0),
          occupied_(static_cast<std::size_t>(species_count)) {}

    int M() const { return M_; }
    int species_count() const { return S_; }
    int sites() const { return M_ * M_; }

    std::uint8_t state(std::uint32_t site) const { return grid_[site]; }

    long long count(int species) const {
        return static_cast<long long>(occupied_[static_cast<std::size_t>(species - 1)].size());
    }

    long long total_occupied() const {
        long long n = 0;
        for (const auto& v : occupied_) n += static_cast<long long>(v.size());
        return n;
    }

    const std::vector<std::uint32_t>& occupied(int species) const {
        return occupied_[static_cast<std::size_t>(species - 1)];
    }

    std::uint32_t random_occupied(int species, Rng& rng) const {
        const auto& v = occupied_[static_cast<std::size_t>(species - 1)];
        return v[rng.below(v.size())];
    }

    // Set a site's state, updating the per-species indexes.
    void set(std::uint32_t site, std::uint8_t new_state) {
        const std::uint8_t old_state = grid_[site];
        if (old_state == new_state) return;
        if (old_state != 0) remove_from_index(site, old_state);
        if (new_state != 0) {
            auto& v = occupied_[static_cast<std::size_t>(new_state - 1)];
            slot_[site] = static_cast<std::uint32_t>(v.size());
            v.push_back(site);
        }
        grid_[site] = new_state;
    }

    const std::vector<std::uint8_t>& grid() const { return grid_; }

    // Full scan verifying that grid and indexes agree exactly.
    bool consistent() const {
        std::vector<long long> seen(static_cast<std::size_t>(S_), 0);
        for (std::uint32_t site = 0; site < grid_.size(); ++site) {
            const std::uint8_t s = grid_[site];
            if (s == 0) continue;
            if (s > S_) return false;
            const auto& v = occupied_[static_cast<std::size_t>(s - 1)];
            const std::uint32_t k = slot_[site];
            if (k >= v.size() || v[k] != site) return false;
            ++seen[static_cast<std::size_t>(s - 1)];
        }
        for (int i = 1; i <= S_; ++i)
            if (seen[static_cast<std::size_t>(i - 1)] != count(i)) return false;
        return true;
    }

private:
    void remove_from_index(std::uint32_t site, std::uint8_t species) {
        auto& v = occupied_[static_cast<std::size_t>(species - 1)];
        const std::uint32_t k = slot_[site];
        const std::uint32_t last = v.back();
        v[k] = last;
        slot_[last] = k;
        v.pop_back();
    }

    int M_;
    int S_;
    std::vector<std::uint8_t> grid_;
    std::vector<std::uint32_t> slot_;
    std::vector<std::vector<std::uint32_t>> occupied_;
};

// Fraction of the neighborhood of x occupied by the given species
// (species = 0 counts empties). Exact integer count divided at the end.
double neighbor_fraction(const Configuration& config, const LatticeSpec& spec,
                         std::uint32_t x, int species);

// Number of state-`species` sites in the half-open physical box
// corner + [0, side_units)^2; side_units * L must be a whole number of
// sites and the box must fit on the torus.
long long box_count(const Configuration& config, const LatticeSpec& spec,
                    std::uint32_t corner, double side_units, int species);

} // namespace pcp

#endif
