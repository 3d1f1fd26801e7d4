#ifndef PCP_LATTICE_HPP
#define PCP_LATTICE_HPP

#include <cstdint>
#include <stdexcept>

#include "pcp/rng.hpp"

namespace pcp {

// M x M torus of sites with interaction range L (in sites). Physical
// spacing is 1/L, so the torus has physical side M/L and a unit square
// holds L*L sites. The neighborhood of x is every other site within
// torus l-infinity distance L; wrapped offsets that coincide are counted
// once, which makes the size min(2L+1, M)^2 - 1 for every site.
struct LatticeSpec {
    int M = 0;
    int L = 0;

    void validate() const {
        if (M < 2) throw std::invalid_argument("lattice: M must be >= 2");
        if (L < 1) throw std::invalid_argument("lattice: L must be >= 1");
        if (static_cast<long long>(M) * M > (1LL << 31) - 1)
            throw std::invalid_argument("lattice: M too large");
    }

    int sites() const { return M * M; }

    // per-axis count of distinct in-range offsets
    int window() const { return 2 * L + 1 < M ? 2 * L + 1 : M; }

    bool whole_torus() const { return 2 * L + 1 >= M; }

    std::uint32_t site_of(int row, int col) const {
        return static_cast<std::uint32_t>(row) * static_cast<std::uint32_t>(M) +
               static_cast<std::uint32_t>(col);
    }
    int row_of(std::uint32_t site) const { return static_cast<int>(site) / M; }
    int col_of(std::uint32_t site) const { return static_cast<int>(site) % M; }

    int wrap(int v) const {
        v %= M;
        return v < 0 ? v + M : v;
    }

    std::uint32_t shifted(std::uint32_t site, int dr, int dc) const {
        return site_of(wrap(row_of(site) + dr), wrap(col_of(site) + dc));
    }

    // Uniform draw from the neighborhood of x (never x itself).
    std::uint32_t random_neighbor(std::uint32_t x, Rng& rng) const {
        if (whole_torus()) {
            // neighborhood is the whole torus minus x
            const auto n = static_cast<std::uint64_t>(sites());
            std::uint64_t y = rng.below(n - 1);
            if (y >= x) ++y;
            return static_cast<std::uint32_t>(y);
        }
        const int w = 2 * L + 1;
        int dr;
        int dc;
        do {
            dr = static_cast<int>(rng.below(static_cast<std::uint64_t>(w))) - L;
            dc = static_cast<int>(rng.below(static_cast<std::uint64_t>(w))) - L;
        } while (dr == 0 && dc == 0);
        return shifted(x, dr, dc);
    }
};

// |N(x)|, identical for every site.
inline long long neighborhood_size(const LatticeSpec& spec) {
    spec.validate();
    const long long w = spec.window();
    return w * w - 1;
}

} // namespace pcp

#endif
