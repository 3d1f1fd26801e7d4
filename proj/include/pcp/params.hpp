#ifndef PCP_PARAMS_HPP
#define PCP_PARAMS_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcp {

// Season index of time t for season length D. Seasons alternate with
// period 2D; the half-open convention assigns t = 2nD to season 1 and
// t = (2n+1)D to season 2.
inline int season_of(double t, double D) {
    if (!(D > 0.0)) throw std::invalid_argument("season_of: D must be > 0");
    if (t < 0.0) throw std::invalid_argument("season_of: t must be >= 0");
    return std::fmod(t, 2.0 * D) < D ? 1 : 2;
}

// Per-species, per-season birth and death rates plus season length.
// Species are numbered 1..S; 0 is the empty state on the grid.
struct SeasonalParams {
    int S = 0;
    double D = 0.0;
    std::vector<std::array<double, 2>> beta;   // beta[i-1][j-1]
    std::vector<std::array<double, 2>> delta;  // delta[i-1][j-1]

    double birth(int species, int season) const {
        return beta[static_cast<std::size_t>(species - 1)][static_cast<std::size_t>(season - 1)];
    }
    double death(int species, int season) const {
        return delta[static_cast<std::size_t>(species - 1)][static_cast<std::size_t>(season - 1)];
    }

    void check_species(int i) const {
        if (i < 1 || i > S) throw std::invalid_argument("species index out of range");
    }

    // Strict validation used at configuration load: finite nonnegative
    // births, strictly positive deaths, positive season length.
    void validate() const {
        if (S < 1) throw std::invalid_argument("params: species count must be >= 1");
        if (S > 9) throw std::invalid_argument("params: at most 9 species (grid states are single digits)");
        if (!(D > 0.0) || !std::isfinite(D)) throw std::invalid_argument("params: D must be finite and > 0");
        if (beta.size() != static_cast<std::size_t>(S) || delta.size() != static_cast<std::size_t>(S))
            throw std::invalid_argument("params: rate tables must have one row per species");
        for (int i = 1; i <= S; ++i) {
            for (int j = 1; j <= 2; ++j) {
                const double b = birth(i, j);
                const double d = death(i, j);
                if (!std::isfinite(b) || b < 0.0)
                    throw std::invalid_argument("params: beta[" + std::to_string(i) + "][" + std::to_string(j) + "] must be finite and >= 0");
                if (!std::isfinite(d) || !(d > 0.0))
                    throw std::invalid_argument("params: delta[" + std::to_string(i) + "][" + std::to_string(j) + "] must be finite and > 0");
            }
        }
    }
};

// (birth, death) rates of species i at time t.
inline std::pair<double, double> rates_at(const SeasonalParams& p, int i, double t) {
    p.check_species(i);
    const int s = season_of(t, p.D);
    return {p.birth(i, s), p.death(i, s)};
}

} // namespace pcp

#endif
