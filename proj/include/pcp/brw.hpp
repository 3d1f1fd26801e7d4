#ifndef PCP_BRW_HPP
#define PCP_BRW_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "pcp/rng.hpp"

namespace pcp {
namespace brw {

using Point = std::array<double, 2>;

// Two-season periodic birth-rate schedule for the branching random walk
// and for the single jump walk.
struct Schedule {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double D = 0.0;

    double at(double t) const;
    // exact integral of alpha over [0, t]
    double integral(double t) const;
    void validate() const;
};

// Centered kill square [-sqrt(T), sqrt(T)]^2; particles landing outside
// are removed. An absent region means the whole plane.
struct KillSquare {
    double half_side = 0.0;
    bool contains(const Point& p) const {
        return p[0] >= -half_side && p[0] <= half_side && p[1] >= -half_side &&
               p[1] <= half_side;
    }
    static KillSquare from_T(double T);
};

struct BrwResult {
    std::vector<double> sample_times;
    std::vector<std::uint64_t> counts;
    std::vector<Point> final_positions;
    bool capped = false;      // population exceeded the cap; run aborted
    std::uint64_t events = 0; // births + deaths applied
};

// Exact simulation of the periodic branching random walk: particles give
// birth at rate alpha(t) and die at rate delta; offspring are displaced
// uniformly on [-1, 1]^2 and killed if they land outside the region.
// Waiting times crossing a season boundary are truncated and redrawn.
BrwResult brw_run(const Schedule& schedule, double delta,
                  const std::optional<KillSquare>& region,
                  const std::vector<Point>& start, double t_end, double sample_dt,
                  std::uint64_t seed, std::uint64_t cap = 10000000);

// E|Z_t| = exp(int_0^t (alpha - delta)) for the unrestricted walk.
double expected_count(const Schedule& schedule, double delta, double t);

// Single walk jumping at rate alpha(t) with uniform [-1, 1]^2 steps,
// absorbed when a jump leaves the region. Returns the final position, or
// nothing if absorbed by time t_end.
std::optional<Point> killed_walk(const Schedule& schedule,
                                 const std::optional<KillSquare>& region,
                                 Point start, double t_end, Rng& rng);

struct IdentityTestResult {
    double lhs_mean = 0.0; // mean particles of the killed walk cloud in the box
    double lhs_se = 0.0;
    double rhs_mean = 0.0; // growth prefactor times box probability of the single walk
    double rhs_se = 0.0;
    double prefactor = 0.0;
    std::uint64_t replicas = 0;
    std::uint64_t capped_runs = 0; // excluded from the estimate
    bool degenerate = false;       // both sides estimated exactly zero
    bool pass = false;             // 99% confidence intervals overlap
};

// Checks E|Z-bar_t ∩ box| = exp(int (alpha - delta)) P(S-bar_t in box)
// with two independent Monte Carlo estimators.
IdentityTestResult count_identity_test(const Schedule& schedule, double delta,
                                       const std::optional<KillSquare>& region,
                                       Point start, Point box_corner,
                                       double box_side, double t,
                                       std::uint64_t replicas, std::uint64_t seed);

} // namespace brw
} // namespace pcp

#endif
