#ifndef PCP_MEANFIELD_HPP
#define PCP_MEANFIELD_HPP

#include <vector>

#include "pcp/params.hpp"

namespace pcp {

// Sampled trajectory of the S-species mean-field system
//   du_i/dt = beta_i(t) u_i (1 - sum_k u_k) - delta_i(t) u_i.
struct MeanFieldTrajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states; // states[k][i-1]
};

// Fixed-step fourth-order integration, stepping season by season with
// per-season sub-stepping for stiff rates. Output is sampled at
// multiples of dt; both D and t_end must be whole multiples of dt.
MeanFieldTrajectory ode_solve(const SeasonalParams& params,
                              const std::vector<double>& u0, double t_end,
                              double dt);

// Mean birth rate over a period exceeds mean death rate: a lone species
// persists in the mean-field model.
bool single_species_survives(const SeasonalParams& params, int species);

} // namespace pcp

#endif
