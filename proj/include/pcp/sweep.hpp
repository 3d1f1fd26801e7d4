#ifndef PCP_SWEEP_HPP
#define PCP_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>

#include "pcp/config_file.hpp"
#include "pcp/invasibility.hpp"

namespace pcp {

// One sweep axis: a parameter name ("D", "beta_<i>_<j>" or
// "delta_<i>_<j>") with linearly spaced values, parsed from
// "name=lo:hi:count".
struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

SweepAxis parse_axis(const std::string& spec);

void apply_param(RunConfig& config, const std::string& name, double value);

struct SweepPointResult {
    std::vector<double> axis_values;
    std::vector<bool> mf_survives;          // per species, lone mean-field
    std::optional<InvasionReport> report;   // S == 2 only
    std::vector<double> coex_fraction;      // per species, across replicas
    double absorbed_fraction = 0.0;
};

// Grid over at most two axes; replica k of a point uses seed = base ^ k.
// Points and replicas execute concurrently on the given thread count.
std::vector<SweepPointResult> run_sweep(const RunConfig& base,
                                        const std::vector<SweepAxis>& axes,
                                        std::uint64_t replicas, int threads);

std::string sweep_csv(const std::vector<SweepAxis>& axes, int species_count,
                      const std::vector<SweepPointResult>& results);

} // namespace pcp

#endif
