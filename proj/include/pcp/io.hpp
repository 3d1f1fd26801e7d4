#ifndef PCP_IO_HPP
#define PCP_IO_HPP

#include <string>
#include <vector>

#include "pcp/meanfield.hpp"
#include "pcp/simulator.hpp"

namespace pcp {

// Density CSV: header "t,dens_1,..,dens_S,empty"; every field printed
// with %.10g. The empty column completes the row sum to 1.
std::string density_csv(const Trajectory& traj);
std::string density_csv(const MeanFieldTrajectory& traj);

// Plain-text grid snapshot: M rows of M digits in 0..S.
std::string snapshot_text(const std::vector<std::uint8_t>& grid, int M);

// Count-series CSV: header "t,count".
std::string count_csv(const std::vector<double>& times,
                      const std::vector<std::uint64_t>& counts);

// Run summary (counters, absorption) as flat key = value text.
std::string run_summary_text(const Trajectory& traj);

void write_file(const std::string& path, const std::string& content);

std::string format_double(double v); // %.10g

} // namespace pcp

#endif
