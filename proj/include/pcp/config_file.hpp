#ifndef PCP_CONFIG_FILE_HPP
#define PCP_CONFIG_FILE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "pcp/brw.hpp"
#include "pcp/lattice.hpp"
#include "pcp/params.hpp"
#include "pcp/simulator.hpp"

namespace pcp {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat sectioned key = value run configuration. Parsing is strict:
// unknown sections or keys, missing required keys and malformed values
// are all errors.
struct RunConfig {
    LatticeSpec lattice{200, 100};
    SeasonalParams params;
    InitSpec init;
    double t_end = 0.0;
    double sample_dt = 0.0; // 0 = default D/20
    bool snapshots = true;
    bool box_counts = false;
    std::uint64_t seed = 1;
    double meanfield_dt = 0.0; // 0 = default D/100

    // quasi-coexistence window; zeros = default periods 2..4 of the run
    double window_start = 0.0;
    double window_end = 0.0;
    double threshold = 0.02;

    struct Brw {
        brw::Schedule schedule;
        double delta = 0.0;
        double t_end = 0.0;
        double sample_dt = 0.0; // 0 = default D/20
        std::uint64_t replicas = 1;
        std::optional<double> kill_T;
        std::uint64_t cap = 10000000;
        std::uint64_t n0 = 1; // initial particles at the origin
        // identity-test settings
        double box_corner_x = 0.0;
        double box_corner_y = 0.0;
        double box_side = 1.0;
        double walk_start_x = 0.0;
        double walk_start_y = 0.0;
        double target_time = 1.0;
    };
    std::optional<Brw> brw_section;

    double effective_sample_dt() const {
        return sample_dt > 0.0 ? sample_dt : params.D / 20.0;
    }
    double effective_window_start() const {
        return window_end > window_start ? window_start : 2.0 * params.D;
    }
    double effective_window_end() const {
        return window_end > window_start ? window_end : t_end;
    }
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);

} // namespace pcp

#endif
