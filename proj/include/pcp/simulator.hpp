#ifndef PCP_SIMULATOR_HPP
#define PCP_SIMULATOR_HPP

#include <cstdint>
#include <vector>

#include "pcp/configuration.hpp"
#include "pcp/lattice.hpp"
#include "pcp/params.hpp"
#include "pcp/rng.hpp"

namespace pcp {

// Initial-condition modes: independent product measure with per-species
// densities, everything occupied by one species, or one species filling
// a square block of the given physical side.
struct InitSpec {
    enum class Mode { Product, Full, Box };
    Mode mode = Mode::Product;
    std::vector<double> densities; // product mode, one entry per species
    int species = 1;               // full / box modes
    std::uint32_t corner = 0;      // box mode
    double side_units = 1.0;       // box mode, physical units
};

Configuration init_configuration(const LatticeSpec& spec, int species_count,
                                 const InitSpec& init, Rng& rng);

enum class EventKind : std::uint8_t { Death, BirthSuccess, BirthSuppressed };

struct EventRecord {
    double t = 0.0;
    std::uint32_t site = 0; // dying site, or the birth target
    EventKind kind = EventKind::Death;
    std::uint8_t species = 0;
};

enum class StepOutcome : std::uint8_t {
    Event,          // one event applied
    SeasonBoundary, // clock advanced to a season boundary, rates switched
    ReachedLimit,   // clock advanced to the caller's time limit
    Absorbed        // no occupied sites remain
};

struct SimCounters {
    std::uint64_t events = 0;
    std::uint64_t boundary_crossings = 0;
    std::vector<std::uint64_t> deaths;
    std::vector<std::uint64_t> births_ok;
    std::vector<std::uint64_t> births_suppressed;
};

// Occupied-site-driven event engine. Each occupied site of species i
// emits birth attempts at rate beta_i (target drawn uniformly from its
// neighborhood, suppressed if the target is occupied) and dies at rate
// delta_i. Summed over occupied neighbors this reproduces the per-site
// colonization rate beta_i * f_i. Waiting times that would cross a
// season boundary or the caller's limit are truncated there and redrawn,
// which is exact for piecewise-constant-rate chains by memorylessness.
class SimState {
public:
    SimState(const SeasonalParams& params, const LatticeSpec& spec,
             Configuration config, std::uint64_t seed);

    StepOutcome step(double t_limit, EventRecord* event = nullptr);

    double time() const { return t_; }
    int season() const { return season_cell_ % 2 == 0 ? 1 : 2; }
    double next_boundary() const {
        return static_cast<double>(season_cell_ + 1) * params_.D;
    }

    // total event rate, derived from the integer occupancy counts
    double total_rate() const;

    const Configuration& config() const { return config_; }
    Configuration& config_mutable() { return config_; }
    const SimCounters& counters() const { return counters_; }
    const SeasonalParams& params() const { return params_; }
    const LatticeSpec& spec() const { return spec_; }
    Rng& rng() { return rng_; }

private:
    SeasonalParams params_;
    LatticeSpec spec_;
    Configuration config_;
    double t_ = 0.0;
    long long season_cell_ = 0; // t lies in [season_cell_ * D, (season_cell_+1) * D)
    Rng rng_;
    SimCounters counters_;
};

struct ObserverSchedule {
    double sample_dt = 0.0;               // required, > 0
    bool snapshots_at_boundaries = false; // grid copies at t = kD
    bool box_counts = false;              // per-unit-box counts (needs M % L == 0)
};

struct TrajectorySample {
    double t = 0.0;
    std::vector<long long> counts;                  // per species
    std::vector<std::vector<long long>> box_counts; // [species][box], optional
};

struct GridSnapshot {
    double t = 0.0;
    std::vector<std::uint8_t> grid;
};

struct Trajectory {
    int S = 0;
    int M = 0;
    int L = 0;
    double t_end = 0.0;
    std::vector<TrajectorySample> samples;
    std::vector<GridSnapshot> snapshots;
    bool absorbed = false;
    double absorption_time = 0.0;
    SimCounters counters;
    std::vector<std::uint8_t> final_grid;

    double density(std::size_t sample, int species) const {
        return static_cast<double>(samples[sample].counts[static_cast<std::size_t>(species - 1)]) /
               (static_cast<double>(M) * static_cast<double>(M));
    }
};

// Run the simulation from a prepared configuration. Deterministic given
// the seed; the same seed must be used for init and dynamics to
// reproduce a run (run() below does both).
Trajectory run_from(const SeasonalParams& params, const LatticeSpec& spec,
                    Configuration config, double t_end,
                    const ObserverSchedule& schedule, std::uint64_t seed);

// Build the initial configuration and run.
Trajectory run(const SeasonalParams& params, const LatticeSpec& spec,
               const InitSpec& init, double t_end,
               const ObserverSchedule& schedule, std::uint64_t seed);

// Density floor over a time window: true for a species iff its sampled
// density stays >= threshold throughout [w0, w1]. A run absorbed before
// the window end fails every species.
std::vector<bool> quasi_coexistence(const Trajectory& traj, double w0, double w1,
                                    double threshold);

} // namespace pcp

#endif
