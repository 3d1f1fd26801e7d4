#include "pcp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pcp {

Configuration init_configuration(const LatticeSpec& spec, int species_count,
                                 const InitSpec& init, Rng& rng) {
    spec.validate();
    if (species_count < 1 || species_count > 9)
        throw std::invalid_argument("init: species count must be in 1..9");
    Configuration config(spec, species_count);
    switch (init.mode) {
    case InitSpec::Mode::Product: {
        if (init.densities.size() != static_cast<std::size_t>(species_count))
            throw std::invalid_argument("init: one density per species required");
        double total = 0.0;
        for (double d : init.densities) {
            if (!(d >= 0.0)) throw std::invalid_argument("init: densities must be >= 0");
            total += d;
        }
        if (total > 1.0 + 1e-12)
            throw std::invalid_argument("init: densities must sum to at most 1");
        for (std::uint32_t site = 0; site < static_cast<std::uint32_t>(spec.sites()); ++site) {
            const double u = rng.uniform();
            double acc = 0.0;
            for (int i = 1; i <= species_count; ++i) {
                acc += init.densities[static_cast<std::size_t>(i - 1)];
                if (u < acc) {
                    config.set(site, static_cast<std::uint8_t>(i));
                    break;
                }
            }
        }
        break;
    }
    case InitSpec::Mode::Full: {
        if (init.species < 1 || init.species > species_count)
            throw std::invalid_argument("init: species out of range");
        for (std::uint32_t site = 0; site < static_cast<std::uint32_t>(spec.sites()); ++site)
            config.set(site, static_cast<std::uint8_t>(init.species));
        break;
    }
    case InitSpec::Mode::Box: {
        if (init.species < 1 || init.species > species_count)
            throw std::invalid_argument("init: species out of range");
        const double sites_exact = init.side_units * spec.L;
        const long long side = std::llround(sites_exact);
        if (std::abs(sites_exact - static_cast<double>(side)) > 1e-9 || side < 1 ||
            side > spec.M)
            throw std::invalid_argument("init: box side must be a whole number of sites on the torus");
        for (long long dr = 0; dr < side; ++dr)
            for (long long dc = 0; dc < side; ++dc)
                config.set(spec.shifted(init.corner, static_cast<int>(dr), static_cast<int>(dc)),
                           static_cast<std::uint8_t>(init.species));
        break;
    }
    }
    return config;
}

SimState::SimState(const SeasonalParams& params, const LatticeSpec& spec,
                   Configuration config, std::uint64_t seed)
    : params_(params), spec_(spec), config_(std::move(config)), rng_(seed) {
    spec_.validate();
    if (params_.S != config_.species_count())
        throw std::invalid_argument("SimState: params and configuration disagree on species count");
    counters_.deaths.assign(static_cast<std::size_t>(params_.S), 0);
    counters_.births_ok.assign(static_cast<std::size_t>(params_.S), 0);
    counters_.births_suppressed.assign(static_cast<std::size_t>(params_.S), 0);
}

double SimState::total_rate() const {
    const int s = season();
    double R = 0.0;
    for (int i = 1; i <= params_.S; ++i)
        R += static_cast<double>(config_.count(i)) * (params_.birth(i, s) + params_.death(i, s));
    return R;
}

StepOutcome SimState::step(double t_limit, EventRecord* event) {
    if (config_.total_occupied() == 0) return StepOutcome::Absorbed;

    const int s = season();
    double weights[9];
    double R = 0.0;
    for (int i = 1; i <= params_.S; ++i) {
        const double w = static_cast<double>(config_.count(i)) *
                         (params_.birth(i, s) + params_.death(i, s));
        weights[i - 1] = w;
        R += w;
    }

    const double boundary = next_boundary();
    const double stop = boundary <= t_limit ? boundary : t_limit;
    const double t_next = R > 0.0 ? t_ + rng_.exponential(R)
                                  : std::numeric_limits<double>::infinity();
    if (t_next >= stop) {
        t_ = stop;
        if (stop == boundary) {
            ++season_cell_;
            ++counters_.boundary_crossings;
            return StepOutcome::SeasonBoundary;
        }
        return StepOutcome::ReachedLimit;
    }
    t_ = t_next;

    // species pick proportional to count * (birth + death); rounding
    // overshoot falls back to the last species that can be picked
    double x = rng_.uniform() * R;
    int species = 0;
    for (int i = 1; i <= params_.S; ++i) {
        if (weights[i - 1] <= 0.0) continue;
        species = i;
        if (x < weights[i - 1]) break;
        x -= weights[i - 1];
    }

    const std::uint32_t origin = config_.random_occupied(species, rng_);
    const double birth = params_.birth(species, s);
    const double death = params_.death(species, s);
    ++counters_.events;

    EventRecord rec;
    rec.t = t_;
    rec.species = static_cast<std::uint8_t>(species);
    if (rng_.uniform() * (birth + death) < death) {
        config_.set(origin, 0);
        ++counters_.deaths[static_cast<std::size_t>(species - 1)];
        rec.site = origin;
        rec.kind = EventKind::Death;
    } else {
        const std::uint32_t target = spec_.random_neighbor(origin, rng_);
        rec.site = target;
        if (config_.state(target) == 0) {
            config_.set(target, static_cast<std::uint8_t>(species));
            ++counters_.births_ok[static_cast<std::size_t>(species - 1)];
            rec.kind = EventKind::BirthSuccess;
        } else {
            ++counters_.births_suppressed[static_cast<std::size_t>(species - 1)];
            rec.kind = EventKind::BirthSuppressed;
        }
    }
    if (event) *event = rec;
    return StepOutcome::Event;
}

namespace {

std::vector<std::vector<long long>> collect_box_counts(const Configuration& config,
                                                       const LatticeSpec& spec) {
    const int boxes_per_side = spec.M / spec.L;
    const std::size_t n_boxes = static_cast<std::size_t>(boxes_per_side) *
                                static_cast<std::size_t>(boxes_per_side);
    std::vector<std::vector<long long>> out(
        static_cast<std::size_t>(config.species_count()),
        std::vector<long long>(n_boxes, 0));
    for (std::uint32_t site = 0; site < static_cast<std::uint32_t>(spec.sites()); ++site) {
        const std::uint8_t st = config.state(site);
        if (st == 0) continue;
        const std::size_t box = static_cast<std::size_t>(spec.row_of(site) / spec.L) *
                                    static_cast<std::size_t>(boxes_per_side) +
                                static_cast<std::size_t>(spec.col_of(site) / spec.L);
        ++out[static_cast<std::size_t>(st - 1)][box];
    }
    return out;
}

} // namespace

Trajectory run_from(const SeasonalParams& params, const LatticeSpec& spec,
                    Configuration config, double t_end,
                    const ObserverSchedule& schedule, std::uint64_t seed) {
    if (!(t_end >= 0.0)) throw std::invalid_argument("run: t_end must be >= 0");
    if (!(schedule.sample_dt > 0.0))
        throw std::invalid_argument("run: sampling interval must be > 0");
    if (schedule.box_counts && spec.M % spec.L != 0)
        throw std::invalid_argument("run: box counts need M to be a multiple of L");

    SimState state(params, spec, std::move(config), seed);
    const double INF = std::numeric_limits<double>::infinity();

    Trajectory out;
    out.S = params.S;
    out.M = spec.M;
    out.L = spec.L;
    out.t_end = t_end;

    long long sample_idx = 0;
    long long snap_idx = 0;
    auto sample_time = [&]() {
        const double t = static_cast<double>(sample_idx) * schedule.sample_dt;
        return t <= t_end ? t : INF;
    };
    auto snap_time = [&]() {
        if (!schedule.snapshots_at_boundaries) return INF;
        const double t = static_cast<double>(snap_idx) * params.D;
        return t <= t_end ? t : INF;
    };
    auto record_sample = [&](double t) {
        TrajectorySample sample;
        sample.t = t;
        sample.counts.resize(static_cast<std::size_t>(params.S));
        for (int i = 1; i <= params.S; ++i)
            sample.counts[static_cast<std::size_t>(i - 1)] = state.config().count(i);
        if (schedule.box_counts)
            sample.box_counts = collect_box_counts(state.config(), spec);
        out.samples.push_back(std::move(sample));
    };

    while (true) {
        // flush observations due at the current clock (the stepper stops
        // exactly on them, so state is the pre-observation state)
        while (sample_time() <= state.time()) {
            record_sample(sample_time());
            ++sample_idx;
        }
        while (snap_time() <= state.time()) {
            out.snapshots.push_back({snap_time(), state.config().grid()});
            ++snap_idx;
        }
        if (state.time() >= t_end) break;

        const double t_limit = std::min({sample_time(), snap_time(), t_end});
        const StepOutcome outcome = state.step(t_limit);
        if (outcome == StepOutcome::Absorbed) {
            out.absorbed = true;
            out.absorption_time = state.time();
            if (out.samples.empty() || out.samples.back().t < state.time())
                record_sample(state.time());
            break;
        }
    }

    out.counters = state.counters();
    out.final_grid = state.config().grid();
    return out;
}

Trajectory run(const SeasonalParams& params, const LatticeSpec& spec,
               const InitSpec& init, double t_end, const ObserverSchedule& schedule,
               std::uint64_t seed) {
    Rng init_rng(seed);
    Configuration config = init_configuration(spec, params.S, init, init_rng);
    // dynamics continue on a seed derived from the same stream
    return run_from(params, spec, std::move(config), t_end, schedule, init_rng.next());
}

std::vector<bool> quasi_coexistence(const Trajectory& traj, double w0, double w1,
                                    double threshold) {
    if (!(w1 > w0)) throw std::invalid_argument("quasi_coexistence: empty window");
    if (w0 < 0.0 || w1 > traj.t_end + 1e-9)
        throw std::invalid_argument("quasi_coexistence: window outside simulated horizon");
    std::vector<bool> verdict(static_cast<std::size_t>(traj.S), true);
    bool any = false;
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
        const double t = traj.samples[k].t;
        if (t < w0 || t > w1) continue;
        any = true;
        for (int i = 1; i <= traj.S; ++i)
            if (traj.density(k, i) < threshold)
                verdict[static_cast<std::size_t>(i - 1)] = false;
    }
    if (!any) throw std::invalid_argument("quasi_coexistence: no samples in window");
    if (traj.absorbed && traj.absorption_time <= w1 && threshold > 0.0)
        verdict.assign(static_cast<std::size_t>(traj.S), false);
    return verdict;
}

} // namespace pcp
