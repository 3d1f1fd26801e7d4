#include "pcp/brw.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pcp {
namespace brw {

void Schedule::validate() const {
    if (!(D > 0.0)) throw std::invalid_argument("brw: schedule D must be > 0");
    if (!(alpha1 >= 0.0) || !(alpha2 >= 0.0))
        throw std::invalid_argument("brw: birth rates must be >= 0");
}

double Schedule::at(double t) const {
    return std::fmod(t, 2.0 * D) < D ? alpha1 : alpha2;
}

double Schedule::integral(double t) const {
    const double period = 2.0 * D;
    const double full = std::floor(t / period);
    double acc = full * D * (alpha1 + alpha2);
    const double rest = t - full * period;
    if (rest <= D) {
        acc += alpha1 * rest;
    } else {
        acc += alpha1 * D + alpha2 * (rest - D);
    }
    return acc;
}

KillSquare KillSquare::from_T(double T) {
    if (!(T > 0.0)) throw std::invalid_argument("brw: kill square needs T > 0");
    return {std::sqrt(T)};
}

double expected_count(const Schedule& schedule, double delta, double t) {
    schedule.validate();
    if (!(t >= 0.0)) throw std::invalid_argument("brw: t must be >= 0");
    if (!(delta >= 0.0)) throw std::invalid_argument("brw: delta must be >= 0");
    return std::exp(schedule.integral(t) - delta * t);
}

namespace {

// advance the season cell index so that t lies in [cell*D, (cell+1)*D)
struct SeasonClock {
    double D;
    long long cell = 0;
    double boundary() const { return static_cast<double>(cell + 1) * D; }
    double alpha(const Schedule& s) const { return cell % 2 == 0 ? s.alpha1 : s.alpha2; }
};

Point displaced(const Point& from, Rng& rng) {
    return {from[0] + rng.uniform_in(-1.0, 1.0), from[1] + rng.uniform_in(-1.0, 1.0)};
}

} // namespace

BrwResult brw_run(const Schedule& schedule, double delta,
                  const std::optional<KillSquare>& region,
                  const std::vector<Point>& start, double t_end, double sample_dt,
                  std::uint64_t seed, std::uint64_t cap) {
    schedule.validate();
    if (!(delta >= 0.0)) throw std::invalid_argument("brw: delta must be >= 0");
    if (!(t_end >= 0.0)) throw std::invalid_argument("brw: t_end must be >= 0");
    if (!(sample_dt > 0.0)) throw std::invalid_argument("brw: sample_dt must be > 0");
    if (region)
        for (const auto& p : start)
            if (!region->contains(p))
                throw std::invalid_argument("brw: start positions must lie inside the kill square");

    Rng rng(seed);
    std::vector<Point> particles = start;
    BrwResult out;
    SeasonClock clock{schedule.D};
    double t = 0.0;
    long long sample_idx = 0;
    auto flush_samples = [&](double now) {
        while (true) {
            const double ts = static_cast<double>(sample_idx) * sample_dt;
            if (ts > now || ts > t_end) break;
            out.sample_times.push_back(ts);
            out.counts.push_back(particles.size());
            ++sample_idx;
        }
    };

    while (true) {
        flush_samples(t);
        if (t >= t_end || particles.empty()) break;
        const double alpha = clock.alpha(schedule);
        const double rate = static_cast<double>(particles.size()) * (alpha + delta);
        const double next_sample = static_cast<double>(sample_idx) * sample_dt;
        const double stop = std::min({clock.boundary(), next_sample, t_end});
        const double t_next =
            rate > 0.0 ? t + rng.exponential(rate) : std::numeric_limits<double>::infinity();
        if (t_next >= stop) {
            t = stop;
            if (stop == clock.boundary()) ++clock.cell;
            continue;
        }
        t = t_next;
        ++out.events;
        const std::uint64_t k = rng.below(particles.size());
        if (rng.uniform() * (alpha + delta) < alpha) {
            const Point child = displaced(particles[k], rng);
            if (!region || region->contains(child)) {
                particles.push_back(child);
                if (particles.size() > cap) {
                    out.capped = true;
                    break;
                }
            }
        } else {
            particles[k] = particles.back();
            particles.pop_back();
        }
    }
    if (!out.capped) flush_samples(t_end);
    out.final_positions = std::move(particles);
    return out;
}

std::optional<Point> killed_walk(const Schedule& schedule,
                                 const std::optional<KillSquare>& region,
                                 Point start, double t_end, Rng& rng) {
    schedule.validate();
    if (region && !region->contains(start))
        throw std::invalid_argument("brw: walk start must lie inside the kill square");
    SeasonClock clock{schedule.D};
    double t = 0.0;
    Point pos = start;
    while (t < t_end) {
        const double alpha = clock.alpha(schedule);
        const double stop = std::min(clock.boundary(), t_end);
        const double t_next =
            alpha > 0.0 ? t + rng.exponential(alpha) : std::numeric_limits<double>::infinity();
        if (t_next >= stop) {
            t = stop;
            if (stop == clock.boundary() && stop < t_end) ++clock.cell;
            continue;
        }
        t = t_next;
        pos = displaced(pos, rng);
        if (region && !region->contains(pos)) return std::nullopt; // absorbed
    }
    return pos;
}

IdentityTestResult count_identity_test(const Schedule& schedule, double delta,
                                       const std::optional<KillSquare>& region,
                                       Point start, Point box_corner, double box_side,
                                       double t, std::uint64_t replicas,
                                       std::uint64_t seed) {
    schedule.validate();
    if (!(box_side > 0.0)) throw std::invalid_argument("brw: box side must be > 0");
    if (replicas < 2) throw std::invalid_argument("brw: need at least 2 replicas");
    if (region) {
        if (!region->contains(start))
            throw std::invalid_argument("brw: start must lie inside the kill square");
        const Point far_corner{box_corner[0] + box_side, box_corner[1] + box_side};
        if (!region->contains(box_corner) || !region->contains(far_corner))
            throw std::invalid_argument("brw: target box must lie inside the kill square");
    }
    auto in_box = [&](const Point& p) {
        return p[0] >= box_corner[0] && p[0] < box_corner[0] + box_side &&
               p[1] >= box_corner[1] && p[1] < box_corner[1] + box_side;
    };

    IdentityTestResult out;
    out.replicas = replicas;
    out.prefactor = std::exp(schedule.integral(t) - delta * t);

    // left side: mean box count of the branching cloud
    double sum = 0.0;
    double sumsq = 0.0;
    std::uint64_t used = 0;
    for (std::uint64_t k = 0; k < replicas; ++k) {
        const BrwResult r = brw_run(schedule, delta, region, {start}, t,
                                    std::max(t, 1e-12), seed ^ k);
        if (r.capped) {
            ++out.capped_runs;
            continue;
        }
        double c = 0.0;
        for (const auto& p : r.final_positions)
            if (in_box(p)) c += 1.0;
        sum += c;
        sumsq += c * c;
        ++used;
    }
    if (used < 2) throw std::runtime_error("brw: identity test lost all replicas to the cap");
    out.lhs_mean = sum / static_cast<double>(used);
    const double var_l =
        (sumsq - sum * sum / static_cast<double>(used)) / static_cast<double>(used - 1);
    out.lhs_se = std::sqrt(std::max(var_l, 0.0) / static_cast<double>(used));

    // right side: prefactor times hit probability of the single killed walk
    const std::uint64_t walk_salt = 0x77c11411ab0a9e35ULL;
    double hits = 0.0;
    for (std::uint64_t k = 0; k < replicas; ++k) {
        Rng rng(seed ^ walk_salt ^ k);
        const auto end = killed_walk(schedule, region, start, t, rng);
        if (end && in_box(*end)) hits += 1.0;
    }
    const double p_hat = hits / static_cast<double>(replicas);
    out.rhs_mean = out.prefactor * p_hat;
    out.rhs_se = out.prefactor *
                 std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(replicas));

    out.degenerate = out.lhs_mean == 0.0 && out.rhs_mean == 0.0;
    const double z99 = 2.5758293035489004; // two-sided 99% normal quantile
    const double lo_l = out.lhs_mean - z99 * out.lhs_se;
    const double hi_l = out.lhs_mean + z99 * out.lhs_se;
    const double lo_r = out.rhs_mean - z99 * out.rhs_se;
    const double hi_r = out.rhs_mean + z99 * out.rhs_se;
    out.pass = lo_l <= hi_r && lo_r <= hi_l;
    return out;
}

} // namespace brw
} // namespace pcp
