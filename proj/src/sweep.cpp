#include "pcp/sweep.hpp"

#include <atomic>
#include <thread>

#include "pcp/io.hpp"
#include "pcp/meanfield.hpp"

namespace pcp {

SweepAxis parse_axis(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw ConfigError("sweep: axis must look like name=lo:hi:count");
    SweepAxis axis;
    axis.name = spec.substr(0, eq);
    const std::string rest = spec.substr(eq + 1);
    const auto c1 = rest.find(':');
    const auto c2 = rest.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ConfigError("sweep: axis must look like name=lo:hi:count");
    double lo;
    double hi;
    long long n;
    try {
        lo = std::stod(rest.substr(0, c1));
        hi = std::stod(rest.substr(c1 + 1, c2 - c1 - 1));
        n = std::stoll(rest.substr(c2 + 1));
    } catch (...) {
        throw ConfigError("sweep: bad axis numbers in '" + spec + "'");
    }
    if (n < 1) throw ConfigError("sweep: axis count must be >= 1");
    if (n == 1) {
        axis.values.push_back(lo);
    } else {
        for (long long k = 0; k < n; ++k)
            axis.values.push_back(lo + (hi - lo) * static_cast<double>(k) /
                                           static_cast<double>(n - 1));
    }
    return axis;
}

void apply_param(RunConfig& config, const std::string& name, double value) {
    if (name == "D") {
        if (!(value > 0.0)) throw ConfigError("sweep: D must be > 0");
        config.params.D = value;
        return;
    }
    const bool is_beta = name.rfind("beta_", 0) == 0;
    const bool is_delta = name.rfind("delta_", 0) == 0;
    if (!is_beta && !is_delta)
        throw ConfigError("sweep: unknown parameter '" + name + "'");
    const std::string idx = name.substr(is_beta ? 5 : 6);
    const auto us = idx.find('_');
    if (us == std::string::npos)
        throw ConfigError("sweep: rate parameters look like beta_<i>_<j>");
    long long i;
    long long j;
    try {
        i = std::stoll(idx.substr(0, us));
        j = std::stoll(idx.substr(us + 1));
    } catch (...) {
        throw ConfigError("sweep: bad indices in '" + name + "'");
    }
    if (i < 1 || i > config.params.S || (j != 1 && j != 2))
        throw ConfigError("sweep: indices out of range in '" + name + "'");
    auto& table = is_beta ? config.params.beta : config.params.delta;
    table[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = value;
}

std::vector<SweepPointResult> run_sweep(const RunConfig& base,
                                        const std::vector<SweepAxis>& axes,
                                        std::uint64_t replicas, int threads) {
    if (axes.empty() || axes.size() > 2)
        throw ConfigError("sweep: need one or two axes");
    if (replicas < 1) throw ConfigError("sweep: replicas must be >= 1");

    std::vector<std::vector<double>> points;
    if (axes.size() == 1) {
        for (double a : axes[0].values) points.push_back({a});
    } else {
        for (double a : axes[0].values)
            for (double b : axes[1].values) points.push_back({a, b});
    }

    std::vector<SweepPointResult> results(points.size());
    std::vector<RunConfig> configs(points.size(), base);
    for (std::size_t p = 0; p < points.size(); ++p) {
        results[p].axis_values = points[p];
        for (std::size_t a = 0; a < axes.size(); ++a)
            apply_param(configs[p], axes[a].name, points[p][a]);
        configs[p].params.validate();
        const auto& params = configs[p].params;
        for (int i = 1; i <= params.S; ++i)
            results[p].mf_survives.push_back(single_species_survives(params, i));
        if (params.S == 2) results[p].report = theorem_check(params);
        results[p].coex_fraction.assign(static_cast<std::size_t>(params.S), 0.0);
    }

    struct Task {
        std::size_t point;
        std::uint64_t replica;
    };
    std::vector<Task> tasks;
    tasks.reserve(points.size() * replicas);
    for (std::size_t p = 0; p < points.size(); ++p)
        for (std::uint64_t k = 0; k < replicas; ++k) tasks.push_back({p, k});

    // per-task verdicts, folded after the parallel section
    std::vector<std::vector<bool>> verdicts(tasks.size());
    std::vector<char> absorbed(tasks.size(), 0);
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t k = cursor.fetch_add(1);
            if (k >= tasks.size()) break;
            const auto& cfg = configs[tasks[k].point];
            ObserverSchedule schedule;
            schedule.sample_dt = cfg.effective_sample_dt();
            const Trajectory traj = run(cfg.params, cfg.lattice, cfg.init, cfg.t_end,
                                        schedule, cfg.seed ^ tasks[k].replica);
            verdicts[k] = quasi_coexistence(traj, cfg.effective_window_start(),
                                            cfg.effective_window_end(), cfg.threshold);
            absorbed[k] = traj.absorbed ? 1 : 0;
        }
    };
    const int n_threads =
        std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int w = 0; w < n_threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    for (std::size_t k = 0; k < tasks.size(); ++k) {
        auto& res = results[tasks[k].point];
        for (std::size_t i = 0; i < verdicts[k].size(); ++i)
            if (verdicts[k][i]) res.coex_fraction[i] += 1.0;
        if (absorbed[k]) res.absorbed_fraction += 1.0;
    }
    for (auto& res : results) {
        for (auto& f : res.coex_fraction) f /= static_cast<double>(replicas);
        res.absorbed_fraction /= static_cast<double>(replicas);
    }
    return results;
}

std::string sweep_csv(const std::vector<SweepAxis>& axes, int species_count,
                      const std::vector<SweepPointResult>& results) {
    std::string s;
    for (const auto& a : axes) s += a.name + ",";
    for (int i = 1; i <= species_count; ++i) s += "mf_survives_" + std::to_string(i) + ",";
    if (species_count == 2) s += "mf_margin_1,mf_margin_2,mf_verdict,";
    for (int i = 1; i <= species_count; ++i) s += "coex_frac_" + std::to_string(i) + ",";
    s += "absorbed_frac\n";
    for (const auto& res : results) {
        for (double v : res.axis_values) s += format_double(v) + ",";
        for (bool b : res.mf_survives) s += std::string(b ? "1" : "0") + ",";
        if (species_count == 2) {
            s += format_double(res.report->dir12.margin) + ",";
            s += format_double(res.report->dir21.margin) + ",";
            s += std::string(res.report->verdict ? "1" : "0") + ",";
        }
        for (double f : res.coex_fraction) s += format_double(f) + ",";
        s += format_double(res.absorbed_fraction) + "\n";
    }
    return s;
}

} // namespace pcp
