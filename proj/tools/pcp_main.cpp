// pcp: seasonal two-species competition toolkit.
//
// Subcommands: simulate, meanfield, check, sweep, brw. Exit codes:
// 0 success / verdict true, 1 verdict false, 2 usage or config error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pcp/config_file.hpp"
#include "pcp/invasibility.hpp"
#include "pcp/io.hpp"
#include "pcp/logistic.hpp"
#include "pcp/meanfield.hpp"
#include "pcp/simulator.hpp"
#include "pcp/sweep.hpp"

namespace fs = std::filesystem;

namespace {

struct Common {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, Common& common, bool config_required = true) {
    auto* opt = cmd->add_option("--config", common.config_path, "run configuration file");
    if (config_required) opt->required();
    cmd->add_option("--out", common.out_dir, "output directory (default: .)");
    cmd->add_option("--seed", common.seed, "override the configured seed")
        ->each([&common](const std::string&) { common.seed_set = true; });
}

pcp::RunConfig load(const Common& common) {
    pcp::RunConfig cfg = pcp::load_config(common.config_path);
    if (common.seed_set) cfg.seed = common.seed;
    return cfg;
}

std::string out_path(const Common& common, const std::string& name) {
    fs::create_directories(common.out_dir);
    return (fs::path(common.out_dir) / name).string();
}

// The bundled reference example: a fast ephemeral species against a slow
// steady competitor.
pcp::SeasonalParams example_params() {
    pcp::SeasonalParams p;
    p.S = 2;
    p.D = 1.0;
    p.beta = {{10000.0, 0.0}, {5.2, 1.0}};
    p.delta = {{6000.0, 100.0}, {2.0, 2.0}};
    return p;
}

int cmd_simulate(const Common& common) {
    const pcp::RunConfig cfg = load(common);
    pcp::ObserverSchedule schedule;
    schedule.sample_dt = cfg.effective_sample_dt();
    schedule.snapshots_at_boundaries = cfg.snapshots;
    schedule.box_counts = cfg.box_counts;
    const pcp::Trajectory traj =
        pcp::run(cfg.params, cfg.lattice, cfg.init, cfg.t_end, schedule, cfg.seed);
    pcp::write_file(out_path(common, "density.csv"), pcp::density_csv(traj));
    pcp::write_file(out_path(common, "summary.txt"), pcp::run_summary_text(traj));
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
        char name[64];
        std::snprintf(name, sizeof name, "snapshot_%04zu.txt", k);
        pcp::write_file(out_path(common, name),
                        pcp::snapshot_text(traj.snapshots[k].grid, traj.M));
    }
    return 0;
}

int cmd_meanfield(const Common& common) {
    const pcp::RunConfig cfg = load(common);
    std::vector<double> u0(static_cast<std::size_t>(cfg.params.S), 0.0);
    switch (cfg.init.mode) {
    case pcp::InitSpec::Mode::Product:
        u0 = cfg.init.densities;
        break;
    case pcp::InitSpec::Mode::Full:
        u0[static_cast<std::size_t>(cfg.init.species - 1)] = 1.0;
        break;
    case pcp::InitSpec::Mode::Box: {
        const double side_sites = cfg.init.side_units * cfg.lattice.L;
        const double sites = static_cast<double>(cfg.lattice.M) * cfg.lattice.M;
        u0[static_cast<std::size_t>(cfg.init.species - 1)] =
            side_sites * side_sites / sites;
        break;
    }
    }
    const double dt_req = cfg.meanfield_dt > 0.0 ? cfg.meanfield_dt : cfg.params.D / 100.0;
    const double dt = cfg.params.D / std::ceil(cfg.params.D / dt_req - 1e-12);
    const double cells = cfg.t_end / dt;
    if (std::abs(cells - std::llround(cells)) > 1e-9)
        throw pcp::ConfigError("meanfield: t_end must be a whole number of output steps; "
                               "use a t_end that is a multiple of D");
    const pcp::MeanFieldTrajectory traj = pcp::ode_solve(cfg.params, u0, cfg.t_end, dt);
    pcp::write_file(out_path(common, "meanfield.csv"), pcp::density_csv(traj));
    return 0;
}

int run_example_check(const Common& common) {
    const pcp::SeasonalParams params = example_params();
    pcp::InvasionReport report = pcp::theorem_check(params);
    report.anchor_bounds = pcp::anchor_bounds_check(params, report);
    pcp::write_file(out_path(common, "invasion_report.txt"),
                    pcp::report_key_value_text(report));

    const double season1_integral = pcp::logistic::flow_integral(
        report.anchors2.p1, params.D, params.birth(2, 1), params.death(2, 1));
    bool ok = true;
    auto expect = [&](bool cond, const std::string& what) {
        std::printf("%s  %s\n", cond ? "ok  " : "FAIL", what.c_str());
        ok = ok && cond;
    };
    expect(std::abs(season1_integral - 0.366066) <= 1e-4,
           "season-1 resident integral = " + pcp::format_double(season1_integral) +
               " (reference 0.366066 within 1e-4)");
    expect(report.dir12.index > 3050.0 && std::abs(report.dir12.index - 3169.7) <= 0.5,
           "invasion index 1 = " + pcp::format_double(report.dir12.index) +
               " (exceeds 3050, near 3169.7)");
    expect(report.dir21.index > 2.0 && report.dir21.index >= 2.058 - 1e-3,
           "invasion index 2 = " + pcp::format_double(report.dir21.index) +
               " (exceeds 2.0 and the 2.058 bound)");
    expect(report.verdict, "mutual invadability verdict");
    return ok ? 0 : 1;
}

int cmd_check(const Common& common, bool corollary3, bool example) {
    if (example) return run_example_check(common);
    const pcp::RunConfig cfg = load(common);
    if (cfg.params.S != 2)
        throw pcp::ConfigError("check: needs a two-species configuration");
    pcp::InvasionReport report = pcp::theorem_check(cfg.params);
    if (corollary3) report.anchor_bounds = pcp::anchor_bounds_check(cfg.params, report);
    pcp::write_file(out_path(common, "invasion_report.txt"),
                    pcp::report_key_value_text(report));
    pcp::write_file(out_path(common, "invasion_report.csv"),
                    pcp::report_csv_header() + "\n" + pcp::report_csv_row(report) + "\n");
    return report.verdict ? 0 : 1;
}

int cmd_sweep(const Common& common, const std::vector<std::string>& grid_specs,
              std::uint64_t replicas, int threads) {
    const pcp::RunConfig cfg = load(common);
    if (grid_specs.empty() || grid_specs.size() > 2)
        throw pcp::ConfigError("sweep: need one or two --grid axes");
    std::vector<pcp::SweepAxis> axes;
    for (const auto& g : grid_specs) axes.push_back(pcp::parse_axis(g));
    const auto results = pcp::run_sweep(cfg, axes, replicas, threads);
    pcp::write_file(out_path(common, "sweep.csv"),
                    pcp::sweep_csv(axes, cfg.params.S, results));
    return 0;
}

int cmd_brw(const Common& common, const std::string& mode) {
    const pcp::RunConfig cfg = load(common);
    if (!cfg.brw_section) throw pcp::ConfigError("brw: config has no [brw] section");
    const auto& b = *cfg.brw_section;
    std::optional<pcp::brw::KillSquare> region;
    if (b.kill_T) region = pcp::brw::KillSquare::from_T(*b.kill_T);

    if (mode == "identity") {
        const auto r = pcp::brw::count_identity_test(
            b.schedule, b.delta, region, {b.walk_start_x, b.walk_start_y},
            {b.box_corner_x, b.box_corner_y}, b.box_side, b.target_time, b.replicas,
            cfg.seed);
        std::string s;
        auto put = [&](const std::string& k, const std::string& v) { s += k + " = " + v + "\n"; };
        put("replicas", std::to_string(r.replicas));
        put("capped_runs", std::to_string(r.capped_runs));
        put("prefactor", pcp::format_double(r.prefactor));
        put("lhs_mean", pcp::format_double(r.lhs_mean));
        put("lhs_se", pcp::format_double(r.lhs_se));
        put("rhs_mean", pcp::format_double(r.rhs_mean));
        put("rhs_se", pcp::format_double(r.rhs_se));
        put("degenerate", r.degenerate ? "true" : "false");
        put("pass", r.pass ? "true" : "false");
        pcp::write_file(out_path(common, "brw_identity.txt"), s);
        return r.pass ? 0 : 1;
    }
    if (mode != "run") throw pcp::ConfigError("brw: mode must be run or identity");

    const double sample_dt = b.sample_dt > 0.0 ? b.sample_dt : cfg.params.D / 20.0;
    std::vector<pcp::brw::Point> start(static_cast<std::size_t>(b.n0), {0.0, 0.0});
    double sum = 0.0;
    double sumsq = 0.0;
    std::uint64_t capped = 0;
    std::string first_series;
    for (std::uint64_t k = 0; k < b.replicas; ++k) {
        const auto r = pcp::brw::brw_run(b.schedule, b.delta, region, start, b.t_end,
                                         sample_dt, cfg.seed ^ k, b.cap);
        if (k == 0) first_series = pcp::count_csv(r.sample_times, r.counts);
        if (r.capped) {
            ++capped;
            continue;
        }
        const double c = static_cast<double>(r.final_positions.size());
        sum += c;
        sumsq += c * c;
    }
    const auto used = static_cast<double>(b.replicas - capped);
    const double mean = used > 0 ? sum / used : 0.0;
    const double var = used > 1 ? (sumsq - sum * sum / used) / (used - 1.0) : 0.0;
    std::string s;
    auto put = [&](const std::string& k, const std::string& v) { s += k + " = " + v + "\n"; };
    put("replicas", std::to_string(b.replicas));
    put("capped_runs", std::to_string(capped));
    put("mean_final_count", pcp::format_double(mean));
    put("se_final_count",
        pcp::format_double(used > 1 ? std::sqrt(std::max(var, 0.0) / used) : 0.0));
    put("expected_final_count",
        pcp::format_double(static_cast<double>(b.n0) *
                           pcp::brw::expected_count(b.schedule, b.delta, b.t_end)));
    pcp::write_file(out_path(common, "brw_counts.csv"), first_series);
    pcp::write_file(out_path(common, "brw_summary.txt"), s);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"seasonal competition lattice simulator and mean-field toolkit"};
    app.require_subcommand(1);

    Common sim_common;
    auto* simulate = app.add_subcommand("simulate", "run the lattice simulation");
    add_common(simulate, sim_common);

    Common mf_common;
    auto* meanfield = app.add_subcommand("meanfield", "integrate the mean-field system");
    add_common(meanfield, mf_common);

    Common check_common;
    bool corollary3 = false;
    bool example = false;
    auto* check = app.add_subcommand("check", "evaluate the coexistence conditions");
    add_common(check, check_common, false);
    check->add_flag("--corollary3", corollary3, "also evaluate the explicit anchor-bound condition");
    check->add_flag("--example", example, "run the built-in reference example");

    Common sweep_common;
    std::vector<std::string> grid_specs;
    std::uint64_t replicas = 1;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    auto* sweep = app.add_subcommand("sweep", "parameter sweep with replica simulations");
    add_common(sweep, sweep_common);
    sweep->add_option("--grid", grid_specs, "axis spec name=lo:hi:count (max two)");
    sweep->add_option("--replicas", replicas, "simulation replicas per grid point");
    sweep->add_option("--threads", threads, "worker threads");

    Common brw_common;
    std::string brw_mode = "run";
    auto* brw = app.add_subcommand("brw", "periodic branching random walk");
    add_common(brw, brw_common);
    brw->add_option("--mode", brw_mode, "run | identity");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // usage errors
    }

    try {
        if (simulate->parsed()) return cmd_simulate(sim_common);
        if (meanfield->parsed()) return cmd_meanfield(mf_common);
        if (check->parsed()) {
            if (!example && check_common.config_path.empty()) {
                std::fprintf(stderr, "check: --config or --example required\n");
                return 2;
            }
            return cmd_check(check_common, corollary3, example);
        }
        if (sweep->parsed()) return cmd_sweep(sweep_common, grid_specs, replicas, threads);
        if (brw->parsed()) return cmd_brw(brw_common, brw_mode);
    } catch (const pcp::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
