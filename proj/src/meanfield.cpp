#include "pcp/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pcp {

namespace {

long long whole_multiple(double value, double dt, const char* what) {
    const double q = value / dt;
    const long long n = std::llround(q);
    if (n < 0 || std::abs(q - static_cast<double>(n)) > 1e-9 * std::max(1.0, q))
        throw std::invalid_argument(std::string(what) + " must be a whole multiple of dt");
    return n;
}

// One RK4 step of the fixed-season right-hand side.
void rk4_step(std::vector<double>& u, double h, const std::vector<double>& b,
              const std::vector<double>& d, std::vector<double>* scratch) {
    const std::size_t n = u.size();
    auto rhs = [&](const std::vector<double>& v, std::vector<double>& out) {
        double occ = 0.0;
        for (double vi : v) occ += vi;
        const double empty = 1.0 - occ;
        for (std::size_t i = 0; i < n; ++i) out[i] = v[i] * (b[i] * empty - d[i]);
    };
    std::vector<double>& k1 = scratch[0];
    std::vector<double>& k2 = scratch[1];
    std::vector<double>& k3 = scratch[2];
    std::vector<double>& k4 = scratch[3];
    std::vector<double>& tmp = scratch[4];
    rhs(u, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * h * k1[i];
    rhs(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * h * k2[i];
    rhs(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + h * k3[i];
    rhs(tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
        u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

} // namespace

MeanFieldTrajectory ode_solve(const SeasonalParams& params,
                              const std::vector<double>& u0, double t_end,
                              double dt) {
    params.validate();
    if (u0.size() != static_cast<std::size_t>(params.S))
        throw std::invalid_argument("ode_solve: u0 must have one entry per species");
    double total0 = 0.0;
    for (double v : u0) {
        if (!(v >= 0.0)) throw std::invalid_argument("ode_solve: u0 must be componentwise >= 0");
        total0 += v;
    }
    if (total0 > 1.0 + 1e-12) throw std::invalid_argument("ode_solve: sum of u0 must be <= 1");
    if (!(dt > 0.0)) throw std::invalid_argument("ode_solve: dt must be > 0");
    if (!(t_end >= 0.0)) throw std::invalid_argument("ode_solve: t_end must be >= 0");
    const long long cells_per_season = whole_multiple(params.D, dt, "ode_solve: D");
    if (cells_per_season < 1) throw std::invalid_argument("ode_solve: dt must not exceed D");
    const long long n_cells = whole_multiple(t_end, dt, "ode_solve: t_end");

    const std::size_t n = static_cast<std::size_t>(params.S);
    std::vector<double> u = u0;
    std::vector<double> scratch_storage[5];
    for (auto& s : scratch_storage) s.assign(n, 0.0);

    MeanFieldTrajectory out;
    out.times.reserve(static_cast<std::size_t>(n_cells) + 1);
    out.states.reserve(static_cast<std::size_t>(n_cells) + 1);
    out.times.push_back(0.0);
    out.states.push_back(u);

    std::vector<double> b(n);
    std::vector<double> d(n);
    for (long long cell = 0; cell < n_cells; ++cell) {
        // season from integer cell arithmetic: exact at season boundaries
        const int season = (cell / cells_per_season) % 2 == 0 ? 1 : 2;
        double rate_max = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            b[i] = params.birth(static_cast<int>(i) + 1, season);
            d[i] = params.death(static_cast<int>(i) + 1, season);
            rate_max = std::max(rate_max, b[i] + d[i]);
        }
        // sub-step so the fastest in-season rate stays well resolved
        const double h_target = std::min({dt, 1e-2, 0.1 / std::max(rate_max, 1e-300)});
        const int substeps = std::max(1, static_cast<int>(std::ceil(dt / h_target - 1e-12)));
        const double h = dt / static_cast<double>(substeps);
        for (int s = 0; s < substeps; ++s) rk4_step(u, h, b, d, scratch_storage);

        double total = 0.0;
        for (auto& v : u) {
            if (v < 0.0) {
                if (v < -1e-8) throw std::runtime_error("ode_solve: invariant region violated (step size too large)");
                v = 0.0;
            }
            total += v;
        }
        if (total > 1.0 + 1e-8)
            throw std::runtime_error("ode_solve: invariant region violated (step size too large)");

        out.times.push_back(static_cast<double>(cell + 1) * dt);
        out.states.push_back(u);
    }
    return out;
}

bool single_species_survives(const SeasonalParams& params, int species) {
    params.check_species(species);
    const double mean_birth = 0.5 * (params.birth(species, 1) + params.birth(species, 2));
    const double mean_death = 0.5 * (params.death(species, 1) + params.death(species, 2));
    return mean_birth > mean_death;
}

} // namespace pcp
