#include "pcp/equilibrium.hpp"

#include <cmath>
#include <stdexcept>

namespace pcp {

namespace {

using logistic::Flow;

// Each season flow is the Moebius map u -> A u / (C u + 1) with
//   generic:        A = e^{rD},   C = beta (e^{rD} - 1) / r
//   beta = 0:       A = e^{-dD},  C = 0
//   r = 0:          A = 1,        C = beta D
// log A = rD in every branch, so survival of the composed map F with
// multiplier A1 A2 is exactly log A1 + log A2 = (r1 + r2) D > 0.

double log_mult(const Flow& f, double D) { return f.r() * D; }

// C coefficient, safe when rD <= 0 is possible but rD is not large positive
double coef_c(const Flow& f, double D) {
    if (f.beta == 0.0) return 0.0;
    const double r = f.r();
    if (r == 0.0) return f.beta * D;
    return f.beta * std::expm1(r * D) / r;
}

// C/A = beta (1 - e^{-rD}) / r, safe when rD >= 0
double coef_c_over_a(const Flow& f, double D) {
    if (f.beta == 0.0) return 0.0;
    const double r = f.r();
    if (r == 0.0) return f.beta * D;
    return -f.beta * std::expm1(-r * D) / r;
}

// Positive fixed point (A - 1)/C of the composed map, evaluated in a form
// that never exponentiates a large positive argument. Requires
// log A1 + log A2 > 0.
double closed_form_fixed_point(const Flow& f1, const Flow& f2, double D) {
    const double la1 = log_mult(f1, D);
    const double la2 = log_mult(f2, D);
    double p;
    if (la2 <= 0.0) {
        // divide through by A1; needs la1 > 0, which survival guarantees here
        p = (std::exp(la2) - std::exp(-la1)) / (coef_c(f2, D) + coef_c_over_a(f1, D));
    } else {
        // divide through by A1 A2
        double cq1_scaled;
        if (f1.beta == 0.0) {
            cq1_scaled = 0.0;
        } else if (f1.r() == 0.0) {
            cq1_scaled = f1.beta * D * std::exp(-la2);
        } else {
            cq1_scaled = f1.beta * (std::exp(-la2) - std::exp(-(la1 + la2))) / f1.r();
        }
        p = -std::expm1(-(la1 + la2)) / (coef_c_over_a(f2, D) + cq1_scaled);
    }
    if (p < 0.0 || p > 1.0) {
        if (p < -1e-12 || p > 1.0 + 1e-12)
            throw std::logic_error("season_fixed_point: closed form left [0, 1]");
        p = p < 0.0 ? 0.0 : 1.0;
    }
    return p;
}

double composed_map(double u, const Flow& f1, const Flow& f2, double D) {
    return logistic::flow(logistic::flow(u, D, f1.beta, f1.delta), D, f2.beta, f2.delta);
}

} // namespace

FixedPointRoutes season_fixed_point_routes(const Flow& f1, const Flow& f2, double D) {
    if (!(D > 0.0)) throw std::invalid_argument("season_fixed_point: D must be > 0");
    FixedPointRoutes out;
    const double margin = log_mult(f1, D) + log_mult(f2, D);
    if (margin <= 0.0) return out; // lone species dies out; fixed point is 0

    if (f1.beta == f2.beta && f1.delta == f2.delta && f1.beta > f1.delta) {
        // constant rates: the anchors are exactly the carrying capacity
        const double K = 1.0 - f1.delta / f1.beta;
        out.closed = {K, K};
    } else {
        const double p1 = closed_form_fixed_point(f1, f2, D);
        out.closed = {p1, logistic::flow(p1, D, f1.beta, f1.delta)};
    }

    // The iteration contracts at rate 1/(A1 A2) = e^{-margin} per step, so
    // very small margins cannot reach the agreement tolerance; the closed
    // form alone is used there.
    if (margin < 1e-3) return out;

    double u = 1.0;
    const int cap = 1000000;
    int n = 0;
    for (; n < cap; ++n) {
        const double next = composed_map(u, f1, f2, D);
        const double diff = std::abs(next - u);
        u = next;
        if (diff <= 1e-14) break;
    }
    if (n >= cap)
        throw std::logic_error("season_fixed_point: iteration failed to converge");
    out.iterated = {u, logistic::flow(u, D, f1.beta, f1.delta)};
    out.iterated_valid = true;
    return out;
}

SeasonAnchors season_fixed_point(const Flow& f1, const Flow& f2, double D) {
    const FixedPointRoutes routes = season_fixed_point_routes(f1, f2, D);
    if (routes.iterated_valid) {
        if (std::abs(routes.closed.p1 - routes.iterated.p1) > 1e-10 ||
            std::abs(routes.closed.p2 - routes.iterated.p2) > 1e-10)
            throw std::logic_error("season_fixed_point: iterative and closed-form routes disagree");
    }
    return routes.closed;
}

EquilibriumCurve::EquilibriumCurve(int species, const Flow& season1,
                                   const Flow& season2, double D)
    : species_(species), f1_(season1), f2_(season2), D_(D) {
    anchors_ = season_fixed_point(f1_, f2_, D_);
    const double back1 = logistic::flow(anchors_.p1, D_, f1_.beta, f1_.delta);
    const double back2 = logistic::flow(anchors_.p2, D_, f2_.beta, f2_.delta);
    if (std::abs(back1 - anchors_.p2) > 1e-10 || std::abs(back2 - anchors_.p1) > 1e-10)
        throw std::logic_error("EquilibriumCurve: anchors are not flow-consistent");
}

double EquilibriumCurve::eval(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("EquilibriumCurve: t must be >= 0");
    const double tm = std::fmod(t, 2.0 * D_);
    if (tm < D_) return logistic::flow(anchors_.p1, tm, f1_.beta, f1_.delta);
    return logistic::flow(anchors_.p2, tm - D_, f2_.beta, f2_.delta);
}

double EquilibriumCurve::season_integral(int season) const {
    if (season == 1) return logistic::flow_integral(anchors_.p1, D_, f1_.beta, f1_.delta);
    if (season == 2) return logistic::flow_integral(anchors_.p2, D_, f2_.beta, f2_.delta);
    throw std::invalid_argument("season_integral: season must be 1 or 2");
}

} // namespace pcp
