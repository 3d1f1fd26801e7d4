#ifndef PCP_EQUILIBRIUM_HPP
#define PCP_EQUILIBRIUM_HPP

#include "pcp/logistic.hpp"

namespace pcp {

// Densities of a lone species at the starts of season 1 and season 2 on
// its periodic attractor.
struct SeasonAnchors {
    double p1 = 0.0;
    double p2 = 0.0;
};

struct FixedPointRoutes {
    SeasonAnchors closed;
    SeasonAnchors iterated;
    // false when the growth margin is too small for the iteration to
    // resolve the fixed point (the closed form is still exact there)
    bool iterated_valid = false;
};

// Fixed point of the composed season map F = flow2(flow1(.)) in [0, 1),
// computed two ways: monotone iteration from u0 = 1 and the closed-form
// fixed point of the composed Moebius map. Returns (0, 0) when the mean
// growth rate over a period is nonpositive (the lone species dies out).
FixedPointRoutes season_fixed_point_routes(const logistic::Flow& f1,
                                           const logistic::Flow& f2, double D);

// As above, with the two routes cross-checked to 1e-10; disagreement
// throws std::logic_error.
SeasonAnchors season_fixed_point(const logistic::Flow& f1,
                                 const logistic::Flow& f2, double D);

// Piecewise-logistic periodic curve of a lone species, anchored at its
// season-start densities.
class EquilibriumCurve {
public:
    EquilibriumCurve(int species, const logistic::Flow& season1,
                     const logistic::Flow& season2, double D);

    double eval(double t) const;

    // integral of the curve over the given season (length D)
    double season_integral(int season) const;

    int species() const { return species_; }
    double p1() const { return anchors_.p1; }
    double p2() const { return anchors_.p2; }
    double season_length() const { return D_; }
    double period() const { return 2.0 * D_; }
    bool extinct() const { return anchors_.p1 == 0.0; }

private:
    int species_;
    logistic::Flow f1_;
    logistic::Flow f2_;
    double D_;
    SeasonAnchors anchors_;
};

} // namespace pcp

#endif
