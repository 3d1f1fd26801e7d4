#ifndef PCP_LOGISTIC_HPP
#define PCP_LOGISTIC_HPP

namespace pcp {
namespace logistic {

// One species in one season: du/dt = beta*u*(1-u) - delta*u, with growth
// rate r = beta - delta and carrying capacity K = 1 - delta/beta. The
// degenerate branches beta = 0 (pure decay) and r = 0 are handled by
// their limit formulas; beta < delta (K < 0) uses the generic form,
// which stays valid and decays to 0.
struct Flow {
    double beta = 0.0;
    double delta = 0.0;
    double r() const { return beta - delta; }
};

// Value of the flow at time t from initial density u0.
double flow(double u0, double t, double beta, double delta);

// Exact integral of the flow over [0, T].
double flow_integral(double u0, double T, double beta, double delta);

} // namespace logistic
} // namespace pcp

#endif
