#include "pcp/logistic.hpp"

#include <cmath>
#include <stdexcept>

namespace pcp {
namespace logistic {

namespace {

void check_domain(double u0, double t, double beta, double delta) {
    if (!(u0 >= 0.0 && u0 <= 1.0) || !std::isfinite(u0))
        throw std::invalid_argument("logistic: u0 must lie in [0, 1]");
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("logistic: t must be >= 0");
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("logistic: beta must be >= 0");
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw std::invalid_argument("logistic: delta must be > 0");
}

} // namespace

double flow(double u0, double t, double beta, double delta) {
    check_domain(u0, t, beta, delta);
    if (u0 == 0.0 || t == 0.0) return u0;
    if (beta == 0.0) return u0 * std::exp(-delta * t);
    const double r = beta - delta;
    if (r == 0.0) return u0 / (1.0 + beta * u0 * t);
    const double K = 1.0 - delta / beta;
    const double rt = r * t;
    // u0 e^{rt} / (1 + (u0/K)(e^{rt} - 1)); for large positive rt the
    // equivalent e^{-rt} form avoids overflow.
    if (rt <= 500.0) return u0 * std::exp(rt) / (1.0 + (u0 / K) * std::expm1(rt));
    return u0 / ((1.0 - u0 / K) * std::exp(-rt) + u0 / K);
}

double flow_integral(double u0, double T, double beta, double delta) {
    check_domain(u0, T, beta, delta);
    if (u0 == 0.0 || T == 0.0) return 0.0;
    if (beta == 0.0) return -u0 * std::expm1(-delta * T) / delta;
    const double r = beta - delta;
    if (r == 0.0) return std::log1p(beta * u0 * T) / beta;
    const double K = 1.0 - delta / beta;
    const double rT = r * T;
    // (K/r) ln(1 + (u0/K)(e^{rT} - 1)), rewritten for large positive rT
    // as K T + (K/r) ln(u0/K + (1 - u0/K) e^{-rT}).
    if (rT <= 1.0) return (K / r) * std::log1p((u0 / K) * std::expm1(rT));
    return K * T + (K / r) * std::log(u0 / K + (1.0 - u0 / K) * std::exp(-rT));
}

} // namespace logistic
} // namespace pcp
