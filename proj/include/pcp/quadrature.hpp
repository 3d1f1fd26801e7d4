#ifndef PCP_QUADRATURE_HPP
#define PCP_QUADRATURE_HPP

#include <cmath>
#include <stdexcept>

namespace pcp {

// Adaptive Simpson quadrature with Richardson correction.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 48) {
    struct Impl {
        const F& f;
        int max_depth;
        double recurse(double a, double m, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth) const {
            const double lm = 0.5 * (a + m);
            const double rm = 0.5 * (m + b);
            const double flm = f(lm);
            const double frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            const double err = left + right - whole;
            if (depth >= max_depth || std::abs(err) <= 15.0 * tol)
                return left + right + err / 15.0;
            return recurse(a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
                   recurse(m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
        }
    };
    if (!(b >= a)) throw std::invalid_argument("adaptive_simpson: b must be >= a");
    if (a == b) return 0.0;
    Impl impl{f, max_depth};
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return impl.recurse(a, m, b, fa, fm, fb, whole, tol, 0);
}

} // namespace pcp

#endif
