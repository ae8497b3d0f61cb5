#pragma once
#include "tpwkb/problem.hpp"

namespace tpwkb {

// Guard for the hyperbolic window: t must satisfy t <= -hyp_guard_c * eps^{2/3}
// (closer to the turning point the blowup charts take over).
inline constexpr double hyp_guard_c = 3.0;

enum class SlopeMethod { series, riccati };

// Slope y/x of the unstable line bundle W^u at (t, eps), t < 0.
struct SlopeValue {
    double t = 0.0;
    double eps = 0.0;
    double h = 0.0;
    SlopeMethod method = SlopeMethod::series;
    int N = 1;  // truncation order for the series method
};

// W^u slope: series method sums the slow-manifold Riccati expansion
// h = sqrt(-mu) + eps h_1 + ... + eps^N h_N; riccati method integrates the
// Riccati equation from -nu0 (delegates to riccati_reference).  Both agree to
// O(eps^{N+1}).  Throws turning_region_error past the -c eps^{2/3} guard.
SlopeValue h_u(const ProblemSpec& p, double t, double eps, int N,
               SlopeMethod method = SlopeMethod::series);

// Slow-manifold slope series for a decaying/growing branch in a forbidden
// region, sign = +1 for the branch near +sqrt(-mu) (growing rightward, i.e.
// W^u), sign = -1 for the branch near -sqrt(-mu).  Shared with module eigen's
// shooting initialization.  Returns h evaluated at (t, eps), order N.
double riccati_branch_slope(const ProblemSpec& p, double t, double eps, int N, int sign);

// Point on W^u transported from (t0, x0) to t, with the exponential growth
// carried separately: (x, y) = e^{logmag} (xm, ym).
struct WuState {
    double xm = 0.0, ym = 0.0;  // mantissa pair; (xm, ym) = (x0, h x0) at t = t0
    double logmag = 0.0;        // eps^{-1} int sqrt(-mu) plus series corrections
    double t = 0.0;
};

// x(t) = (mu(t0)/mu(t))^{1/4} exp(eps^{-1} int_{t0}^t sqrt(-mu)) (1 + O(eps)) x0,
// y = h_u(t) x(t).  The order-N slope series is integrated exactly through its
// first two orders (action + quarter-log prefactor) and by quadrature beyond.
WuState wu_state(const ProblemSpec& p, double t, double t0, double x0, double eps, int N = 1);

} // namespace tpwkb
