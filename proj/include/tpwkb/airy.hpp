#pragma once
#include <utility>

namespace tpwkb {

// Ai, Bi and derivatives at a common real argument.
// Invariant: ai*bip - aip*bi = 1/pi to ~1e-12 at every evaluation point.
struct AiryQuad {
    double ai, aip, bi, bip;
    double wronskian() const { return ai * bip - aip * bi; }
};

// Exponentially scaled values for x > 0:
//   ai_s  = Ai(x)  * e^{+zeta},  aip_s = Ai'(x) * e^{+zeta},
//   bi_s  = Bi(x)  * e^{-zeta},  bip_s = Bi'(x) * e^{-zeta},
// with zeta = (2/3) x^{3/2}.  Safe for arbitrarily large x.
struct AiryScaled {
    double ai_s, aip_s, bi_s, bip_s;
    double zeta;
};

// Method switch point and the overlap band over which both methods are
// cross-checked.  The Maclaurin branch is summed in compensated (double-
// double) arithmetic, so it keeps full double accuracy through |x| = 8;
// beyond that the asymptotic branch's superasymptotic error is < 1e-13.
inline constexpr double airy_x_switch = 8.0;
inline constexpr double airy_overlap_lo = 5.5;
inline constexpr double airy_overlap_hi = 7.5;

// Relative error <= 1e-10 for |x| <= 200 (Bi overflows near x ~ 104; beyond
// that a range error directs callers to airy_scaled).
AiryQuad airy_eval(double x);

// The two underlying methods, exposed for the dual-evaluation cross-check.
AiryQuad airy_series(double x);      // Maclaurin, compensated; |x| <= ~9
AiryQuad airy_asymptotic(double x);  // Poincare expansions; |x| >= ~5

// Scaled evaluation for x >= 0 (used for Ai on the hyperbolic side where the
// unscaled value underflows and only ratios/log-magnitudes are needed).
AiryScaled airy_scaled(double x);

// (M, theta) with (Ai - i Bi)(-x) = M e^{i theta}; requires x >= 1.
std::pair<double, double> airy_osc(double x);

} // namespace tpwkb
