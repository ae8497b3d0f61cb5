#pragma once
#include <complex>

#include "tpwkb/problem.hpp"

namespace tpwkb {

// The three directional charts of the blowup
//   (y, t, eps) = (r ybar, r^2 tbar, r^3 epsbar):
//   Tminus: tbar = -1, coords (x, y1, r1, eps1): y = r1 y1, t = -r1^2, eps = r1^3 eps1
//   Escale: epsbar = 1, coords (x, y2, t2, r2):  y = r2 y2, t = r2^2 t2, eps = r2^3
//   Tplus:  tbar = +1, coords (x, y3, r3, eps3): y = r3 y3, t = r3^2,  eps = r3^3 eps3
enum class Chart { Tminus, Escale, Tplus };

struct ChartPoint {
    Chart chart = Chart::Escale;
    double x = 0.0;
    double y = 0.0;  // y1 | y2 | y3
    double r = 0.0;  // r1 | r2 | r3 (>= 0)
    double s = 0.0;  // eps1 | t2 | eps3  (eps-bar coords >= 0)
};

struct PhysPoint {
    double x = 0.0, y = 0.0, t = 0.0, eps = 0.0;
};

// The chart's defining substitution, applied exactly.
PhysPoint to_physical(const ChartPoint& cp);

// Coordinate change between adjacent charts.  Tminus<->Escale needs t2 < 0,
// Escale<->Tplus needs t2 > 0; throws std::domain_error off the overlap.
ChartPoint transition(const ChartPoint& cp, Chart target);

// Right-hand side of the desingularized vector field in the chart's
// coordinates, in the same (x, y, r, s) slot order as ChartPoint:
//   Tminus: (y1, muhat(-r1^2) x + (1/2) eps1 y1, -(1/2) r1 eps1, (3/2) eps1^2)
//   Escale: (y2, -t2 muhat(r2^2 t2) x, 0, 1)            [ds = dt2]
//   Tplus:  (y3, -muhat(r3^2) x - (1/2) eps3 y3, (1/2) r3 eps3, -(3/2) eps3^2)
struct ChartDeriv {
    double dx = 0.0, dy = 0.0, dr = 0.0, ds = 0.0;
};
ChartDeriv desing_field(const ProblemSpec& p, const ChartPoint& cp);

// Slope y1/x of the chart-1 unstable manifold, decomposed as
//   h = U1(eps1) + U2(r1^2) + eps1 U3(r1^2) + remainder,
// U1(eps1) = -eps1^{1/3} Ai'(eps1^{-2/3})/Ai(eps1^{-2/3})  (= 1 at eps1 = 0),
// U2 = sqrt(muhat(-r1^2)) - 1,  U3 = -(1/4) r1^2 muhat^{-1} muhat'.
struct Chart1Slope {
    double u1 = 0.0, u2 = 0.0, u3 = 0.0;
    double slope = 0.0;  // u1 + u2 + eps1 * u3
};
Chart1Slope chart1_hu(const ProblemSpec& p, double r1, double eps1);

// Solution along W^u in chart 1, with the exponentially small scale carried in
// log form: (x, y1) = e^{logmag} (xm, ym),
//   x  = muhat(-r1^2)^{-1/4} Ai(z) e^{-G/eps},   z = eps1^{-2/3},
//   y1 = -eps1^{1/3} muhat(-r1^2)^{1/4} Ai'(z) e^{-G/eps},
//   G  = int_0^{r1^2} (sqrt(-mu(-w)) - sqrt(w)) dw.
struct ChartSolution {
    double xm = 0.0, ym = 0.0;
    double logmag = 0.0;
};
ChartSolution chart1_solution(const ProblemSpec& p, double r1, double eps);

// Chart-2 tracking solution at r2 = 0: exactly (Ai(-t2), -Ai'(-t2)); the
// O(r2^2) remainder is dropped here and measured in validation.
ChartSolution chart2_solution(const ProblemSpec& p, double t2, double r2);

// Normalizing factor A1(eps3) of the chart-3 complex solution:
//   A1 = eps3^{1/6} exp(i(2/(3 eps3) - pi/4)) exp(-(2/3) int_0^{eps3} T12),
// with T12(s) = (T1(s) - i + s/4)/s^2 and T1 = i B0 - s/2, both evaluated from
// the optimally truncated B0 series (cap L).
std::complex<double> a1(double eps3, int L);

// The chart-3 complex solution pair (x_C, y_C) = (B0(eps3) A1, i A1),
// numerically equal to sqrt(pi) (Ai - i Bi)(-eps3^{-2/3}) and
// -sqrt(pi) eps3^{1/3} (Ai - i Bi)'(-eps3^{-2/3}).
std::pair<std::complex<double>, std::complex<double>> xc_yc(double eps3, int L = 20);

// Solution along W^u in chart 3 (chart-2 normalization):
//   x  = muhat(r3^2)^{-1/4} Re[(Ai - i Bi)(-eps3^{-2/3}) e^{iH}],
//   y3 = -eps3^{1/3} muhat(r3^2)^{1/4} Re[(Ai' - i Bi')(-eps3^{-2/3}) e^{iH}],
//   H  = eps^{-1} int_0^{r3^2} (sqrt(mu(w)) - sqrt(w)) dw.
// L, M select the formal-series cross-check orders; the evaluation itself uses
// the Airy factors directly (logmag is always 0 on this side).
ChartSolution chart3_solution(const ProblemSpec& p, double r3, double eps, int L = 20, int M = 4);

} // namespace tpwkb
