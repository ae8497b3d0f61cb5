#pragma once
#include <vector>

#include "tpwkb/problem.hpp"

namespace tpwkb {

// One evaluation of the uniform three-interval solution, in log-scaled form:
// (x, y) = e^{logmag} (xm, ym).  interval is 1, 2 or 3.
struct ApproxValue {
    double xm = 0.0, ym = 0.0;
    double logmag = 0.0;
    int interval = 2;
};

// The uniform turning-point approximant on [-nu, nu] with interval boundaries
// at +/- b, b = (eps delta)^{2/3}:
//   J1 = [-nu, -b): chart-1 formula (Airy x exponential correction x muhat^{-1/4})
//   J2 = [-b, b]:   pure Airy pair (Ai(-eps^{-2/3} t), -eps^{1/3} Ai'(-eps^{-2/3} t))
//   J3 = (b, nu]:   chart-3 (Ai - i Bi) real-part formula
// All pieces share the chart-2 normalization (coefficient 1 on Ai).
struct UniformApproximant {
    ProblemSpec p;
    double eps = 1e-2;
    double delta = 0.2;
    double nu = 0.5;
    double b = 0.0;

    UniformApproximant(ProblemSpec spec, double eps, double delta, double nu);
    ApproxValue eval(double t) const;
};

ApproxValue uniform_wu_solution(const ProblemSpec& p, double eps, double delta, double t,
                                double nu = -1.0);  // nu < 0 means p.nu0

// Unit 2-vector identified with its negation; canonical representative has
// positive x-component (or positive y when x = 0).
struct Direction2 {
    double x = 1.0, y = 0.0;
};
Direction2 make_direction(double x, double y);
double direction_angle_distance(const Direction2& a, const Direction2& b);  // mod pi

// W^u direction at t = nu from the connection formula: normalized span of
// (cos(Phi - pi/4), -sqrt(mu(nu)) sin(Phi - pi/4)), Phi = eps^{-1} int_0^nu sqrt(mu).
Direction2 wu_direction(const ProblemSpec& p, double nu, double eps);

// ---- phase/amplitude correction fit ----------------------------------------
// One measured direction with its model inputs: theta = Phi - pi/4 and
// sqmu = sqrt(mu(nu)) are computed, (d1, d2) is the measured unit direction.
struct DirectionSample {
    double eps = 0.0;
    double theta = 0.0;
    double sqmu = 1.0;
    double d1 = 1.0, d2 = 0.0;
};

// Polynomial-in-eps^{1/3} corrections fitted to the model
//   direction ~ (cos(theta + eps^{2/3} phi1), -sqmu (1 + eps^{2/3} rho) sin(theta + eps^{2/3} phi2)).
struct PhaseFit {
    std::vector<double> rho, phi1, phi2;  // coefficient j multiplies eps^{j/3}
    double rms_residual = 0.0;            // angle residual of the converged fit
};

// Gauss-Newton fit of (rho, phi1, phi2) as degree-`degree` polynomials in
// eps^{1/3}.  Throws std::runtime_error("...grid too coarse...") when the
// zero-correction angle residuals jump by more than pi/2 between consecutive
// samples (phase attribution would be ambiguous).
PhaseFit fit_phase_corrections(const std::vector<DirectionSample>& samples, int degree);

// Builds samples from reference directions at t = nu over the eps grid
// (geometric progression recommended, >= 6 points) and fits.
PhaseFit phase_fit(const ProblemSpec& p, double nu, const std::vector<double>& eps_grid,
                   int degree = 2);

} // namespace tpwkb
