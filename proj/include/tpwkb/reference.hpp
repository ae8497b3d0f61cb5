#pragma once
#include <array>
#include <functional>
#include <vector>

#include "tpwkb/problem.hpp"

namespace tpwkb {

// Solution state in renormalized form: (x, y) = e^{logmag} (xhat, yhat) with
// xhat^2 + yhat^2 = 1.  Keeps exponentially growing/decaying solutions
// representable (growth e^{c/eps} would otherwise overflow).
struct LogScaledState {
    double xhat = 1.0, yhat = 0.0;
    double logmag = 0.0;
    double t = 0.0;

    double x() const;  // e^{logmag} xhat (may overflow for extreme logmag)
    double y() const;
    double angle() const;  // atan2(yhat, xhat)
    static LogScaledState from_xy(double t, double x, double y);
};

// Generic adaptive Dormand-Prince 5(4) driver for small systems, shared by the
// physical integrator, the Riccati reference, and the desingularized-field
// checks.  `observer(t, y)` is called after every accepted step (and at t0).
// Throws integration_error on step underflow.
void dopri5(const std::function<void(double, const double*, double*)>& rhs, int dim, double t0,
            std::vector<double>& y, double t1, double tol,
            const std::function<void(double, const double*)>& observer = nullptr);

// Integrates eps^2 x'' + mu(t) x = 0 as the first-order system
//   dx/dt = y/eps,  dy/dt = -mu(t) x/eps,
// renormalizing (x, y) to unit norm whenever the norm leaves [1e-3, 1e3] and
// accumulating the removed factor in logmag.  Initial step ~ eps/10.
LogScaledState integrate(const ProblemSpec& p, double eps, const LogScaledState& s0, double t1,
                         double tol = 1e-12,
                         const std::function<void(const LogScaledState&)>& observer = nullptr);

// Convenience: integrate from raw (x0, y0) at t0.
LogScaledState integrate(const ProblemSpec& p, double eps, double t0, double x0, double y0,
                         double t1, double tol = 1e-12);

// Canonical W^u slope at t < 0: integrates the slow-manifold Riccati equation
//   du/dt = (-mu(t) - u^2)/eps
// forward from t_start = -nu0 with u = sqrt(-mu(-nu0)).  The forward flow is
// attracting, so the result is eps-exponentially close to the unstable slope.
double riccati_reference(const ProblemSpec& p, double eps, double t, double tol = 1e-12);

// Least-squares slope of log(error) against log(eps).
struct RateFit {
    double slope = 0.0;
    double half_width = 0.0;  // 2x the standard error of the slope
};
RateFit rate_fit(const std::vector<std::pair<double, double>>& eps_error);

} // namespace tpwkb
