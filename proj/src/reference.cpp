#include "tpwkb/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tpwkb/errors.hpp"

namespace tpwkb {

double LogScaledState::x() const { return std::exp(logmag) * xhat; }
double LogScaledState::y() const { return std::exp(logmag) * yhat; }
double LogScaledState::angle() const { return std::atan2(yhat, xhat); }

LogScaledState LogScaledState::from_xy(double t, double x, double y) {
    double n = std::hypot(x, y);
    if (!(n > 0.0)) throw std::invalid_argument("LogScaledState: zero state");
    return {x / n, y / n, std::log(n), t};
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
// embedded 4th-order error weights (b - bhat)
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                 E6 = 22.0 / 525, E7 = -1.0 / 40;
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;

} // namespace

void dopri5(const std::function<void(double, const double*, double*)>& rhs, int dim, double t0,
            std::vector<double>& y, double t1, double tol,
            const std::function<void(double, const double*)>& observer) {
    if (static_cast<int>(y.size()) != dim) throw std::invalid_argument("dopri5: dim mismatch");
    if (t0 == t1) {
        if (observer) observer(t0, y.data());
        return;
    }
    const double dir = t1 > t0 ? 1.0 : -1.0;
    const size_t n = static_cast<size_t>(dim);
    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), y5(n);
    double t = t0;
    double h = dir * std::min(std::abs(t1 - t0), std::abs(t1 - t0) / 100.0 + 1e-8);
    if (observer) observer(t, y.data());
    rhs(t, y.data(), k1.data());
    const double hmin = 1e-14 * (std::abs(t1 - t0) + std::abs(t0) + 1.0);
    int rejected_in_a_row = 0;
    for (int step = 0; step < 100000000; ++step) {
        if (dir * (t - t1) >= 0.0) return;
        if (dir * (t + h - t1) > 0.0) h = t1 - t;
        auto stage = [&](std::vector<double>& out, double c, auto... coeffk) {
            // out = y + h * sum coef * k
            for (size_t i = 0; i < n; ++i) yt[i] = y[i];
            auto add = [&](double coef, const std::vector<double>& k) {
                for (size_t i = 0; i < n; ++i) yt[i] += h * coef * k[i];
            };
            (add(coeffk.first, *coeffk.second), ...);
            rhs(t + c * h, yt.data(), out.data());
        };
        stage(k2, C2, std::pair{A21, &k1});
        stage(k3, C3, std::pair{A31, &k1}, std::pair{A32, &k2});
        stage(k4, C4, std::pair{A41, &k1}, std::pair{A42, &k2}, std::pair{A43, &k3});
        stage(k5, C5, std::pair{A51, &k1}, std::pair{A52, &k2}, std::pair{A53, &k3},
              std::pair{A54, &k4});
        stage(k6, 1.0, std::pair{A61, &k1}, std::pair{A62, &k2}, std::pair{A63, &k3},
              std::pair{A64, &k4}, std::pair{A65, &k5});
        for (size_t i = 0; i < n; ++i)
            y5[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        rhs(t + h, y5.data(), k7.data());
        double errnorm = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] +
                            E7 * k7[i]);
            double sc = tol * (1.0 + std::max(std::abs(y[i]), std::abs(y5[i])));
            errnorm += (e / sc) * (e / sc);
        }
        errnorm = std::sqrt(errnorm / dim);
        if (errnorm <= 1.0) {
            t += h;
            y.swap(y5);
            k1.swap(k7);  // FSAL
            if (observer) observer(t, y.data());
            rejected_in_a_row = 0;
        } else {
            ++rejected_in_a_row;
            if (rejected_in_a_row > 200)
                throw integration_error("dopri5: repeated step rejection (stiffness failure)");
        }
        double fac = 0.9 * std::pow(std::max(errnorm, 1e-10), -0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
        // the final step is clamped to t1 - t and may be arbitrarily short;
        // only a short step with distance still to cover signals stiffness
        if (std::abs(h) < hmin && dir * (t - t1) < 0.0)
            throw integration_error("dopri5: step size underflow (stiffness failure)");
    }
    throw integration_error("dopri5: step budget exhausted");
}

LogScaledState integrate(const ProblemSpec& p, double eps, const LogScaledState& s0, double t1,
                         double tol, const std::function<void(const LogScaledState&)>& observer) {
    if (!(eps > 0.0)) throw std::invalid_argument("integrate: eps must be positive");
    if (tol < 1e-14) throw std::invalid_argument("integrate: tol too small");
    // The log factor rides along as a third component with zero derivative;
    // renormalization moves magnitude from (x, y) into it between steps.
    LogScaledState cur = s0;
    auto rhs = [&](double t, const double* y, double* dy) {
        dy[0] = y[1] / eps;
        dy[1] = -p.mu(t) * y[0] / eps;
        dy[2] = 0.0;
    };
    std::vector<double> st = {s0.xhat, s0.yhat, s0.logmag};
    // dopri5 has no mid-flight state mutation hook, so integrate in segments
    // short enough that the norm stays within the renormalization window.
    // Growth rate is at most sqrt(max|mu|)/eps; cap the segment so that the
    // accumulated factor stays below ~e^3 per segment.
    double mumax = 0.0;
    for (double tt = std::min(s0.t, t1); tt <= std::max(s0.t, t1) + 1e-15; tt += 0.01)
        mumax = std::max(mumax, std::abs(p.mu(tt)));
    double rate = std::sqrt(std::max(mumax, 1e-6)) / eps;
    double seg = std::min(std::abs(t1 - s0.t), 3.0 / rate);
    if (seg <= 0.0) seg = std::abs(t1 - s0.t);
    double dir = t1 >= s0.t ? 1.0 : -1.0;
    double t = s0.t;
    auto obs_wrap = [&](double tt, const double* yv) {
        if (observer) observer({yv[0], yv[1], yv[2], tt});
    };
    while (dir * (t1 - t) > 0.0) {
        double tn = t + dir * seg;
        if (dir * (tn - t1) > 0.0) tn = t1;
        dopri5(rhs, 3, t, st, tn, tol, observer ? obs_wrap : std::function<void(double, const double*)>());
        t = tn;
        double nrm = std::hypot(st[0], st[1]);
        if (nrm < 1e-3 || nrm > 1e3) {
            st[2] += std::log(nrm);
            st[0] /= nrm;
            st[1] /= nrm;
        }
    }
    double nrm = std::hypot(st[0], st[1]);
    cur = {st[0] / nrm, st[1] / nrm, st[2] + std::log(nrm), t1};
    return cur;
}

LogScaledState integrate(const ProblemSpec& p, double eps, double t0, double x0, double y0,
                         double t1, double tol) {
    return integrate(p, eps, LogScaledState::from_xy(t0, x0, y0), t1, tol);
}

double riccati_reference(const ProblemSpec& p, double eps, double t, double tol) {
    double t0 = -p.nu0;
    if (!(t >= t0) || !(t < 0.0) || !(p.mu(t) < 0.0))
        throw turning_region_error("riccati_reference: t outside the hyperbolic window");
    std::vector<double> u = {std::sqrt(-p.mu(t0))};
    auto rhs = [&](double tt, const double* y, double* dy) {
        if (std::abs(y[0]) > 1e6)
            throw integration_error("riccati_reference: slope blow-up (left the basin)");
        dy[0] = (-p.mu(tt) - y[0] * y[0]) / eps;
    };
    dopri5(rhs, 1, t0, u, t, tol);
    return u[0];
}

RateFit rate_fit(const std::vector<std::pair<double, double>>& eps_error) {
    if (eps_error.size() < 3) throw std::invalid_argument("rate_fit: need >= 3 pairs");
    std::vector<double> lx, ly;
    for (auto& [e, err] : eps_error) {
        if (!(e > 0.0) || !(err > 0.0))
            throw std::invalid_argument("rate_fit: eps and error must be positive");
        lx.push_back(std::log(e));
        ly.push_back(std::log(err));
    }
    const double n = static_cast<double>(lx.size());
    double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    RateFit r;
    r.slope = sxy / sxx;
    double ss = 0.0;
    for (size_t i = 0; i < lx.size(); ++i) {
        double res = ly[i] - my - r.slope * (lx[i] - mx);
        ss += res * res;
    }
    if (lx.size() > 2) r.half_width = 2.0 * std::sqrt(ss / (n - 2.0) / sxx);
    return r;
}

} // namespace tpwkb
