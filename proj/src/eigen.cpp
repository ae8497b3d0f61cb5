#include "tpwkb/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tpwkb/errors.hpp"
#include "tpwkb/hyperbolic.hpp"
#include "tpwkb/reference.hpp"

namespace tpwkb {

namespace {

// mu_E(t) = E - V(t) as a raw spec (no turning point at 0; only jets/action
// and the integrator are used on it).
ProblemSpec mu_of_energy(const std::vector<double>& v, double E) {
    ProblemSpec p;
    p.mu_coeffs.resize(std::max<size_t>(v.size(), 1), 0.0);
    for (size_t j = 0; j < v.size(); ++j) p.mu_coeffs[j] = -v[j];
    p.mu_coeffs[0] += E;
    p.nu0 = 1e9;
    return p;
}

double well_minimum(const std::vector<double>& v, double range) {
    double best_t = 0.0, best = poly_eval(v, 0.0);
    for (int i = 0; i <= 4096; ++i) {
        double t = -range + 2.0 * range * i / 4096.0;
        double val = poly_eval(v, t);
        if (val < best) {
            best = val;
            best_t = t;
        }
    }
    // golden-section polish
    double lo = best_t - range / 2048.0, hi = best_t + range / 2048.0;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        if (poly_eval(v, c) < poly_eval(v, d)) {
            hi = d;
            d = c;
            c = hi - gr * (hi - lo);
        } else {
            lo = c;
            c = d;
            d = lo + gr * (hi - lo);
        }
    }
    return 0.5 * (lo + hi);
}

double well_action(const std::vector<double>& v, double E) {
    auto [tl, tr] = turning_points(v, E);
    return action(mu_of_energy(v, E), tl, tr);
}

} // namespace

std::vector<double> bs_energies(const std::vector<double>& v_coeffs, double eps, int n_max,
                                double range) {
    if (!(eps > 0.0)) throw std::invalid_argument("bs_energies: eps must be positive");
    if (n_max < 0) throw std::invalid_argument("bs_energies: n_max >= 0 required");
    double tmin = well_minimum(v_coeffs, range);
    double vmin = poly_eval(v_coeffs, tmin);
    std::vector<double> out;
    double E_lo = vmin + 1e-13 * std::max(1.0, std::abs(vmin));
    for (int n = 0; n <= n_max; ++n) {
        double target = eps * M_PI * (n + 0.5);
        // expand the upper bracket until A exceeds the target
        double E_hi = std::max(vmin + eps, out.empty() ? vmin + eps : out.back());
        double A_hi;
        bool escaped = false;
        for (int it = 0;; ++it) {
            try {
                auto [tl, tr] = turning_points(v_coeffs, E_hi);
                if (tl < -range || tr > range) { escaped = true; break; }
                A_hi = well_action(v_coeffs, E_hi);
            } catch (const std::domain_error&) {
                escaped = true;
                break;
            }
            if (A_hi >= target) break;
            E_hi = vmin + 2.0 * (E_hi - vmin);
            if (it > 200) { escaped = true; break; }
        }
        if (escaped) break;  // truncated list: levels above leave the range
        // Illinois method on A(E) - target (A strictly increasing)
        double a = E_lo, b = E_hi;
        // A(E_lo) is 0 at the well bottom (n = 0) and the previous target for
        // n >= 1, so fa is known without risking a near-degenerate evaluation.
        double fa = n == 0 ? -target : -eps * M_PI;
        double fb = A_hi - target;
        double side = 0.0;
        double root = b;
        for (int it = 0; it < 200; ++it) {
            root = (a * fb - b * fa) / (fb - fa);
            if (!(root > a) || !(root < b)) root = 0.5 * (a + b);
            double fr = well_action(v_coeffs, root) - target;
            if (std::abs(fr) < 1e-13 * std::max(1.0, target) ||
                b - a < 1e-15 * std::max(1.0, std::abs(root)))
                break;
            if ((fr < 0.0) == (fa < 0.0)) {
                a = root;
                fa = fr;
                if (side == -1.0) fb *= 0.5;
                side = -1.0;
            } else {
                b = root;
                fb = fr;
                if (side == 1.0) fa *= 0.5;
                side = 1.0;
            }
        }
        out.push_back(root);
        E_lo = root;  // monotone in n
    }
    return out;
}

namespace {

struct Mismatch {
    double w = 0.0;  // normalized Wronskian of the two shooting solutions
    int zeros = 0;   // oscillation count of the matched eigenfunction
};

// Decaying-branch slope at t_target, refined by integrating the Riccati
// equation du/dt = (-mu - u^2)/eps from deeper inside the forbidden region:
// the flow toward the matching region is attracting on the wanted branch, so
// the series seed's residual growing-mode contamination is suppressed by
// e^{-2 S/eps} over the approach stretch (S >= 30 eps by construction).
double refined_branch_slope(const ProblemSpec& pe, double t_target, double eps, int sign,
                            double tol) {
    double dir = sign > 0 ? -1.0 : 1.0;  // deeper means further from the well
    double S = 0.0, ts = t_target;
    while (S < 30.0 * eps && std::abs(ts - t_target) < 3.0) {
        ts += dir * 0.05;
        S += 0.05 * std::sqrt(-pe.mu(ts));
    }
    std::vector<double> u = {riccati_branch_slope(pe, ts, eps, 2, sign)};
    auto rhs = [&](double tt, const double* y, double* dy) {
        dy[0] = (-pe.mu(tt) - y[0] * y[0]) / eps;
    };
    dopri5(rhs, 1, ts, u, t_target, tol);
    return u[0];
}

Mismatch shoot(const std::vector<double>& v, double E, double eps, double tol) {
    ProblemSpec pe = mu_of_energy(v, E);
    auto [tl, tr] = turning_points(v, E);
    double shift = 2.0 * std::max(std::pow(eps, 2.0 / 3.0), 0.05);
    double a = tl - shift, b = tr + shift;
    // match at an asymmetric interior point: symmetric wells put eigenfunction
    // zeros exactly at the midpoint, which would be double-counted
    double m = tl + 0.61803398874989484 * (tr - tl);
    double hl = refined_branch_slope(pe, a, eps, +1, tol);
    double hr = refined_branch_slope(pe, b, eps, -1, tol);
    int zeros = 0;
    double prev_sign = 0.0;
    auto counter = [&](const LogScaledState& s) {
        double sg = s.xhat > 0.0 ? 1.0 : (s.xhat < 0.0 ? -1.0 : 0.0);
        if (prev_sign != 0.0 && sg != 0.0 && sg != prev_sign) ++zeros;
        if (sg != 0.0) prev_sign = sg;
    };
    prev_sign = 0.0;
    LogScaledState L = integrate(pe, eps, LogScaledState::from_xy(a, 1.0, hl), m, tol, counter);
    prev_sign = 0.0;
    LogScaledState R = integrate(pe, eps, LogScaledState::from_xy(b, 1.0, hr), m, tol, counter);
    Mismatch out;
    out.w = L.xhat * R.yhat - R.xhat * L.yhat;
    out.zeros = zeros;
    return out;
}

} // namespace

std::vector<double> reference_energies(const std::vector<double>& v_coeffs, double eps, int n_max,
                                       double tol, double range) {
    std::vector<double> bs = bs_energies(v_coeffs, eps, n_max, range);
    std::vector<double> out;
    for (size_t n = 0; n < bs.size(); ++n) {
        double lo = bs[n] - eps, hi = bs[n] + eps;
        Mismatch ml = shoot(v_coeffs, lo, eps, tol);
        Mismatch mh = shoot(v_coeffs, hi, eps, tol);
        int widen = 0;
        while ((ml.w < 0.0) == (mh.w < 0.0) && widen < 4) {
            lo -= 0.5 * eps;
            hi += 0.5 * eps;
            ml = shoot(v_coeffs, lo, eps, tol);
            mh = shoot(v_coeffs, hi, eps, tol);
            ++widen;
        }
        if ((ml.w < 0.0) == (mh.w < 0.0))
            throw integration_error("reference_energies: no sign change near the BS seed");
        // Illinois iteration on the Wronskian mismatch
        double fa = ml.w, fb = mh.w, side = 0.0, root = 0.5 * (lo + hi);
        Mismatch mr;
        for (int it = 0; it < 200; ++it) {
            root = (lo * fb - hi * fa) / (fb - fa);
            if (!(root > lo) || !(root < hi)) root = 0.5 * (lo + hi);
            mr = shoot(v_coeffs, root, eps, tol);
            if (hi - lo < std::max(1e-13, 10.0 * tol) * std::max(1.0, std::abs(root))) break;
            if ((mr.w < 0.0) == (fa < 0.0)) {
                lo = root;
                fa = mr.w;
                if (side == -1.0) fb *= 0.5;
                side = -1.0;
            } else {
                hi = root;
                fb = mr.w;
                if (side == 1.0) fa *= 0.5;
                side = 1.0;
            }
        }
        if (mr.zeros != static_cast<int>(n))
            throw integration_error("reference_energies: oscillation count mismatch at n=" +
                                    std::to_string(n) + " (counted " + std::to_string(mr.zeros) +
                                    ")");
        out.push_back(root);
    }
    return out;
}

std::vector<EigenResult> eigen_compare(const std::vector<double>& v_coeffs, double eps, int n_max,
                                       double tol) {
    auto bs = bs_energies(v_coeffs, eps, n_max);
    auto ref = reference_energies(v_coeffs, eps, n_max, tol);
    std::vector<EigenResult> out;
    for (size_t n = 0; n < std::min(bs.size(), ref.size()); ++n) {
        EigenResult r;
        r.n = static_cast<int>(n);
        r.E_bs = bs[n];
        r.E_ref = ref[n];
        r.gap = std::abs(bs[n] - ref[n]);
        r.eps = eps;
        out.push_back(r);
    }
    return out;
}

} // namespace tpwkb
