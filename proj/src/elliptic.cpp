#include "tpwkb/elliptic.hpp"

#include <cmath>
#include <stdexcept>

#include "tpwkb/errors.hpp"
#include "tpwkb/quadrature.hpp"
#include "tpwkb/series.hpp"

namespace tpwkb {

namespace {
using cplx = std::complex<double>;

void check_elliptic_interval(const ProblemSpec& p, double a, double b) {
    double lo = std::min(a, b), hi = std::max(a, b);
    for (int i = 0; i <= 64; ++i) {
        double t = lo + (hi - lo) * i / 64.0;
        if (!(p.mu(t) > 0.0))
            throw turning_region_error("elliptic: interval touches the turning region (mu <= 0)");
    }
}
} // namespace

Diag2 diagonalize(const ProblemSpec& p, double t, double eps, int N) {
    if (!(p.mu(t) > 0.0)) throw std::domain_error("diagonalize: mu(t) must be positive");
    cplx f = N == 0 ? cplx(1.0, 0.0) : ell_riccati_coeffs(p, t, std::max(N, 1)).eval(eps);
    if (N == 0) f = 1.0;
    cplx lam(0.0, std::sqrt(p.mu(t)));
    Diag2 d;
    d.m[0][0] = f;
    d.m[0][1] = std::conj(f);
    d.m[1][0] = lam;
    d.m[1][1] = -lam;
    cplx det = -lam * (f + std::conj(f));
    if (std::abs(det) == 0.0) throw std::domain_error("diagonalize: singular change of basis");
    d.inv[0][0] = -lam / det;
    d.inv[0][1] = -std::conj(f) / det;
    d.inv[1][0] = -lam / det;
    d.inv[1][1] = f / det;
    return d;
}

OscState lg_propagate(const ProblemSpec& p, double t0, const OscState& s0, double t, double eps,
                      int N) {
    if (!(eps > 0.0)) throw std::invalid_argument("lg_propagate: eps must be positive");
    if (N < 0) throw std::invalid_argument("lg_propagate: N >= 0 required");
    check_elliptic_interval(p, t0, t);
    if (t == t0) return s0;
    Diag2 d0 = diagonalize(p, t0, eps, N);
    cplx u = d0.inv[0][0] * s0.x + d0.inv[0][1] * s0.y;
    // exponent: phase + quarter-power amplitude + higher-order corrections
    double phase = (t >= t0 ? action(p, t0, t) : -action(p, t, t0)) / eps;
    cplx expo(0.0, phase);
    if (N >= 1) expo += -0.25 * std::log(p.mu(t) / p.mu(t0));
    for (int n = 2; n <= N; ++n) {
        cplx in = adaptive_quad<cplx>(
            [&](double s) { return nu_series(p, s, n).coeffs[static_cast<size_t>(n)]; }, t0, t,
            1e-13);
        expo += std::pow(eps, n - 1) * in;
    }
    u *= std::exp(expo);
    Diag2 d1 = diagonalize(p, t, eps, N);
    // real data: v = conj(u), so (x, y) = (2 Re(f u), 2 Re(lam u))
    OscState s;
    s.x = 2.0 * (d1.m[0][0] * u).real();
    s.y = 2.0 * (d1.m[1][0] * u).real();
    return s;
}

double adiabatic_invariant(const ProblemSpec& p, double t, const OscState& s) {
    double sq = std::sqrt(p.mu(t));
    return sq * s.x * s.x + s.y * s.y / sq;
}

} // namespace tpwkb
