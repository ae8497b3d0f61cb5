#include "tpwkb/hyperbolic.hpp"

#include <cmath>
#include <stdexcept>

#include "tpwkb/errors.hpp"
#include "tpwkb/quadrature.hpp"
#include "tpwkb/reference.hpp"
#include "tpwkb/series.hpp"

namespace tpwkb {

namespace {

void check_window(const ProblemSpec& p, double t, double eps) {
    if (!(t >= -p.nu0))
        throw std::domain_error("hyperbolic: t below -nu0");
    if (!(t <= -hyp_guard_c * std::pow(eps, 2.0 / 3.0)))
        throw turning_region_error(
            "hyperbolic: t is inside the turning region (past the -c eps^{2/3} guard); "
            "use the blowup charts there");
}

// wu_state only needs the open hyperbolic side (its formulas remain defined up
// to t -> 0-, with accuracy degrading there); the slope guard applies to h_u.
void check_side(const ProblemSpec& p, double t) {
    if (!(t >= -p.nu0)) throw std::domain_error("hyperbolic: t below -nu0");
    if (!(t < 0.0) || !(p.mu(t) < 0.0))
        throw turning_region_error("hyperbolic: t must lie on the mu < 0 side");
}

} // namespace

double riccati_branch_slope(const ProblemSpec& p, double t, double eps, int N, int sign) {
    if (!(p.mu(t) < 0.0))
        throw std::domain_error("riccati_branch_slope: mu(t) must be negative");
    const int K = N + 2;
    DJet mu = mu_jet(p, t, K);
    std::vector<DJet> h(static_cast<size_t>(N) + 1);
    h[0] = jet_sqrt(-mu);
    if (sign < 0) h[0] = -h[0];
    DJet two_h0 = 2.0 * h[0];
    for (int n = 1; n <= N; ++n) {
        DJet num = h[static_cast<size_t>(n - 1)].derivative().truncated(K);
        for (int i = 1; i <= n - 1; ++i)
            num = num + h[static_cast<size_t>(i)] * h[static_cast<size_t>(n - i)];
        h[static_cast<size_t>(n)] = -num / two_h0;
    }
    double acc = 0.0;
    for (int n = N; n >= 0; --n) acc = acc * eps + h[static_cast<size_t>(n)].value();
    return acc;
}

SlopeValue h_u(const ProblemSpec& p, double t, double eps, int N, SlopeMethod method) {
    if (!(eps > 0.0)) throw std::invalid_argument("h_u: eps must be positive");
    if (N < 0) throw std::invalid_argument("h_u: N >= 0 required");
    check_window(p, t, eps);
    SlopeValue s;
    s.t = t;
    s.eps = eps;
    s.N = N;
    s.method = method;
    if (method == SlopeMethod::series) {
        s.h = N == 0 ? std::sqrt(-p.mu(t)) : hyp_riccati_coeffs(p, t, N).eval(eps).real();
    } else {
        s.h = riccati_reference(p, eps, t);
    }
    return s;
}

WuState wu_state(const ProblemSpec& p, double t, double t0, double x0, double eps, int N) {
    if (x0 == 0.0) throw std::invalid_argument("wu_state: x0 must be nonzero");
    if (N < 1) throw std::invalid_argument("wu_state: N >= 1 required");
    check_side(p, t0);
    check_side(p, t);
    // exponent = eps^{-1} int h0 + int h1 + sum_{n>=2} eps^{n-1} int h_n;
    // int h0 = action, int h1 = -(1/4) log(mu(t)/mu(t0)) in closed form.
    double lm = action(p, t0, t) / eps;
    if (t < t0) lm = -action(p, t, t0) / eps;
    lm += 0.25 * std::log(p.mu(t0) / p.mu(t));
    for (int n = 2; n <= N; ++n) {
        double hn = adaptive_quad<double>(
            [&](double s) {
                auto h = hyp_riccati_jets(p, s, n, n + 2);
                return h[static_cast<size_t>(n)].value();
            },
            t0, t, 1e-13);
        lm += std::pow(eps, n - 1) * hn;
    }
    WuState w;
    w.t = t;
    w.xm = x0;
    w.ym = hyp_riccati_coeffs(p, t, N).eval(eps).real() * x0;
    w.logmag = lm;
    return w;
}

} // namespace tpwkb
