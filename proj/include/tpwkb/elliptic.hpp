#pragma once
#include <complex>

#include "tpwkb/problem.hpp"

namespace tpwkb {

// Real solution state on the oscillatory side t > 0.
struct OscState {
    double x = 0.0, y = 0.0;
};

// Quasi-diagonalizing change of basis at (t, eps):
//   M = [[f_N, conj f_N], [lam, -lam]],  lam = i sqrt(mu(t)),
// with f_N the order-N truncation of the elliptic Riccati series.  For real
// (x, y) the diagonal variables satisfy v = conj(u).
struct Diag2 {
    std::complex<double> m[2][2];    // (x, y)^T = m (u, v)^T
    std::complex<double> inv[2][2];  // (u, v)^T = inv (x, y)^T
};
Diag2 diagonalize(const ProblemSpec& p, double t, double eps, int N);

// Liouville-Green propagation of the diagonal variable:
//   u(t) = u(t0) exp(sum_{n=0}^{N} eps^{n-1} int_{t0}^t nu_n),
// with nu_0 = i sqrt(mu) (phase, via problem.action) and nu_1 = -(1/4)(log mu)'
// (the amplitude quarter-power) in closed form, higher orders by quadrature.
// The O(eps^{N+1}) off-diagonal coupling is dropped; its effect is the
// measured remainder.  Requires mu > 0 on [t0, t].
OscState lg_propagate(const ProblemSpec& p, double t0, const OscState& s0, double t, double eps,
                      int N = 1);

// Adiabatic invariant sqrt(mu) x^2 + y^2/sqrt(mu) (preserved up to 1 + O(eps)).
double adiabatic_invariant(const ProblemSpec& p, double t, const OscState& s);

} // namespace tpwkb
