#pragma once
#include <complex>
#include <utility>
#include <vector>

#include "tpwkb/eps_series.hpp"
#include "tpwkb/jet.hpp"
#include "tpwkb/problem.hpp"

namespace tpwkb {

// ---- hyperbolic side (t < 0) -----------------------------------------------
// Coefficients [h_0..h_N] of the slow-manifold slope solving eps h' = -mu - h^2
// order by order: h_0 = sqrt(-mu), h_1 = -h_0'/(2 h_0),
// h_n = -(h_{n-1}' + sum_{i+j=n, i,j>=1} h_i h_j)/(2 h_0).
EpsSeries hyp_riccati_coeffs(const ProblemSpec& p, double t, int N);
// Same, as t-jets (coefficient 0 of jet n is h_n(t)); jet order decays with n.
std::vector<DJet> hyp_riccati_jets(const ProblemSpec& p, double t, int N, int jet_order);

// ---- elliptic side (t > 0) -------------------------------------------------
// Coefficients [R_0..R_N] with R_0 = 1 and, order by order from
// eps f' = lam (1 - f^2) + eps lam^{-1} lam' f,  lam(t) = i sqrt(mu(t)):
// R_n = -1/2 sum_{l=1}^{n-1} R_l R_{n-l} - 1/2 lam^{-1} R_{n-1}'
//       + 1/2 lam^{-2} lam' R_{n-1}.
EpsSeries ell_riccati_coeffs(const ProblemSpec& p, double t, int N);
std::vector<CJet> ell_riccati_jets(const ProblemSpec& p, double t, int N, int jet_order);

// ---- chart-3 formal series -------------------------------------------------
// b_m of the formal solution of (3/2) e^2 B0' = i (B0^2 - 1) - (1/2) e B0.
EpsSeries b0_coeffs(int L);

// Double series f(r^2, eps3) = sum c[l][m] (r^2)^l eps3^m solving the chart-3
// diagonalization equation to orders r^{2L}, eps3^M.  Row l = 0 reproduces
// b0_coeffs; column m is the jet of R_m(r^2) at 0.
struct DoubleSeries {
    std::vector<std::vector<std::complex<double>>> c;  // c[l][m]
    int lmax() const { return static_cast<int>(c.size()) - 1; }
    int mmax() const { return c.empty() ? -1 : static_cast<int>(c[0].size()) - 1; }
    std::complex<double> eval(double r2, double e3) const;
    EpsSeries b_row(int l) const;   // B_l(eps3)
    EpsSeries r_col(int m) const;   // R_m as a series in r^2
};
DoubleSeries chart3_f_series(const ProblemSpec& p, int L, int M);

// R_m(r^2) jets at r^2 = 0 from the paper's m-direction recursion, used as an
// independent cross-check of chart3_f_series columns.
std::vector<CJet> chart3_r_m_jets(const ProblemSpec& p, int M, int jet_order);

// ---- assembled exponent series ----------------------------------------------
// nu_N coefficients: nu_0 = lam, nu_n = lam R_n - [n == 1] lam^{-1} lam'.
EpsSeries nu_series(const ProblemSpec& p, double t, int N);

// Per-order absolute residuals of the even/odd identity
// nu_{2n+1} = -(1/2) d/dt [eps^{2n} coefficient of log|nu_even|]
// through order N (even orders report 0 by construction).
std::vector<double> even_odd_check(const ProblemSpec& p, double t, int N);

// Least-squares fit log(|c_m|/m!) ~ log a + m log b (Gevrey-1 diagnostic).
std::pair<double, double> gevrey_fit(const EpsSeries& s);

} // namespace tpwkb
