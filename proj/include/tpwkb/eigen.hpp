#pragma once
#include <vector>

#include "tpwkb/problem.hpp"

namespace tpwkb {

struct EigenResult {
    int n = 0;
    double E_bs = 0.0;
    double E_ref = 0.0;
    double gap = 0.0;
    double eps = 0.0;
};

// Bohr-Sommerfeld energies of the well V (single minimum, V -> infinity on the
// configured range): solves eps^{-1} A(E) = pi (n + 1/2) for n = 0..n_max,
// A(E) = int sqrt(E - V) between the turning points (strictly increasing).
// Levels whose turning points escape [-range, range] are omitted (truncation).
std::vector<double> bs_energies(const std::vector<double>& v_coeffs, double eps, int n_max,
                                double range = 10.0);

// Shooting reference: integrates decaying solutions inward from both forbidden
// sides (Riccati-branch initial slopes, start 2 max(eps^{2/3}, 0.05) beyond the
// turning points) and drives the Wronskian mismatch at the well center to zero
// in E.  Brackets are seeded from bs_energies +/- eps; the oscillation count
// (number of zeros) of each eigenfunction is verified to equal n.
std::vector<double> reference_energies(const std::vector<double>& v_coeffs, double eps, int n_max,
                                       double tol = 1e-11, double range = 10.0);

// Convenience: pairs bs and reference energies.
std::vector<EigenResult> eigen_compare(const std::vector<double>& v_coeffs, double eps, int n_max,
                                       double tol = 1e-11);

} // namespace tpwkb
