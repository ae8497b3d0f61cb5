#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "tpwkb/jet.hpp"
#include "tpwkb/problem.hpp"
#include "tpwkb/reference.hpp"
#include "tpwkb/series.hpp"

using namespace tpwkb;
using cplx = std::complex<double>;

namespace {
ProblemSpec lin() { return ProblemSpec::from_mu({0.0, 1.0}, 0.5); }
ProblemSpec quad() { return ProblemSpec::from_mu({0.0, 1.0, 0.5}, 0.5); }
} // namespace

TEST_CASE("jet arithmetic: binomial series and constants") {
    DJet s = jet_sqrt(DJet(0.0, {1.0, 1.0}).truncated(2));  // sqrt(1 + t)
    CHECK(s[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(s[2] == doctest::Approx(-0.125).epsilon(1e-15));
    DJet c = jet_sqrt(DJet::constant(0.0, 4.0, 1));
    CHECK(c[0] == 2.0);
    CHECK(c[1] == 0.0);
}

TEST_CASE("hyperbolic Riccati coefficients: mu = t at t = -4") {
    EpsSeries h = hyp_riccati_coeffs(lin(), -4.0, 2);
    CHECK(h.coeffs[0].real() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(h.coeffs[0].imag() == 0.0);
    CHECK(h.coeffs[1].real() == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
    // jet form agrees with the scalar coefficients at its base point
    auto jets = hyp_riccati_jets(lin(), -4.0, 2, 3);
    for (int n = 0; n <= 2; ++n)
        CHECK(jets[static_cast<size_t>(n)].value() ==
              doctest::Approx(h.coeffs[static_cast<size_t>(n)].real()).epsilon(1e-13));
}

TEST_CASE("truncated hyperbolic series solves the Riccati equation to O(eps^{N+1})") {
    const double t = -1.0;
    for (int N : {1, 2, 3}) {
        std::vector<std::pair<double, double>> pts;
        auto jets = hyp_riccati_jets(quad(), t, N, 2);
        for (int k = 0; k <= 5; ++k) {
            double eps = std::pow(10.0, -1.0 - 0.25 * k);
            double f = 0.0, fp = 0.0;
            for (int n = N; n >= 0; --n) {
                f = f * eps + jets[static_cast<size_t>(n)].value();
                fp = fp * eps + jets[static_cast<size_t>(n)].derivative().value();
            }
            double resid = eps * fp + quad().mu(t) + f * f;
            pts.push_back({eps, std::abs(resid)});
        }
        CAPTURE(N);
        CHECK(rate_fit(pts).slope >= N + 0.8);
    }
}

TEST_CASE("elliptic Riccati coefficients start at R_0 = 1") {
    EpsSeries r = ell_riccati_coeffs(quad(), 1.0, 3);
    CHECK(std::abs(r.coeffs[0] - cplx(1.0)) <= 1e-15);
    // R_n's value consumes one derivative order of R_{n-1}, so the jet order
    // must exceed N for the constant terms to match the scalar recursion
    auto jets = ell_riccati_jets(quad(), 1.0, 3, 5);
    for (int n = 0; n <= 3; ++n)
        CHECK(std::abs(jets[static_cast<size_t>(n)].value() - r.coeffs[static_cast<size_t>(n)]) <=
              1e-13);
}

TEST_CASE("b-series coefficients and the double-series cross-check") {
    EpsSeries b = b0_coeffs(4);
    CHECK(std::abs(b.coeffs[0] - cplx(1.0)) <= 1e-15);
    CHECK(std::abs(b.coeffs[1] - cplx(0.0, -0.25)) <= 1e-15);
    CHECK(std::abs(b.coeffs[2] - cplx(-7.0 / 32.0, 0.0)) <= 1e-15);
    DoubleSeries ds = chart3_f_series(lin(), 3, 4);
    EpsSeries row = ds.b_row(0);
    for (int m = 0; m <= 4; ++m)
        CHECK(std::abs(row.coeffs[static_cast<size_t>(m)] - b.coeffs[static_cast<size_t>(m)]) <=
              1e-13);
    // independent m-direction recursion gives the same columns
    auto rm = chart3_r_m_jets(quad(), 3, 2);
    DoubleSeries ds2 = chart3_f_series(quad(), 3, 3);
    for (int m = 0; m <= 3; ++m) {
        EpsSeries col = ds2.r_col(m);
        for (int l = 0; l <= 2; ++l)
            CHECK(std::abs(col.coeffs[static_cast<size_t>(l)] - rm[static_cast<size_t>(m)][l]) <=
                  1e-12);
    }
}

TEST_CASE("even/odd identity residuals") {
    auto r0 = even_odd_check(quad(), 1.0, 0);
    CHECK(r0[0] == 0.0);  // no odd content at order 0
    auto r3 = even_odd_check(quad(), 1.0, 3);
    for (double v : r3) CHECK(v <= 1e-12);
}

TEST_CASE("nu series leading order is i sqrt(mu)") {
    EpsSeries nu = nu_series(quad(), 1.0, 2);
    CHECK(std::abs(nu.coeffs[0] - cplx(0.0, std::sqrt(1.5))) <= 1e-14);
    // order 1 is the quarter-power amplitude term -(1/4) (log mu)'
    CHECK(std::abs(nu.coeffs[1] - cplx(-0.25 * 2.0 / 1.5, 0.0)) <= 1e-13);
}

TEST_CASE("Gevrey-1 growth fit on synthetic coefficients") {
    EpsSeries fact, two;
    double c = 1.0, d = 1.0;
    for (int m = 0; m <= 12; ++m) {
        fact.coeffs.push_back(c);
        two.coeffs.push_back(d);
        c *= m + 1;
        d *= 2.0 * (m + 1);
    }
    auto [a1, b1] = gevrey_fit(fact);
    CHECK(a1 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(b1 == doctest::Approx(1.0).epsilon(1e-6));
    auto [a2, b2] = gevrey_fit(two);
    CHECK(b2 == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("optimal truncation closes a geometric tail exactly") {
    EpsSeries g;
    for (int m = 0; m <= 10; ++m) g.coeffs.push_back(1.0);
    double eps = 0.05;
    cplx v = optimal_truncation_eval(g, eps, 20);
    CHECK(std::abs(v - 1.0 / (1.0 - eps)) <= 1e-13);
}
