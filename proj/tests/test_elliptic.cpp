#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "tpwkb/elliptic.hpp"
#include "tpwkb/problem.hpp"
#include "tpwkb/reference.hpp"

using namespace tpwkb;
using cplx = std::complex<double>;

namespace {
ProblemSpec lin() { return ProblemSpec::from_mu({0.0, 1.0}, 0.5); }
ProblemSpec quad() { return ProblemSpec::from_mu({0.0, 1.0, 0.5}, 0.5); }
} // namespace

TEST_CASE("diagonalizer at eps = 0 is the Liouville-Green basis") {
    Diag2 d = diagonalize(lin(), 1.0, 0.0, 0);
    CHECK(std::abs(d.m[0][0] - cplx(1.0)) <= 1e-14);
    CHECK(std::abs(d.m[0][1] - cplx(1.0)) <= 1e-14);
    CHECK(std::abs(d.m[1][0] - cplx(0.0, 1.0)) <= 1e-14);
    CHECK(std::abs(d.m[1][1] - cplx(0.0, -1.0)) <= 1e-14);
}

TEST_CASE("inverse times matrix is the identity") {
    for (double eps : {0.0, 1e-2, 1e-1}) {
        Diag2 d = diagonalize(quad(), 0.7, eps, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                cplx prod = d.inv[i][0] * d.m[0][j] + d.inv[i][1] * d.m[1][j];
                CAPTURE(eps);
                CHECK(std::abs(prod - (i == j ? cplx(1.0) : cplx(0.0))) <= 1e-13);
            }
    }
}

TEST_CASE("real states have conjugate diagonal variables") {
    Diag2 d = diagonalize(quad(), 0.5, 1e-2, 2);
    double x = 0.8, y = -0.4;
    cplx u = d.inv[0][0] * x + d.inv[0][1] * y;
    cplx v = d.inv[1][0] * x + d.inv[1][1] * y;
    CHECK(std::abs(v - std::conj(u)) <= 1e-13);
}

TEST_CASE("zero elapsed interval propagates to the identity") {
    OscState s0{0.7, -0.3};
    OscState s1 = lg_propagate(quad(), 0.25, s0, 0.25, 1e-2, 2);
    CHECK(std::hypot(s1.x - s0.x, s1.y - s0.y) <= 1e-13);
}

TEST_CASE("Liouville-Green propagation tracks the reference integrator") {
    ProblemSpec p = quad();
    const double t0 = 0.3, t1 = 0.45;
    for (double eps : {1e-2, 1e-3}) {
        OscState s0{1.0, 0.3};
        OscState lg1 = lg_propagate(p, t0, s0, t1, eps, 1);
        OscState lg3 = lg_propagate(p, t0, s0, t1, eps, 3);
        LogScaledState ref = integrate(p, eps, t0, s0.x, s0.y, t1, 1e-12);
        double n = std::hypot(ref.x(), ref.y());
        double e1 = std::hypot(lg1.x - ref.x(), lg1.y - ref.y()) / n;
        double e3 = std::hypot(lg3.x - ref.x(), lg3.y - ref.y()) / n;
        CAPTURE(eps);
        // the dropped coupling shrinks with eps and faster with the order
        CHECK(e1 <= 2.0 * eps);
        CHECK(e3 <= 0.01 * e1);
    }
}

TEST_CASE("adiabatic invariant is preserved up to O(eps)") {
    ProblemSpec p = quad();
    const double eps = 1e-2;
    OscState s{1.0, 0.0};
    double i0 = adiabatic_invariant(p, 0.2, s);
    LogScaledState ref = integrate(p, eps, 0.2, s.x, s.y, 0.45, 1e-12);
    double i1 = adiabatic_invariant(p, 0.45, {ref.x(), ref.y()});
    CHECK(std::abs(i1 / i0 - 1.0) <= 10.0 * eps);
}
