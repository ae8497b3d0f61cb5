#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "tpwkb/errors.hpp"
#include "tpwkb/problem.hpp"
#include "tpwkb/reference.hpp"
#include "tpwkb/series.hpp"

using namespace tpwkb;

namespace {
ProblemSpec quad() { return ProblemSpec::from_mu({0.0, 1.0, 0.5}, 0.5); }
} // namespace

TEST_CASE("dopri5 integrates a rotation around the full circle") {
    auto rhs = [](double, const double* y, double* dy) {
        dy[0] = y[1];
        dy[1] = -y[0];
    };
    std::vector<double> y = {1.0, 0.0};
    const double tol = 1e-12;
    dopri5(rhs, 2, 0.0, y, 2.0 * M_PI, tol);
    CHECK(std::hypot(y[0] - 1.0, y[1]) <= 1000.0 * tol);
    // norm conservation over a long phase
    std::vector<double> z = {1.0, 0.0};
    dopri5(rhs, 2, 0.0, z, 1000.0, 1e-11);
    CHECK(std::hypot(z[0], z[1]) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("linearity of the log-scaled representation") {
    ProblemSpec p = quad();
    LogScaledState s1 = integrate(p, 1e-1, -0.4, 1.0, 0.5, 0.2, 1e-12);
    LogScaledState s2 = integrate(p, 1e-1, -0.4, 2.0, 1.0, 0.2, 1e-12);
    // doubling the state shifts logmag by exactly log 2, direction unchanged
    CHECK(s2.logmag - s1.logmag == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(s2.xhat == s1.xhat);
    CHECK(s2.yhat == s1.yhat);
}

TEST_CASE("Wronskian of two independent solutions is preserved") {
    ProblemSpec p = quad();
    const double eps = 1e-1, t0 = -0.4, t1 = 0.4;
    LogScaledState a = integrate(p, eps, t0, 1.0, 0.0, t1, 1e-12);
    LogScaledState b = integrate(p, eps, t0, 0.0, 1.0, t1, 1e-12);
    double w = std::exp(a.logmag + b.logmag) * (a.xhat * b.yhat - b.xhat * a.yhat);
    CHECK(std::abs(w - 1.0) <= 1e-9);
}

TEST_CASE("time reversal returns to the initial direction") {
    ProblemSpec p = quad();
    const double eps = 1e-2, tol = 1e-11;
    LogScaledState s0 = LogScaledState::from_xy(0.05, 0.3, -0.7);
    LogScaledState fwd = integrate(p, eps, s0, 0.4, tol);
    LogScaledState back = integrate(p, eps, fwd, 0.05, tol);
    CHECK(std::abs(back.angle() - s0.angle()) <= 10.0 * tol);
    CHECK(std::abs(back.logmag - s0.logmag) <= 1e-8);
}

TEST_CASE("Riccati reference agrees with the slow-manifold series") {
    ProblemSpec p = quad();
    const double eps = 1e-2, t = -0.25;
    double ref = riccati_reference(p, eps, t, 1e-12);
    EpsSeries h = hyp_riccati_coeffs(p, t, 3);
    double series = h.eval(eps).real();
    CHECK(std::abs(ref - series) <= 2000.0 * std::pow(eps, 4));
    CHECK_THROWS_AS(riccati_reference(p, eps, 0.1, 1e-12), turning_region_error);
}

TEST_CASE("log-scaled state constructors reject degenerate input") {
    CHECK_THROWS(LogScaledState::from_xy(0.0, 0.0, 0.0));
    LogScaledState s = LogScaledState::from_xy(0.0, 3.0, 4.0);
    CHECK(std::hypot(s.xhat, s.yhat) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.logmag == doctest::Approx(std::log(5.0)).epsilon(1e-15));
    CHECK(s.x() == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(s.y() == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("rate fit on synthetic power laws") {
    std::vector<std::pair<double, double>> a, b;
    for (double e : {1e-1, 5e-2, 2.5e-2, 1.25e-2}) {
        a.push_back({e, std::pow(e, 2.0 / 3.0)});
        b.push_back({e, 3.0 * e});
    }
    CHECK(rate_fit(a).slope == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(rate_fit(a).half_width <= 1e-12);
    CHECK(rate_fit(b).slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS(rate_fit({{1e-1, 1.0}, {1e-2, 0.1}}));  // too few points
}
