#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "tpwkb/airy.hpp"
#include "tpwkb/approximant.hpp"
#include "tpwkb/problem.hpp"

using namespace tpwkb;

namespace {
ProblemSpec lin() { return ProblemSpec::from_mu({0.0, 1.0}, 0.5); }
ProblemSpec quad() { return ProblemSpec::from_mu({0.0, 1.0, 0.5}, 0.5); }
} // namespace

TEST_CASE("mu = t: the approximant is exactly the Airy pair on all intervals") {
    const double eps = 1e-2, e13 = std::cbrt(eps), e23 = e13 * e13;
    double worst = 0.0;
    for (int i = 0; i <= 600; ++i) {
        double t = -0.3 + 0.001 * i;
        ApproxValue a = uniform_wu_solution(lin(), eps, 0.2, t, 0.3);
        AiryQuad q = airy_eval(-t / e23);
        double x = std::exp(a.logmag) * a.xm, y = std::exp(a.logmag) * a.ym;
        double scale = std::hypot(q.ai, q.aip);
        worst = std::max(worst, std::hypot(x - q.ai, (y + e13 * q.aip) / e13) / scale);
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("interval tags follow the handover boundaries") {
    const double eps = 1e-2, delta = 0.2;
    UniformApproximant ua(quad(), eps, delta, 0.5);
    double b = std::pow(eps * delta, 2.0 / 3.0);
    CHECK(ua.b == doctest::Approx(b).epsilon(1e-15));
    CHECK(ua.eval(-2.0 * b).interval == 1);
    CHECK(ua.eval(0.0).interval == 2);
    CHECK(ua.eval(0.5 * b).interval == 2);
    CHECK(ua.eval(2.0 * b).interval == 3);
}

TEST_CASE("the pieces match across the handover points") {
    const double eps = 1e-2, delta = 0.2;
    UniformApproximant ua(quad(), eps, delta, 0.5);
    double e13 = std::cbrt(eps);
    for (double s : {-1.0, 1.0}) {
        double tb = s * ua.b;
        ApproxValue in = ua.eval(tb * 0.999);   // inside J2 for s > 0, J1/J2 edge for s < 0
        ApproxValue out = ua.eval(tb * 1.001);  // just past the boundary
        double xi = std::exp(in.logmag) * in.xm, yi = std::exp(in.logmag) * in.ym;
        double xo = std::exp(out.logmag) * out.xm, yo = std::exp(out.logmag) * out.ym;
        double n = std::hypot(xi, yi / e13);
        CAPTURE(s);
        CHECK(std::hypot(xi - xo, (yi - yo) / e13) / n <= 2e-2);
    }
}

TEST_CASE("direction representatives are canonical mod sign") {
    Direction2 a = make_direction(0.6, -0.8);
    Direction2 b = make_direction(-0.6, 0.8);
    CHECK(a.x == doctest::Approx(b.x).epsilon(1e-15));
    CHECK(a.y == doctest::Approx(b.y).epsilon(1e-15));
    CHECK(a.x > 0.0);
    CHECK(std::hypot(a.x, a.y) == doctest::Approx(1.0).epsilon(1e-15));
    Direction2 up = make_direction(0.0, -3.0);
    CHECK(up.y > 0.0);
    CHECK(direction_angle_distance(a, b) <= 1e-15);
    CHECK(direction_angle_distance(make_direction(1.0, 0.0), make_direction(0.0, 1.0)) ==
          doctest::Approx(M_PI / 2).epsilon(1e-14));
}

TEST_CASE("Phi = pi/4 makes the connection-formula direction (1, 0)") {
    // mu = t, nu = 1: Phi = (2/3)/eps; choose eps so Phi = pi/4
    ProblemSpec p = ProblemSpec::from_mu({0.0, 1.0}, 1.0);
    double eps = (2.0 / 3.0) / (M_PI / 4.0);
    Direction2 d = wu_direction(p, 1.0, eps);
    CHECK(d.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(d.y) <= 1e-12);
}

TEST_CASE("phase fit recovers synthetic corrections (inverse crime)") {
    std::vector<double> rho = {0.3, -0.1}, phi1 = {0.2, 0.05}, phi2 = {-0.15, 0.1};
    std::vector<DirectionSample> samples;
    for (int k = 0; k < 8; ++k) {
        double e = 0.05 * std::pow(0.7, k), e13 = std::cbrt(e), e23 = e13 * e13;
        double r = rho[0] + rho[1] * e13;
        double f1 = phi1[0] + phi1[1] * e13, f2 = phi2[0] + phi2[1] * e13;
        double theta = 1.3 / e, sqmu = 0.9;
        double d1 = std::cos(theta + e23 * f1);
        double d2 = -sqmu * (1.0 + e23 * r) * std::sin(theta + e23 * f2);
        double n = std::hypot(d1, d2);
        samples.push_back({e, theta, sqmu, d1 / n, d2 / n});
    }
    PhaseFit fit = fit_phase_corrections(samples, 1);
    for (int j = 0; j < 2; ++j) {
        CHECK(std::abs(fit.rho[static_cast<size_t>(j)] - rho[static_cast<size_t>(j)]) <= 1e-6);
        CHECK(std::abs(fit.phi1[static_cast<size_t>(j)] - phi1[static_cast<size_t>(j)]) <= 1e-6);
        CHECK(std::abs(fit.phi2[static_cast<size_t>(j)] - phi2[static_cast<size_t>(j)]) <= 1e-6);
    }
    CHECK(fit.rms_residual <= 1e-8);
}

TEST_CASE("full phase fit pipeline runs on the quadratic problem") {
    std::vector<double> eps_grid;
    for (int k = 0; k < 10; ++k) eps_grid.push_back(0.04 * std::pow(0.8, k));
    PhaseFit fit = phase_fit(quad(), 0.25, eps_grid, 2);
    CHECK(fit.rho.size() == 3);
    CHECK(std::isfinite(fit.rms_residual));
    // the fitted corrections explain the measured directions well
    CHECK(fit.rms_residual <= 1e-3);
}
