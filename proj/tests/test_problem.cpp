#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "tpwkb/problem.hpp"

using namespace tpwkb;

TEST_CASE("construction enforces the simple-turning-point invariants") {
    CHECK_NOTHROW(ProblemSpec::from_mu({0.0, 1.0}, 0.5));
    CHECK_NOTHROW(ProblemSpec::from_mu({0.0, 1.0, 0.5}, 0.5));
    CHECK_THROWS_AS(ProblemSpec::from_mu({1.0, 1.0}, 0.5), std::invalid_argument);   // mu(0) != 0
    CHECK_THROWS_AS(ProblemSpec::from_mu({0.0, -1.0}, 0.5), std::invalid_argument);  // mu'(0) < 0
    CHECK_THROWS_AS(ProblemSpec::from_mu({0.0, 0.0, 1.0}, 0.5), std::invalid_argument);
    // mu must not vanish again inside 0 < |t| <= nu0
    CHECK_THROWS_AS(ProblemSpec::from_mu({0.0, 1.0, -4.0}, 0.5), std::invalid_argument);
}

TEST_CASE("exact polynomial jets of mu") {
    ProblemSpec lin = ProblemSpec::from_mu({0.0, 1.0}, 0.5);
    ProblemSpec quad = ProblemSpec::from_mu({0.0, 1.0, 0.5}, 0.5);

    DJet j1 = mu_jet(lin, -1.0, 2);
    CHECK(j1[0] == -1.0);
    CHECK(j1[1] == 1.0);
    CHECK(j1[2] == 0.0);

    DJet j2 = mu_jet(quad, 0.0, 2);
    CHECK(j2[0] == 0.0);
    CHECK(j2[1] == 1.0);
    CHECK(j2[2] == 0.5);

    DJet j3 = mu_jet(quad, 1.0, 1);
    CHECK(j3[0] == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(j3[1] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("mu_hat removes the simple zero continuously") {
    ProblemSpec lin = ProblemSpec::from_mu({0.0, 1.0}, 0.5);
    ProblemSpec quad = ProblemSpec::from_mu({0.0, 1.0, 0.5}, 0.5);
    CHECK(mu_hat(lin, -0.3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mu_hat(lin, 0.41) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mu_hat(quad, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mu_hat(quad, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(mu_hat_prime(quad, 0.2) == doctest::Approx(0.5).epsilon(1e-13));
    DJet h = mu_hat_jet(quad, 1.0, 1);
    CHECK(h[0] == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(h[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("action handles endpoint square-root singularities") {
    ProblemSpec lin = ProblemSpec::from_mu({0.0, 1.0}, 0.5);
    CHECK(action(lin, 0.0, 0.0) == 0.0);
    // int_0^b sqrt(t) dt = (2/3) b^{3/2} on both sides of the turning point
    CHECK(action(lin, 0.0, 0.4) ==
          doctest::Approx(2.0 / 3.0 * std::pow(0.4, 1.5)).epsilon(1e-13));
    CHECK(action(lin, -0.4, 0.0) ==
          doctest::Approx(2.0 / 3.0 * std::pow(0.4, 1.5)).epsilon(1e-13));
    CHECK_THROWS_AS(action(lin, -0.2, 0.2), std::domain_error);  // interior sign change
    // symmetric orientation convention
    CHECK(action(lin, 0.4, 0.0) == action(lin, 0.0, 0.4));
}

TEST_CASE("turning points of a quadratic well") {
    auto [tl, tr] = turning_points({0.0, 0.0, 1.0}, 1.0);
    CHECK(tl == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(tr == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS(turning_points({0.0, 0.0, 1.0}, 0.0));  // degenerate well
    auto [ql, qr] = turning_points({0.0, 0.0, 1.0, 0.0, 0.1}, 2.0);
    CHECK(ql < 0.0);
    CHECK(qr > 0.0);
    CHECK(2.0 - (qr * qr + 0.1 * qr * qr * qr * qr) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("normalization to mu'(0) = 1 and round trip") {
    ProblemSpec lin = ProblemSpec::from_mu({0.0, 1.0}, 0.5);
    auto [n1, r1] = normalize(lin);
    CHECK(r1.t_scale == 1.0);
    CHECK(r1.y_scale == 1.0);
    CHECK(n1.mu_prime(0.0) == doctest::Approx(1.0).epsilon(1e-15));

    ProblemSpec four = ProblemSpec::from_mu({0.0, 4.0}, 0.5);
    auto [n4, r4] = normalize(four);
    CHECK(n4.mu_prime(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    for (double t : {-0.3, 0.1, 0.45})
        CHECK(denormalized_mu(n4, r4, t) == doctest::Approx(4.0 * t).epsilon(1e-14));
}

TEST_CASE("JSON problem specs") {
    ProblemSpec p = ProblemSpec::from_json_text(R"({"mu_poly": [0.0, 1.0, 0.5], "nu0": 0.5})");
    CHECK(p.mu(1.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(p.nu0 == 0.5);

    ProblemSpec w =
        ProblemSpec::from_json_text(R"({"v_poly": [0.0, 0.0, 1.0], "energy": 1.0, "nu0": 0.4})");
    // left turning point of E - V shifted to the origin: mu(t) = 1 - (t - 1)^2
    CHECK(w.mu(0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(w.mu_prime(0.0) > 0.0);

    CHECK_THROWS(ProblemSpec::from_json_text("not json"));
    CHECK_THROWS(ProblemSpec::from_json_text(R"({"mu_poly": [1.0, 1.0]})"));
}
