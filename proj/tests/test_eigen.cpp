#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "tpwkb/eigen.hpp"
#include "tpwkb/problem.hpp"

using namespace tpwkb;

namespace {
const std::vector<double> harmonic = {0.0, 0.0, 1.0};
const std::vector<double> quartic = {0.0, 0.0, 1.0, 0.0, 0.1};
} // namespace

TEST_CASE("harmonic Bohr-Sommerfeld energies are exact: E_n = eps (2n + 1)") {
    for (double eps : {1e-1, 1e-2}) {
        auto bs = bs_energies(harmonic, eps, 5);
        REQUIRE(bs.size() == 6);
        for (int n = 0; n <= 5; ++n) {
            CAPTURE(eps);
            CAPTURE(n);
            double exact = eps * (2 * n + 1);
            CHECK(std::abs(bs[static_cast<size_t>(n)] - exact) / exact <= 1e-10);
        }
    }
}

TEST_CASE("harmonic shooting reference matches the exact spectrum") {
    const double eps = 1e-1;
    auto ref = reference_energies(harmonic, eps, 4, 1e-11);
    REQUIRE(ref.size() == 5);
    for (int n = 0; n <= 4; ++n) {
        double exact = eps * (2 * n + 1);
        CAPTURE(n);
        CHECK(std::abs(ref[static_cast<size_t>(n)] - exact) / exact <= 1e-8);
    }
}

TEST_CASE("levels escaping the configured range are truncated") {
    // turning points of the harmonic well at E are +/- sqrt(E); with range 1.5
    // only E < 2.25 survives: E_n = 0.5 (2n + 1) keeps n = 0, 1
    auto bs = bs_energies(harmonic, 0.5, 10, 1.5);
    CHECK(bs.size() == 2);
}

TEST_CASE("quartic well: Bohr-Sommerfeld gap shrinks like o(eps)") {
    auto g4 = eigen_compare(quartic, 4e-2, 2);
    auto g1 = eigen_compare(quartic, 1e-2, 2);
    REQUIRE(g4.size() == 3);
    REQUIRE(g1.size() == 3);
    for (size_t n = 0; n < 3; ++n) {
        CAPTURE(n);
        CHECK(g1[n].gap >= 0.0);
        CHECK(g1[n].n == static_cast<int>(n));
        // halving of gap/eps when eps drops from 4e-2 to 1e-2
        CHECK(g1[n].gap / g1[n].eps <= 0.5 * g4[n].gap / g4[n].eps);
    }
}

TEST_CASE("eigen_compare is consistent with its two energy lists") {
    auto pairs = eigen_compare(harmonic, 1e-1, 3);
    auto bs = bs_energies(harmonic, 1e-1, 3);
    auto ref = reference_energies(harmonic, 1e-1, 3, 1e-11);
    REQUIRE(pairs.size() == 4);
    for (size_t n = 0; n < pairs.size(); ++n) {
        CHECK(pairs[n].E_bs == bs[n]);
        CHECK(std::abs(pairs[n].E_ref - ref[n]) <= 1e-10);
        CHECK(pairs[n].gap == doctest::Approx(std::abs(bs[n] - pairs[n].E_ref)).epsilon(1e-12));
    }
}

TEST_CASE("degenerate wells are rejected") {
    CHECK_THROWS(turning_points(harmonic, 0.0));
    CHECK_THROWS(turning_points(harmonic, -1.0));
}
