#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "tpwkb/airy.hpp"

using namespace tpwkb;

namespace {
// Frozen 19-digit oracle values (independent arbitrary-precision evaluation).
struct OracleRow {
    double x, ai, aip, bi, bip;
};
constexpr OracleRow oracle[] = {
    {-12.0, -0.06655517505437312947, 1.02311045336797073, -0.2957199120780730567,
     -0.2367321978311233163},
    {-9.3, 0.2404737968531864373, -0.6514924078955987893, 0.2157083457638982966,
     0.7392802830298743752},
    {-8.0, -0.05270505035638620262, 0.935560938198306551, -0.33125158075113786,
     -0.1594504978129813893},
    {-7.5, 0.3217757163806478753, 0.3188095066985545962, -0.1124634850764908064,
     0.8778022815457609224},
    {-6.5, -0.2380203019971158036, -0.674952492513202173, 0.2610126576364839518,
     -0.597170666291622017},
    {-5.5, 0.0177815412765749756, 0.8641972177713983908, -0.3678134539157119911,
     0.02511158307363092599},
    {-3.2, -0.4174434205641513767, 0.06503114699526291408, -0.0539057556305391497,
     -0.7541245533108413917},
    {-1.0, 0.5355608832923521188, -0.0101605671166452094, 0.1039973894969446119,
     0.5923756264227923508},
    {0.0, 0.3550280538878172393, -0.2588194037928067984, 0.6149266274460007352,
     0.4482883573538263579},
    {1.0, 0.1352924163128814155, -0.1591474412967932128, 1.207423594952871259,
     0.932435933392775633},
    {2.0, 0.03492413042327437914, -0.0530903844336536317, 3.29809499997821471,
     4.100682049932889889},
    {5.0, 0.0001083444281360744173, -0.000247413890868462476, 657.7920441711711824,
     1435.819080217982519},
    {7.5, 1.917256067513430752e-7, -5.312713959720544685e-7, 303229.6151125334023,
     819987.8353587996209},
    {8.0, 4.692207616099231626e-8, -1.341439297906786574e-7, 1199586.004124459931,
     3354342.312744538877},
    {10.0, 1.104753255289868593e-10, -3.520633676738923637e-10, 455641153.548225141,
     1429236134.482865776},
    {20.0, 1.691672868670540314e-27, -7.586391625748354961e-27, 2.103765049651103814e+25,
     9.381839336133964349e+25},
    {50.0, 4.584941724074828478e-104, -3.244331819828799296e-103, 4.909099699444219329e+101,
     3.468798779545976724e+102},
};
} // namespace

TEST_CASE("airy_eval matches the frozen high-precision oracle") {
    for (const auto& r : oracle) {
        AiryQuad q = airy_eval(r.x);
        CAPTURE(r.x);
        CHECK(std::abs(q.ai / r.ai - 1.0) <= 1e-10);
        CHECK(std::abs(q.aip / r.aip - 1.0) <= 1e-10);
        CHECK(std::abs(q.bi / r.bi - 1.0) <= 1e-10);
        CHECK(std::abs(q.bip / r.bip - 1.0) <= 1e-10);
    }
}

TEST_CASE("Wronskian identity Ai Bi' - Ai' Bi = 1/pi") {
    double worst = 0.0;
    for (int i = 0; i <= 1700; ++i) {
        double x = -12.0 + 0.01 * i;
        worst = std::max(worst, std::abs(airy_eval(x).wronskian() - 1.0 / M_PI));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("closed forms at the origin") {
    AiryQuad q = airy_eval(0.0);
    double ai0 = std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0);
    double aip0 = -std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0);
    CHECK(std::abs(q.ai - ai0) <= 1e-14);
    CHECK(std::abs(q.aip - aip0) <= 1e-14);
    CHECK(std::abs(q.bi - std::sqrt(3.0) * ai0) <= 1e-14);
    CHECK(std::abs(q.bip + std::sqrt(3.0) * aip0) <= 1e-14);
}

TEST_CASE("series and asymptotic branches agree on the overlap band") {
    // negative side: compare relative to the oscillation envelope, since Ai,
    // Bi and their derivatives have zeros inside the band
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        double x = -airy_overlap_hi + 0.01 * i;
        AiryQuad s = airy_series(x), a = airy_asymptotic(x);
        double env = std::hypot(s.ai, s.bi), envp = std::hypot(s.aip, s.bip);
        worst = std::max({worst, std::abs(s.ai - a.ai) / env, std::abs(s.bi - a.bi) / env,
                          std::abs(s.aip - a.aip) / envp, std::abs(s.bip - a.bip) / envp});
    }
    CHECK(worst <= 1e-9);
    // positive side: plain relative error (monotone, no zeros)
    worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        double x = airy_overlap_lo + 0.01 * i;
        AiryQuad s = airy_series(x), a = airy_asymptotic(x);
        worst = std::max({worst, std::abs(s.ai / a.ai - 1.0), std::abs(s.bi / a.bi - 1.0),
                          std::abs(s.aip / a.aip - 1.0), std::abs(s.bip / a.bip - 1.0)});
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("scaled evaluation is consistent and safe for large x") {
    for (double x : {1.0, 5.0, 20.0, 50.0}) {
        AiryScaled s = airy_scaled(x);
        AiryQuad q = airy_eval(x);
        CAPTURE(x);
        CHECK(s.zeta == doctest::Approx(2.0 / 3.0 * std::pow(x, 1.5)).epsilon(1e-14));
        CHECK(s.ai_s * std::exp(-s.zeta) == doctest::Approx(q.ai).epsilon(1e-10));
        CHECK(s.bi_s * std::exp(s.zeta) == doctest::Approx(q.bi).epsilon(1e-10));
    }
    // far beyond the unscaled overflow point the scaled values stay finite
    AiryScaled far = airy_scaled(400.0);
    CHECK(std::isfinite(far.ai_s));
    CHECK(std::isfinite(far.bi_s));
    CHECK(far.ai_s > 0.0);
}

TEST_CASE("modulus-phase decomposition of (Ai - i Bi)(-x)") {
    for (double x : {1.0, 3.0, 10.0, 25.0}) {
        auto [m, th] = airy_osc(x);
        AiryQuad q = airy_eval(-x);
        CAPTURE(x);
        CHECK(m * std::cos(th) == doctest::Approx(q.ai).epsilon(1e-10));
        CHECK(-m * std::sin(th) == doctest::Approx(q.bi).epsilon(1e-10));
        // leading modulus pi^{-1/2} x^{-1/4}
        CHECK(m == doctest::Approx(std::pow(M_PI, -0.5) * std::pow(x, -0.25)).epsilon(0.2 / x));
    }
}
