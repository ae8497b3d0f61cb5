#include "tpwkb/airy.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tpwkb {
namespace {

// ---- minimal double-double arithmetic --------------------------------------
// The Maclaurin series for Ai/Bi suffers catastrophic cancellation for
// moderate |x| (max term ~ 2e5 at |x| = 8 while the sum is O(1)); compensated
// accumulation keeps the branch accurate to ~1e-15 relative through the
// switch point.
struct dd {
    double hi = 0.0, lo = 0.0;
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd quick_two_sum(double a, double b) {  // requires |a| >= |b|
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd dd_sub(dd a, dd b) { return dd_add(a, {-b.hi, -b.lo}); }

inline dd dd_mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd dd_mul_d(dd a, double b) {
    dd p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline dd dd_div_d(dd a, double b) {
    double q1 = a.hi / b;
    dd p = two_prod(q1, b);
    double r = ((a.hi - p.hi) - p.lo) + a.lo;
    double q2 = r / b;
    return quick_two_sum(q1, q2);
}

// Ai(0) and -Ai'(0) to double-double precision.
constexpr double C1_HI = 0.3550280538878172, C1_LO = 2.05233632436212e-17;
constexpr double C2_HI = 0.2588194037928068, C2_LO = -2.522243111610832e-17;
constexpr double SQRT3_HI = 1.7320508075688772, SQRT3_LO = 1.0035084221806903e-16;

const double INV_SQRT_PI = 1.0 / std::sqrt(M_PI);

// ---- asymptotic coefficients u_k, v_k --------------------------------------
struct UVTables {
    std::vector<double> u, v;
    UVTables() {
        const int K = 64;
        u.resize(K);
        v.resize(K);
        u[0] = 1.0;
        for (int k = 0; k + 1 < K; ++k)
            u[k + 1] = u[k] * (3 * k + 0.5) * (3 * k + 1.5) * (3 * k + 2.5) /
                       (54.0 * (k + 1) * (k + 0.5));
        for (int k = 0; k < K; ++k) v[k] = (6.0 * k + 1.0) / (1.0 - 6.0 * k) * u[k];
    }
};
const UVTables& uv() {
    static const UVTables t;
    return t;
}

// Optimally truncate the series sum_k terms(k): add terms while their
// magnitude decreases, stop at the smallest one and add half of the first
// omitted term (superasymptotic smoothing).
template <class TermFn>
double optimal_sum(TermFn term, int kmax) {
    double sum = 0.0;
    double prev_mag = HUGE_VAL;
    for (int k = 0; k < kmax; ++k) {
        double t = term(k);
        double mag = std::abs(t);
        if (mag >= prev_mag) {  // past the minimum: half-term correction
            sum += 0.5 * t;
            return sum;
        }
        sum += t;
        prev_mag = mag;
        if (mag < 1e-18 * std::abs(sum)) return sum;
    }
    return sum;
}

AiryQuad airy_asymptotic_neg(double z) {  // evaluates at x = -z, z > 0
    const auto& t = uv();
    const double zeta = (2.0 / 3.0) * std::pow(z, 1.5);
    const double w = 1.0 / (zeta * zeta);
    // even/odd sub-series, each with its own optimal truncation
    auto sub = [&](const std::vector<double>& c, int parity) {
        double lead = parity == 0 ? 1.0 : 1.0 / zeta;
        return optimal_sum(
            [&, lead](int k) {
                double p = (k % 2 == 0) ? 1.0 : -1.0;
                return p * c[static_cast<size_t>(2 * k + parity)] * lead * std::pow(w, k);
            },
            30);
    };
    double ue = sub(t.u, 0), uo = sub(t.u, 1), ve = sub(t.v, 0), vo = sub(t.v, 1);
    double c = std::cos(zeta - M_PI / 4.0), s = std::sin(zeta - M_PI / 4.0);
    double A = INV_SQRT_PI / std::pow(z, 0.25);
    double B = std::pow(z, 0.25) * INV_SQRT_PI;
    AiryQuad q;
    q.ai = A * (c * ue + s * uo);
    q.bi = A * (-s * ue + c * uo);
    q.aip = B * (s * ve - c * vo);
    q.bip = B * (c * ve + s * vo);
    return q;
}

// the four positive-side sums (scaled by the exponentials)
struct PosSums {
    double P, Q, R, S, zeta, x14;
};
PosSums pos_sums(double x) {
    const auto& t = uv();
    PosSums r;
    r.zeta = (2.0 / 3.0) * std::pow(x, 1.5);
    r.x14 = std::pow(x, 0.25);
    double iz = 1.0 / r.zeta;
    r.P = optimal_sum([&](int k) { return ((k % 2) ? -1.0 : 1.0) * t.u[k] * std::pow(iz, k); }, 40);
    r.Q = optimal_sum([&](int k) { return t.u[k] * std::pow(iz, k); }, 40);
    r.R = optimal_sum([&](int k) { return ((k % 2) ? -1.0 : 1.0) * t.v[k] * std::pow(iz, k); }, 40);
    r.S = optimal_sum([&](int k) { return t.v[k] * std::pow(iz, k); }, 40);
    return r;
}

} // namespace

AiryQuad airy_series(double x) {
    // Ai = c1 f - c2 g, Bi = sqrt3 (c1 f + c2 g), with
    // f = sum 3^k (1/3)_k x^{3k}/(3k)!,  g = sum 3^k (2/3)_k x^{3k+1}/(3k+1)!
    dd fsum{1.0, 0.0}, gsum{x, 0.0}, fpsum{0.0, 0.0}, gpsum{1.0, 0.0};
    if (x != 0.0) {
        dd x3 = dd_mul_d(two_prod(x, x), x);
        dd ft{1.0, 0.0}, gt{x, 0.0};
        for (int k = 0; k < 400; ++k) {
            ft = dd_div_d(dd_mul(ft, x3), (3.0 * k + 2.0) * (3.0 * k + 3.0));
            gt = dd_div_d(dd_mul(gt, x3), (3.0 * k + 3.0) * (3.0 * k + 4.0));
            // ft is now the (k+1)-th f term (power x^{3k+3}); same for gt
            fsum = dd_add(fsum, ft);
            gsum = dd_add(gsum, gt);
            fpsum = dd_add(fpsum, dd_div_d(dd_mul_d(ft, 3.0 * (k + 1)), x));
            gpsum = dd_add(gpsum, dd_div_d(dd_mul_d(gt, 3.0 * (k + 1) + 1.0), x));
            if (std::abs(ft.hi) < 1e-40 && std::abs(gt.hi) < 1e-40) break;
        }
    }
    const dd c1{C1_HI, C1_LO}, c2{C2_HI, C2_LO}, s3{SQRT3_HI, SQRT3_LO};
    AiryQuad q;
    q.ai = dd_sub(dd_mul(c1, fsum), dd_mul(c2, gsum)).hi;
    q.aip = dd_sub(dd_mul(c1, fpsum), dd_mul(c2, gpsum)).hi;
    q.bi = dd_mul(s3, dd_add(dd_mul(c1, fsum), dd_mul(c2, gsum))).hi;
    q.bip = dd_mul(s3, dd_add(dd_mul(c1, fpsum), dd_mul(c2, gpsum))).hi;
    return q;
}

AiryQuad airy_asymptotic(double x) {
    if (x < 0.0) return airy_asymptotic_neg(-x);
    PosSums s = pos_sums(x);
    double em = std::exp(-s.zeta), ep = std::exp(s.zeta);
    AiryQuad q;
    q.ai = 0.5 * INV_SQRT_PI / s.x14 * em * s.P;
    q.aip = -0.5 * INV_SQRT_PI * s.x14 * em * s.R;
    q.bi = INV_SQRT_PI / s.x14 * ep * s.Q;
    q.bip = INV_SQRT_PI * s.x14 * ep * s.S;
    return q;
}

AiryQuad airy_eval(double x) {
    if (x < -200.0 || x > 104.0)
        throw std::range_error(
            "airy_eval: argument out of range (Bi overflows); use airy_scaled for large x > 0");
    if (std::abs(x) <= airy_x_switch) return airy_series(x);
    return airy_asymptotic(x);
}

AiryScaled airy_scaled(double x) {
    if (x < 0.0) throw std::domain_error("airy_scaled: requires x >= 0");
    AiryScaled r;
    if (x <= airy_x_switch) {
        AiryQuad q = airy_series(x);
        r.zeta = (2.0 / 3.0) * std::pow(x, 1.5);
        double ep = std::exp(r.zeta);
        r.ai_s = q.ai * ep;
        r.aip_s = q.aip * ep;
        r.bi_s = q.bi / ep;
        r.bip_s = q.bip / ep;
        return r;
    }
    PosSums s = pos_sums(x);
    r.zeta = s.zeta;
    r.ai_s = 0.5 * INV_SQRT_PI / s.x14 * s.P;
    r.aip_s = -0.5 * INV_SQRT_PI * s.x14 * s.R;
    r.bi_s = INV_SQRT_PI / s.x14 * s.Q;
    r.bip_s = INV_SQRT_PI * s.x14 * s.S;
    return r;
}

std::pair<double, double> airy_osc(double x) {
    if (x < 1.0) throw std::domain_error("airy_osc: requires x >= 1 (use airy_eval directly)");
    AiryQuad q = airy_eval(-x);
    double M = std::hypot(q.ai, q.bi);
    double theta = std::atan2(-q.bi, q.ai);
    return {M, theta};
}

} // namespace tpwkb
