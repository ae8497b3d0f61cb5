#include "tpwkb/blowup.hpp"

#include <cmath>
#include <stdexcept>

#include "tpwkb/airy.hpp"
#include "tpwkb/eps_series.hpp"
#include "tpwkb/quadrature.hpp"
#include "tpwkb/series.hpp"

namespace tpwkb {

namespace {
using cplx = std::complex<double>;

void require(bool cond, const char* msg) {
    if (!cond) throw std::domain_error(msg);
}
} // namespace

PhysPoint to_physical(const ChartPoint& cp) {
    PhysPoint q;
    q.x = cp.x;
    switch (cp.chart) {
        case Chart::Tminus:
            q.y = cp.r * cp.y;
            q.t = -cp.r * cp.r;
            q.eps = cp.r * cp.r * cp.r * cp.s;
            break;
        case Chart::Escale:
            q.y = cp.r * cp.y;
            q.t = cp.r * cp.r * cp.s;
            q.eps = cp.r * cp.r * cp.r;
            break;
        case Chart::Tplus:
            q.y = cp.r * cp.y;
            q.t = cp.r * cp.r;
            q.eps = cp.r * cp.r * cp.r * cp.s;
            break;
    }
    return q;
}

ChartPoint transition(const ChartPoint& cp, Chart target) {
    if (cp.chart == target) return cp;
    require(cp.r >= 0.0, "transition: r must be nonnegative");
    ChartPoint out;
    out.chart = target;
    out.x = cp.x;
    if (cp.chart == Chart::Escale && target == Chart::Tminus) {
        require(cp.s < 0.0, "transition Escale->Tminus: needs t2 < 0");
        double mt = -cp.s;
        out.r = cp.r * std::sqrt(mt);
        out.s = std::pow(mt, -1.5);
        out.y = cp.y / std::sqrt(mt);
    } else if (cp.chart == Chart::Tminus && target == Chart::Escale) {
        require(cp.s > 0.0, "transition Tminus->Escale: needs eps1 > 0");
        double c = std::cbrt(cp.s);
        out.r = cp.r * c;
        out.s = -1.0 / (c * c);
        out.y = cp.y / c;
    } else if (cp.chart == Chart::Escale && target == Chart::Tplus) {
        require(cp.s > 0.0, "transition Escale->Tplus: needs t2 > 0");
        out.r = cp.r * std::sqrt(cp.s);
        out.s = std::pow(cp.s, -1.5);
        out.y = cp.y / std::sqrt(cp.s);
    } else if (cp.chart == Chart::Tplus && target == Chart::Escale) {
        require(cp.s > 0.0, "transition Tplus->Escale: needs eps3 > 0");
        double c = std::cbrt(cp.s);
        out.r = cp.r * c;
        out.s = 1.0 / (c * c);
        out.y = cp.y / c;
    } else {
        throw std::domain_error(
            "transition: Tminus and Tplus do not overlap; route through Escale");
    }
    return out;
}

ChartDeriv desing_field(const ProblemSpec& p, const ChartPoint& cp) {
    ChartDeriv d;
    switch (cp.chart) {
        case Chart::Tminus: {
            double mh = mu_hat(p, -cp.r * cp.r);
            d.dx = cp.y;
            d.dy = mh * cp.x + 0.5 * cp.s * cp.y;
            d.dr = -0.5 * cp.r * cp.s;
            d.ds = 1.5 * cp.s * cp.s;
            break;
        }
        case Chart::Escale: {
            double mh = mu_hat(p, cp.r * cp.r * cp.s);
            d.dx = cp.y;
            d.dy = -cp.s * mh * cp.x;
            d.dr = 0.0;
            d.ds = 1.0;
            break;
        }
        case Chart::Tplus: {
            double mh = mu_hat(p, cp.r * cp.r);
            d.dx = cp.y;
            d.dy = -mh * cp.x - 0.5 * cp.s * cp.y;
            d.dr = 0.5 * cp.r * cp.s;
            d.ds = -1.5 * cp.s * cp.s;
            break;
        }
    }
    return d;
}

Chart1Slope chart1_hu(const ProblemSpec& p, double r1, double eps1) {
    require(r1 >= 0.0 && eps1 >= 0.0, "chart1_hu: needs r1, eps1 >= 0");
    // slack absorbs sqrt/square rounding when r1 = sqrt(|t|) at |t| = nu0
    require(r1 * r1 <= p.nu0 * (1.0 + 1e-12), "chart1_hu: r1^2 beyond nu0");
    Chart1Slope c;
    if (eps1 == 0.0) {
        c.u1 = 1.0;
    } else {
        double z = std::pow(eps1, -2.0 / 3.0);
        AiryScaled a = airy_scaled(z);
        c.u1 = -std::cbrt(eps1) * a.aip_s / a.ai_s;
    }
    double w = -r1 * r1;
    double mh = mu_hat(p, w);
    require(mh > 0.0, "chart1_hu: muhat must stay positive");
    c.u2 = std::sqrt(mh) - 1.0;
    c.u3 = -0.25 * r1 * r1 * mu_hat_prime(p, w) / mh;
    c.slope = c.u1 + c.u2 + eps1 * c.u3;
    return c;
}

ChartSolution chart1_solution(const ProblemSpec& p, double r1, double eps) {
    require(r1 > 0.0 && eps > 0.0, "chart1_solution: needs r1 > 0, eps > 0");
    // slack absorbs sqrt/square rounding when r1 = sqrt(|t|) at |t| = nu0
    require(r1 * r1 <= p.nu0 * (1.0 + 1e-12), "chart1_solution: r1^2 beyond nu0");
    double eps1 = eps / (r1 * r1 * r1);
    double z = std::pow(eps1, -2.0 / 3.0);
    AiryScaled a = airy_scaled(z);
    double mh = mu_hat(p, -r1 * r1);
    require(mh > 0.0, "chart1_solution: muhat must stay positive");
    // G = int_0^{r1^2} (sqrt(-mu(-w)) - sqrt(w)) dw, smooth after w = q^2
    double G = adaptive_quad<double>(
        [&](double q) { return 2.0 * q * q * (std::sqrt(mu_hat(p, -q * q)) - 1.0); }, 0.0, r1,
        1e-14);
    ChartSolution s;
    s.xm = std::pow(mh, -0.25) * a.ai_s;
    s.ym = -std::cbrt(eps1) * std::pow(mh, 0.25) * a.aip_s;
    s.logmag = -a.zeta - G / eps;
    return s;
}

ChartSolution chart2_solution(const ProblemSpec&, double t2, double r2) {
    require(r2 >= 0.0, "chart2_solution: needs r2 >= 0");
    AiryQuad q = airy_eval(-t2);
    return {q.ai, -q.aip, 0.0};
}

std::complex<double> a1(double eps3, int L) {
    require(eps3 > 0.0 && eps3 <= 0.5, "a1: eps3 in (0, 0.5] required");
    if (L < 3) throw std::invalid_argument("a1: L >= 3 required");
    EpsSeries b = b0_coeffs(L);
    // int_0^{eps3} T12 with T12 = (i(B0 - 1) - s/4)/s^2 = i sum_{m>=2} b_m s^{m-2},
    // integrated termwise: i sum_{m>=2} b_m eps3^{m-1}/(m-1), summed to its own
    // optimal truncation with terminant closure (Gevrey-1 coefficients).
    EpsSeries integ;
    integ.coeffs.assign(static_cast<size_t>(L), cplx(0.0));
    for (int m = 2; m <= L; ++m)
        integ.coeffs[static_cast<size_t>(m - 1)] =
            cplx(0.0, 1.0) * b.coeffs[static_cast<size_t>(m)] / static_cast<double>(m - 1);
    cplx I = optimal_truncation_eval(integ, eps3, L);
    cplx phase = std::exp(cplx(0.0, 2.0 / (3.0 * eps3) - M_PI / 4.0));
    return std::pow(eps3, 1.0 / 6.0) * phase * std::exp(-(2.0 / 3.0) * I);
}

std::pair<std::complex<double>, std::complex<double>> xc_yc(double eps3, int L) {
    require(eps3 > 0.0 && eps3 <= 0.5, "xc_yc: eps3 in (0, 0.5] required");
    EpsSeries b = b0_coeffs(L);
    cplx B0 = optimal_truncation_eval(b, eps3, L);
    cplx A = a1(eps3, L);
    return {B0 * A, cplx(0.0, 1.0) * A};
}

ChartSolution chart3_solution(const ProblemSpec& p, double r3, double eps, int /*L*/, int /*M*/) {
    require(r3 > 0.0 && eps > 0.0, "chart3_solution: needs r3 > 0, eps > 0");
    // slack absorbs sqrt/square rounding when r3 = sqrt(|t|) at |t| = nu0
    require(r3 * r3 <= p.nu0 * (1.0 + 1e-12), "chart3_solution: r3^2 beyond nu0");
    double eps3 = eps / (r3 * r3 * r3);
    double z = std::pow(eps3, -2.0 / 3.0);
    AiryQuad q = z <= 200.0 ? airy_eval(-z) : airy_asymptotic(-z);
    double mh = mu_hat(p, r3 * r3);
    require(mh > 0.0, "chart3_solution: muhat must stay positive");
    double H = adaptive_quad<double>(
                   [&](double s) { return 2.0 * s * s * (std::sqrt(mu_hat(p, s * s)) - 1.0); },
                   0.0, r3, 1e-14) /
               eps;
    cplx rot = std::exp(cplx(0.0, H));
    ChartSolution s;
    s.xm = std::pow(mh, -0.25) * (cplx(q.ai, -q.bi) * rot).real();
    s.ym = -std::cbrt(eps3) * std::pow(mh, 0.25) * (cplx(q.aip, -q.bip) * rot).real();
    s.logmag = 0.0;
    return s;
}

} // namespace tpwkb
