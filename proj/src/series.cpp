#include "tpwkb/series.hpp"

#include <cmath>
#include <stdexcept>

#include "tpwkb/errors.hpp"

namespace tpwkb {

using cplx = std::complex<double>;

std::complex<double> optimal_truncation_eval(const EpsSeries& s, double eps, int cap) {
    int top = std::min<int>(cap, s.order());
    std::vector<cplx> terms(static_cast<size_t>(top) + 1);
    double p = 1.0;
    for (int m = 0; m <= top; ++m) {
        terms[static_cast<size_t>(m)] = s.coeffs[static_cast<size_t>(m)] * p;
        p *= eps;
    }
    int k = 1;
    for (int m = 2; m <= top; ++m)
        if (std::abs(terms[static_cast<size_t>(m)]) < std::abs(terms[static_cast<size_t>(k)])) k = m;
    cplx sum = 0.0;
    for (int m = 0; m <= k; ++m) sum += terms[static_cast<size_t>(m)];
    if (k + 1 <= top) {
        cplx t1 = terms[static_cast<size_t>(k + 1)];
        if (k + 2 <= top && std::abs(t1) > 0.0) {
            cplx r = terms[static_cast<size_t>(k + 2)] / t1;
            if (std::abs(1.0 - r) > 0.25) {
                sum += t1 / (1.0 - r);
                return sum;
            }
        }
        sum += 0.5 * t1;
    }
    return sum;
}

// ---------------------------------------------------------------------------

std::vector<DJet> hyp_riccati_jets(const ProblemSpec& p, double t, int N, int jet_order) {
    if (!(p.mu(t) < 0.0))
        throw std::domain_error("hyp_riccati_coeffs: mu(t) must be negative (hyperbolic side)");
    if (N < 1) throw std::invalid_argument("hyp_riccati_coeffs: N >= 1 required");
    const int K = jet_order;
    DJet mu = mu_jet(p, t, K);
    std::vector<DJet> h(static_cast<size_t>(N) + 1);
    h[0] = jet_sqrt(-mu);
    DJet two_h0 = 2.0 * h[0];
    for (int n = 1; n <= N; ++n) {
        DJet num = h[static_cast<size_t>(n - 1)].derivative().truncated(K);
        for (int i = 1; i <= n - 1; ++i)
            num = num + h[static_cast<size_t>(i)] * h[static_cast<size_t>(n - i)];
        h[static_cast<size_t>(n)] = -num / two_h0;
    }
    return h;
}

EpsSeries hyp_riccati_coeffs(const ProblemSpec& p, double t, int N) {
    auto h = hyp_riccati_jets(p, t, N, N + 2);
    EpsSeries s;
    for (auto& j : h) s.coeffs.push_back(cplx(j.value(), 0.0));
    return s;
}

std::vector<CJet> ell_riccati_jets(const ProblemSpec& p, double t, int N, int jet_order) {
    if (!(p.mu(t) > 0.0))
        throw std::domain_error("ell_riccati_coeffs: mu(t) must be positive (elliptic side)");
    if (N < 1) throw std::invalid_argument("ell_riccati_coeffs: N >= 1 required");
    const int K = jet_order;
    DJet mu = mu_jet(p, t, K);
    DJet sq = jet_sqrt(mu);
    std::vector<cplx> lc(sq.coeffs().size());
    for (size_t j = 0; j < lc.size(); ++j) lc[j] = cplx(0.0, sq[static_cast<int>(j)]);
    CJet lam(t, std::move(lc));  // lam = i sqrt(mu)
    CJet one = CJet::constant(t, 1.0, K);
    CJet laminv = one / lam;
    CJet lamp = lam.derivative().truncated(K);
    std::vector<CJet> R(static_cast<size_t>(N) + 1);
    R[0] = one;
    for (int n = 1; n <= N; ++n) {
        CJet acc = -0.5 * (laminv * R[static_cast<size_t>(n - 1)].derivative().truncated(K)) +
                   0.5 * (laminv * laminv * lamp * R[static_cast<size_t>(n - 1)]);
        for (int l = 1; l <= n - 1; ++l)
            acc = acc - 0.5 * (R[static_cast<size_t>(l)] * R[static_cast<size_t>(n - l)]);
        R[static_cast<size_t>(n)] = acc;
    }
    return R;
}

EpsSeries ell_riccati_coeffs(const ProblemSpec& p, double t, int N) {
    auto R = ell_riccati_jets(p, t, N, N + 2);
    EpsSeries s;
    for (auto& j : R) s.coeffs.push_back(j.value());
    return s;
}

EpsSeries b0_coeffs(int L) {
    if (L < 1) throw std::invalid_argument("b0_coeffs: L >= 1 required");
    EpsSeries s;
    s.coeffs.assign(static_cast<size_t>(L) + 1, 0.0);
    s.coeffs[0] = 1.0;
    const cplx I(0.0, 1.0);
    for (int m = 1; m <= L; ++m) {
        cplx conv = 0.0;
        for (int j = 1; j <= m - 1; ++j)
            conv += s.coeffs[static_cast<size_t>(j)] * s.coeffs[static_cast<size_t>(m - j)];
        s.coeffs[static_cast<size_t>(m)] =
            ((1.5 * (m - 1) + 0.5) * s.coeffs[static_cast<size_t>(m - 1)] - I * conv) / (2.0 * I);
    }
    return s;
}

std::complex<double> DoubleSeries::eval(double r2, double e3) const {
    cplx acc = 0.0;
    for (size_t l = c.size(); l-- > 0;) {
        cplx row = 0.0;
        for (size_t m = c[l].size(); m-- > 0;) row = row * e3 + c[l][m];
        acc = acc * r2 + row;
    }
    return acc;
}

EpsSeries DoubleSeries::b_row(int l) const {
    EpsSeries s;
    s.coeffs = c[static_cast<size_t>(l)];
    return s;
}

EpsSeries DoubleSeries::r_col(int m) const {
    EpsSeries s;
    for (auto& row : c) s.coeffs.push_back(row[static_cast<size_t>(m)]);
    return s;
}

// lam3(w) = i sqrt(muhat(w)) and friends as jets in w = r^2 at 0
static void chart3_lambda_jets(const ProblemSpec& p, int K, CJet& lam, CJet& laminv, CJet& lamp) {
    if (std::abs(mu_hat(p, 0.0) - 1.0) > 1e-9)
        throw std::invalid_argument("chart-3 series require the normalized problem (mu'(0) = 1)");
    DJet mh = mu_hat_jet(p, 0.0, K);
    DJet sq = jet_sqrt(mh);
    std::vector<cplx> lc(sq.coeffs().size());
    for (size_t j = 0; j < lc.size(); ++j) lc[j] = cplx(0.0, sq[static_cast<int>(j)]);
    lam = CJet(0.0, std::move(lc));
    laminv = CJet::constant(0.0, 1.0, K) / lam;
    lamp = lam.derivative().truncated(K);
}

DoubleSeries chart3_f_series(const ProblemSpec& p, int L, int M) {
    if (L < 1 || M < 1) throw std::invalid_argument("chart3_f_series: L, M >= 1 required");
    const int K = L;  // jet order in w = r^2
    CJet lam, laminv, lamp;
    chart3_lambda_jets(p, K, lam, laminv, lamp);
    // q(w) = 1 + 2 w lam^{-1} lam'
    CJet q = CJet::constant(0.0, 1.0, K) + 2.0 * (CJet::variable(0.0, K) * (laminv * lamp));

    DoubleSeries f;
    f.c.assign(static_cast<size_t>(L) + 1, std::vector<cplx>(static_cast<size_t>(M) + 1, 0.0));
    f.c[0][0] = 1.0;  // f(w, 0) = 1
    const cplx twoi = 2.0 * lam[0];
    // order by order in eps3; within an order, increasing l
    for (int m = 1; m <= M; ++m) {
        for (int l = 0; l <= L; ++l) {
            // LHS coefficient of w^l eps^m of (3/2) e^2 f_e - w e f_w
            cplx lhs = (1.5 * (m - 1) - static_cast<double>(l)) * f.c[static_cast<size_t>(l)][static_cast<size_t>(m - 1)];
            // known part of [lam (f^2 - 1)]_{l,m}: exclude the 2 i c_{l,m} term
            cplx rhs = 0.0;
            for (int j = 0; j <= l; ++j) {
                // F_{l-j, m} = sum over splits of f^2 at (l-j, m)
                cplx F = 0.0;
                int a = l - j;
                for (int l1 = 0; l1 <= a; ++l1)
                    for (int m1 = 0; m1 <= m; ++m1) {
                        if (j == 0 && ((l1 == 0 && m1 == 0) || (l1 == a && m1 == m)))
                            continue;  // skip the unknown-bearing pair 2 c00 c_{l,m}
                        F += f.c[static_cast<size_t>(l1)][static_cast<size_t>(m1)] *
                             f.c[static_cast<size_t>(a - l1)][static_cast<size_t>(m - m1)];
                    }
                rhs += lam[j] * F;
            }
            // -1/2 [q f]_{l, m-1}
            cplx g = 0.0;
            for (int j = 0; j <= l; ++j)
                g += q[j] * f.c[static_cast<size_t>(l - j)][static_cast<size_t>(m - 1)];
            rhs -= 0.5 * g;
            f.c[static_cast<size_t>(l)][static_cast<size_t>(m)] = (lhs - rhs) / twoi;
        }
    }
    return f;
}

std::vector<CJet> chart3_r_m_jets(const ProblemSpec& p, int M, int jet_order) {
    const int K = jet_order;
    CJet lam, laminv, lamp;
    chart3_lambda_jets(p, K, lam, laminv, lamp);
    CJet w = CJet::variable(0.0, K);
    CJet q = CJet::constant(0.0, 1.0, K) + 2.0 * (w * (laminv * lamp));
    std::vector<CJet> R(static_cast<size_t>(M) + 1);
    R[0] = CJet::constant(0.0, 1.0, K);
    for (int m = 1; m <= M; ++m) {
        CJet acc = 0.75 * (m - 1) * (laminv * R[static_cast<size_t>(m - 1)]) -
                   0.5 * (laminv * (w * R[static_cast<size_t>(m - 1)].derivative().truncated(K))) +
                   0.25 * (laminv * (q * R[static_cast<size_t>(m - 1)]));
        for (int l = 1; l <= m - 1; ++l)
            acc = acc - 0.5 * (R[static_cast<size_t>(l)] * R[static_cast<size_t>(m - l)]);
        R[static_cast<size_t>(m)] = acc;
    }
    return R;
}

EpsSeries nu_series(const ProblemSpec& p, double t, int N) {
    auto R = ell_riccati_jets(p, t, N, N + 2);
    DJet mu = mu_jet(p, t, N + 2);
    DJet sq = jet_sqrt(mu);
    cplx lam(0.0, sq.value());
    cplx lamp(0.0, sq.derivative().value());
    EpsSeries s;
    s.coeffs.resize(static_cast<size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) s.coeffs[static_cast<size_t>(n)] = lam * R[static_cast<size_t>(n)].value();
    if (N >= 1) s.coeffs[1] -= lamp / lam;
    return s;
}

std::vector<double> even_odd_check(const ProblemSpec& p, double t, int N) {
    if (N == 0) return {0.0};  // no odd content at order 0
    const int K = N + 3;
    auto R = ell_riccati_jets(p, t, N, K);
    DJet mu = mu_jet(p, t, K);
    DJet sqmu = jet_sqrt(mu);
    std::vector<cplx> lc(sqmu.coeffs().size());
    for (size_t j = 0; j < lc.size(); ++j) lc[j] = cplx(0.0, sqmu[static_cast<int>(j)]);
    CJet lam(t, std::move(lc));
    CJet laminv = CJet::constant(t, 1.0, K) / lam;
    CJet lamp = lam.derivative().truncated(K);
    // nu_n as jets
    std::vector<CJet> nu(static_cast<size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) nu[static_cast<size_t>(n)] = lam * R[static_cast<size_t>(n)];
    if (N >= 1) nu[1] = nu[1] - laminv * lamp;
    // even part divided by i is a real series with positive leading jet sqrt(mu)
    // log|nu_even| = log sqrt(mu) + log(1 + sum_{n>=1} (nu_{2n}/nu_0) eps^{2n})
    int nEven = N / 2;  // highest n with 2n <= N
    std::vector<CJet> qser(static_cast<size_t>(nEven) + 1, CJet::constant(t, 0.0, K));
    qser[0] = CJet::constant(t, 1.0, K);
    for (int n = 1; n <= nEven; ++n) qser[static_cast<size_t>(n)] = nu[static_cast<size_t>(2 * n)] / nu[0];
    // log(1 + u) with u = qser - 1 (series in eps^2 whose coefficients are jets)
    std::vector<CJet> logser(static_cast<size_t>(nEven) + 1, CJet::constant(t, 0.0, K));
    {
        std::vector<CJet> u = qser;
        u[0] = CJet::constant(t, 0.0, K);
        std::vector<CJet> upow = u;  // u^j
        double sign = 1.0;
        for (int j = 1; j <= nEven; ++j) {
            for (int n = j; n <= nEven; ++n)
                logser[static_cast<size_t>(n)] =
                    logser[static_cast<size_t>(n)] + (sign / j) * upow[static_cast<size_t>(n)];
            // upow *= u
            if (j < nEven) {
                std::vector<CJet> next(static_cast<size_t>(nEven) + 1, CJet::constant(t, 0.0, K));
                for (int a = j; a <= nEven; ++a)
                    for (int b = 1; a + b <= nEven; ++b)
                        next[static_cast<size_t>(a + b)] =
                            next[static_cast<size_t>(a + b)] + upow[static_cast<size_t>(a)] * u[static_cast<size_t>(b)];
                upow = next;
            }
            sign = -sign;
        }
    }
    logser[0] = jet_log(CJet(t, std::vector<cplx>(sqmu.coeffs().begin(), sqmu.coeffs().end())));
    std::vector<double> res(static_cast<size_t>(N) + 1, 0.0);
    for (int n = 0; 2 * n + 1 <= N; ++n) {
        cplx lhs = nu[static_cast<size_t>(2 * n + 1)].value();
        cplx rhs = -0.5 * logser[static_cast<size_t>(n)].derivative().value();
        res[static_cast<size_t>(2 * n + 1)] = std::abs(lhs - rhs);
    }
    return res;
}

std::pair<double, double> gevrey_fit(const EpsSeries& s) {
    std::vector<double> xs, ys;
    for (int m = 0; m <= s.order(); ++m) {
        double a = std::abs(s.coeffs[static_cast<size_t>(m)]);
        if (a == 0.0) continue;  // zero coefficients excluded
        xs.push_back(static_cast<double>(m));
        ys.push_back(std::log(a) - std::lgamma(m + 1.0));
    }
    if (xs.size() < 8) throw std::invalid_argument("gevrey_fit: need >= 8 nonzero coefficients");
    double n = static_cast<double>(xs.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double icept = (sy - slope * sx) / n;
    return {std::exp(icept), std::exp(slope)};
}

} // namespace tpwkb
