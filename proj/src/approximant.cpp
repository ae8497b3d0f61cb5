#include "tpwkb/approximant.hpp"

#include <cmath>
#include <stdexcept>

#include "tpwkb/airy.hpp"
#include "tpwkb/blowup.hpp"
#include "tpwkb/errors.hpp"
#include "tpwkb/hyperbolic.hpp"
#include "tpwkb/reference.hpp"

namespace tpwkb {

UniformApproximant::UniformApproximant(ProblemSpec spec, double eps_, double delta_, double nu_)
    : p(std::move(spec)), eps(eps_), delta(delta_), nu(nu_) {
    if (!(eps > 0.0)) throw std::invalid_argument("UniformApproximant: eps must be positive");
    if (!(delta > 0.0)) throw std::invalid_argument("UniformApproximant: delta must be positive");
    if (!(nu > 0.0) || nu > p.nu0)
        throw std::invalid_argument("UniformApproximant: nu must lie in (0, nu0]");
    // Handover at +/- (eps delta)^{2/3}: inside both chart domains, and early
    // enough that the phase-exact chart formulas carry the bulk of [-nu, nu].
    b = std::pow(eps * delta, 2.0 / 3.0);
}

ApproxValue UniformApproximant::eval(double t) const {
    if (std::abs(t) > nu) throw std::domain_error("UniformApproximant: |t| > nu");
    ApproxValue v;
    if (t < -b) {
        // J1: chart-1 formula in physical variables (y = r1 y1)
        double r1 = std::sqrt(-t);
        ChartSolution cs = chart1_solution(p, r1, eps);
        v.xm = cs.xm;
        v.ym = r1 * cs.ym;
        v.logmag = cs.logmag;
        v.interval = 1;
    } else if (t <= b) {
        double z = std::pow(eps, -2.0 / 3.0) * t;
        AiryQuad q = airy_eval(-z);
        v.xm = q.ai;
        v.ym = -std::cbrt(eps) * q.aip;
        v.logmag = 0.0;
        v.interval = 2;
    } else {
        double r3 = std::sqrt(t);
        ChartSolution cs = chart3_solution(p, r3, eps);
        v.xm = cs.xm;
        v.ym = r3 * cs.ym;
        v.logmag = 0.0;
        v.interval = 3;
    }
    return v;
}

ApproxValue uniform_wu_solution(const ProblemSpec& p, double eps, double delta, double t,
                                double nu) {
    UniformApproximant ua(p, eps, delta, nu < 0.0 ? p.nu0 : nu);
    return ua.eval(t);
}

Direction2 make_direction(double x, double y) {
    double n = std::hypot(x, y);
    if (!(n > 0.0)) throw std::invalid_argument("make_direction: zero vector");
    x /= n;
    y /= n;
    if (x < 0.0 || (x == 0.0 && y < 0.0)) {
        x = -x;
        y = -y;
    }
    return {x, y};
}

double direction_angle_distance(const Direction2& a, const Direction2& b) {
    double dot = std::abs(a.x * b.x + a.y * b.y);
    return std::acos(std::min(dot, 1.0));
}

Direction2 wu_direction(const ProblemSpec& p, double nu, double eps) {
    if (!(nu > 0.0) || nu > p.nu0) throw std::domain_error("wu_direction: nu in (0, nu0] required");
    if (!(p.mu(nu) > 0.0)) throw std::domain_error("wu_direction: mu(nu) must be positive");
    double phi = action(p, 0.0, nu) / eps;
    double th = phi - M_PI / 4.0;
    return make_direction(std::cos(th), -std::sqrt(p.mu(nu)) * std::sin(th));
}

namespace {

double wrap_pi(double a) {  // wrap to (-pi/2, pi/2] (angles mod pi)
    a = std::fmod(a, M_PI);
    if (a > M_PI / 2.0) a -= M_PI;
    if (a <= -M_PI / 2.0) a += M_PI;
    return a;
}

double poly_eval_cbrt(const std::vector<double>& c, double eps) {
    double u = std::cbrt(eps), acc = 0.0;
    for (size_t j = c.size(); j-- > 0;) acc = acc * u + c[j];
    return acc;
}

double model_angle(const DirectionSample& s, const std::vector<double>& rho,
                   const std::vector<double>& phi1, const std::vector<double>& phi2) {
    double e23 = std::pow(s.eps, 2.0 / 3.0);
    double X = std::cos(s.theta + e23 * poly_eval_cbrt(phi1, s.eps));
    double Y = -(1.0 + e23 * poly_eval_cbrt(rho, s.eps)) * s.sqmu *
               std::sin(s.theta + e23 * poly_eval_cbrt(phi2, s.eps));
    return std::atan2(Y, X);
}

// dense symmetric solve (normal equations), tiny systems only
std::vector<double> solve_dense(std::vector<std::vector<double>> A, std::vector<double> b) {
    const size_t n = b.size();
    for (size_t i = 0; i < n; ++i) {
        size_t piv = i;
        for (size_t r = i + 1; r < n; ++r)
            if (std::abs(A[r][i]) > std::abs(A[piv][i])) piv = r;
        std::swap(A[i], A[piv]);
        std::swap(b[i], b[piv]);
        if (std::abs(A[i][i]) < 1e-300) throw std::runtime_error("phase fit: singular system");
        for (size_t r = i + 1; r < n; ++r) {
            double f = A[r][i] / A[i][i];
            for (size_t c = i; c < n; ++c) A[r][c] -= f * A[i][c];
            b[r] -= f * b[i];
        }
    }
    std::vector<double> x(n);
    for (size_t i = n; i-- > 0;) {
        double s = b[i];
        for (size_t c = i + 1; c < n; ++c) s -= A[i][c] * x[c];
        x[i] = s / A[i][i];
    }
    return x;
}

} // namespace

PhaseFit fit_phase_corrections(const std::vector<DirectionSample>& samples, int degree) {
    if (degree < 0 || degree > 4) throw std::invalid_argument("fit_phase_corrections: degree 0..4");
    const size_t np = static_cast<size_t>(degree) + 1;
    if (samples.size() < 3 * np + 1)
        throw std::invalid_argument("fit_phase_corrections: not enough samples for the degree");
    // measured angles (mod pi) and zero-correction residuals
    std::vector<double> meas(samples.size());
    double prev = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        meas[i] = std::atan2(s.d2, s.d1);
        double base = std::atan2(-s.sqmu * std::sin(s.theta), std::cos(s.theta));
        double res = wrap_pi(meas[i] - base);
        if (i > 0 && std::abs(wrap_pi(res - prev)) > M_PI / 2.0)
            throw std::runtime_error(
                "phase_fit: grid too coarse (residual phase jumps exceed pi/2 between samples)");
        prev = res;
    }
    std::vector<double> c(3 * np, 0.0);  // [rho | phi1 | phi2]
    auto unpack = [&](const std::vector<double>& v) {
        PhaseFit f;
        f.rho.assign(v.begin(), v.begin() + np);
        f.phi1.assign(v.begin() + np, v.begin() + 2 * np);
        f.phi2.assign(v.begin() + 2 * np, v.end());
        return f;
    };
    auto residuals = [&](const std::vector<double>& v, std::vector<double>& r) {
        PhaseFit f = unpack(v);
        double ss = 0.0;
        for (size_t i = 0; i < samples.size(); ++i) {
            r[i] = wrap_pi(meas[i] - model_angle(samples[i], f.rho, f.phi1, f.phi2));
            ss += r[i] * r[i];
        }
        return ss;
    };
    std::vector<double> r(samples.size()), rp(samples.size()), rm(samples.size());
    double ss = residuals(c, r);
    double lambda = 1e-6;  // Levenberg damping against near-degenerate directions
    for (int it = 0; it < 100; ++it) {
        // numerical Jacobian
        std::vector<std::vector<double>> J(samples.size(), std::vector<double>(c.size()));
        for (size_t j = 0; j < c.size(); ++j) {
            double h = 1e-6 * (1.0 + std::abs(c[j]));
            auto cp = c, cm = c;
            cp[j] += h;
            cm[j] -= h;
            residuals(cp, rp);
            residuals(cm, rm);
            for (size_t i = 0; i < samples.size(); ++i) J[i][j] = (rp[i] - rm[i]) / (2.0 * h);
        }
        std::vector<std::vector<double>> A(c.size(), std::vector<double>(c.size(), 0.0));
        std::vector<double> g(c.size(), 0.0);
        for (size_t i = 0; i < samples.size(); ++i)
            for (size_t a = 0; a < c.size(); ++a) {
                g[a] += J[i][a] * r[i];
                for (size_t bcol = 0; bcol <= a; ++bcol) A[a][bcol] += J[i][a] * J[i][bcol];
            }
        for (size_t a = 0; a < c.size(); ++a) {
            for (size_t bcol = a + 1; bcol < c.size(); ++bcol) A[a][bcol] = A[bcol][a];
            A[a][a] *= 1.0 + lambda;
        }
        std::vector<double> step = solve_dense(A, g);
        // r = meas - model and J = dr/dc, so the descent step is -(J^T J)^{-1} J^T r
        std::vector<double> cn = c;
        for (size_t j = 0; j < c.size(); ++j) cn[j] -= step[j];
        std::vector<double> rn(samples.size());
        double ssn = residuals(cn, rn);
        if (ssn < ss) {
            c = cn;
            r = rn;
            double improved = ss - ssn;
            ss = ssn;
            lambda = std::max(lambda * 0.3, 1e-12);
            if (improved < 1e-24 * (1.0 + ss)) break;
        } else {
            lambda *= 10.0;
            if (lambda > 1e8) break;
        }
    }
    PhaseFit f = unpack(c);
    f.rms_residual = std::sqrt(ss / static_cast<double>(samples.size()));
    return f;
}

PhaseFit phase_fit(const ProblemSpec& p, double nu, const std::vector<double>& eps_grid,
                   int degree) {
    if (eps_grid.size() < 6) throw std::invalid_argument("phase_fit: >= 6 grid points required");
    std::vector<DirectionSample> samples;
    double sq = std::sqrt(p.mu(nu));
    for (double eps : eps_grid) {
        LogScaledState s0 = LogScaledState::from_xy(-p.nu0, 1.0, std::sqrt(-p.mu(-p.nu0)));
        LogScaledState s1 = integrate(p, eps, s0, nu, 1e-12);
        Direction2 d = make_direction(s1.xhat, s1.yhat);
        DirectionSample ds;
        ds.eps = eps;
        ds.theta = action(p, 0.0, nu) / eps - M_PI / 4.0;
        ds.sqmu = sq;
        ds.d1 = d.x;
        ds.d2 = d.y;
        samples.push_back(ds);
    }
    return fit_phase_corrections(samples, degree);
}

} // namespace tpwkb
